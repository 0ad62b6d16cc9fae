"""Exact univariate/bivariate polynomial arithmetic over the rationals.

Scalars are :class:`fractions.Fraction`.  Univariate polynomials are stored
as ascending coefficient tuples with trailing zeros stripped, so ``()`` is the
zero polynomial.  Bivariate polynomials in ``(t, u)`` are sparse maps from the
exponent pair ``(deg_t, deg_u)`` to a nonzero coefficient.

Real roots are isolated with Sturm sequences computed on primitive integer
polynomials (signed pseudo-remainders), followed by sign-change bisection once
an interval holds a single root.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, comb

import functools

import mpmath

from .errors import DivisionByZero, DegenerateInput, PoleAtInput

Rat = Fraction

# default isolating width, matches double precision downstream
DEFAULT_WIDTH = Fraction(1, 2**53)


def parse_rat(value):
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            return Fraction(int(p), int(q))
        return Fraction(int(text))
    raise TypeError(f"cannot parse rational from {value!r}")


def format_rat(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


WORK_PREC = 320


def high_precision(fn):
    """Run ``fn`` with mpmath at the kernel's working precision."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with mpmath.workprec(WORK_PREC):
            return fn(*args, **kwargs)

    return wrapper


def is_exact(x):
    return isinstance(x, (int, Fraction))


def to_mpf(x):
    """Convert an exact or mpmath scalar to ``mpmath.mpf`` at current precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def to_iv(x, ctx=None):
    ctx = ctx or mpmath.iv
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)
    if isinstance(x, int):
        return ctx.mpf(x)
    return ctx.mpf(x)


def _coerce(c):
    if isinstance(c, (int, str)) and not isinstance(c, bool):
        return parse_rat(c)
    return c


def exact_sqrt(q):
    """Return the exact rational square root of ``q`` or ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    from math import isqrt
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class UniPoly:
    """Univariate polynomial with ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, n, c=1):
        return cls((0,) * n + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[format_rat(c) if is_exact(c) else c for c in self.coeffs]})"

    def __str__(self):
        return poly_to_str(self.coeffs, "t")

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self), len(other))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def is_exact_poly(self):
        return all(is_exact(c) for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        if self.is_exact_poly() and other.is_exact_poly():
            a, da = _scaled_ints(self.coeffs)
            b, db = _scaled_ints(other.coeffs)
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            den = da * db
            return UniPoly(Fraction(v, den) for v in out)
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [0] * (len(rem) - dq)
        inv = 1 / Fraction(other.lc) if is_exact(other.lc) else 1 / other.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            quot[k - dq] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mp(self, x):
        x = to_mpf(x)
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + to_mpf(c)
        return acc

    def derivative(self, k=1):
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return UniPoly(cs)

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / Fraction(self.lc))

    def compose(self, other):
        """Return ``self(other(t))``."""
        other = self._lift(other)
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift_scale(self, a, b):
        """Return ``self(a*t + b)``."""
        return self.compose(UniPoly((b, a)))

    def gcd(self, other):
        a, b = self, self._lift(other)
        if all(is_exact(c) for c in a.coeffs + b.coeffs):
            return _integer_gcd(a, b)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self):
        if self.degree < 1:
            return self.monic()
        return self.exact_div(self.gcd(self.derivative())).monic()

    def squarefree_factors(self):
        """Yun's algorithm: list of (factor, multiplicity) with nonconstant monic factors."""
        if self.degree < 1:
            return []
        f = self.monic()
        fp = f.derivative()
        a = f.gcd(fp)
        b = f.exact_div(a)
        c = fp.exact_div(a)
        d = c - b.derivative()
        out = []
        i = 1
        while b.degree >= 1:
            g = b.gcd(d)
            if g.degree >= 1:
                out.append((g, i))
            b = b.exact_div(g)
            c = d.exact_div(g)
            d = c - b.derivative()
            i += 1
        return out

    def to_integer(self):
        """Primitive integer coefficient list with the same sign as ``self``."""
        return _primitive_ints(self.coeffs)


def poly_to_str(coeffs, var):
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        cs = format_rat(c) if is_exact(c) else mpmath.nstr(c, 12)
        if i == 0:
            terms.append(cs)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"({cs})*{mono}")
    return " + ".join(reversed(terms)) if terms else "0"


def _scaled_ints(coeffs):
    """Integers ``k_i`` and ``d`` with ``coeffs[i] = k_i / d``."""
    den = 1
    for c in coeffs:
        q = c.denominator if isinstance(c, Fraction) else 1
        den = den * q // gcd(den, q)
    return [int(c * den) for c in coeffs], den


def _primitive_ints(coeffs):
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


# --------------------------------------------------------------------------
# real root isolation


def _ideg(p):
    return len(p) - 1


def _iderivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def _iprem_neg(a, b):
    """Sturm step: a positive multiple of ``-rem(a, b)`` as primitive ints."""
    rem = list(a)
    lb = b[-1]
    db = len(b) - 1
    steps = 0
    while len(rem) - 1 >= db and rem:
        k = len(rem) - 1
        c = rem[k]
        rem = [r * lb for r in rem]
        for j, bj in enumerate(b):
            rem[k - db + j] -= c * bj
        steps += 1
        while rem and rem[-1] == 0:
            rem.pop()
    # rem == lb**steps * rem(a, b)
    sign = -1 if (lb < 0 and steps % 2 == 1) else 1
    out = [-sign * r for r in rem]
    g = 0
    for v in out:
        g = gcd(g, v)
    return [v // g for v in out] if g else []


def _integer_gcd(a, b):
    """Monic gcd via a primitive pseudo-remainder sequence over the integers."""
    x, y = _primitive_ints(a.coeffs), _primitive_ints(b.coeffs)
    if len(x) < len(y):
        x, y = y, x
    while y:
        if len(y) == 1:
            return UniPoly((1,))
        x, y = y, _iprem_neg(x, y)
    return UniPoly(x).monic()


def _sturm_sequence(p):
    seq = [p, _primitive_ints(_iderivative(p))]
    while seq[-1] and _ideg(seq[-1]) > 0:
        nxt = _iprem_neg(seq[-2], seq[-1])
        if not nxt:
            break
        seq.append(nxt)
    return [s for s in seq if s]


def _isign_eval(p, x):
    """Sign of integer polynomial ``p`` at Fraction ``x`` (homogeneous Horner)."""
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def _variations(signs):
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _var_at(seq, x):
    return _variations([_isign_eval(p, x) for p in seq])


def _cauchy_bound(p):
    lc = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(c)) / lc for c in p[:-1]) if len(p) > 1 else Fraction(1)


@dataclass(frozen=True)
class IsolatedRoot:
    """Isolating interval ``[lo, hi]`` for a real root of known multiplicity.

    ``lo == hi`` marks an exactly known rational root.  ``factor`` is the
    squarefree integer factor the root is simple in; it drives refinement.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    factor: tuple = field(default=(), repr=False, compare=False)

    @property
    def interval(self):
        return (self.lo, self.hi)

    @property
    def is_exact(self):
        return self.lo == self.hi

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def refine(self, width):
        if self.is_exact or self.hi - self.lo <= width:
            return self
        lo, hi = self.lo, self.hi
        slo = _isign_eval(self.factor, lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = _isign_eval(self.factor, mid)
            if s == 0:
                return IsolatedRoot(mid, mid, self.multiplicity, self.factor)
            if s == slo:
                lo = mid
            else:
                hi = mid
        return IsolatedRoot(lo, hi, self.multiplicity, self.factor)

    def approx(self, prec=256):
        """High-precision approximation (``mpmath.mpf``) of the root."""
        if self.is_exact:
            with mpmath.workprec(prec + 20):
                return +to_mpf(self.lo)
        with mpmath.workprec(prec + 40):
            coeffs = [mpmath.mpf(c) for c in self.factor]

            def ev(x):
                acc = mpmath.mpf(0)
                for c in reversed(coeffs):
                    acc = acc * x + c
                return acc

            lo, hi = to_mpf(self.lo), to_mpf(self.hi)
            slo = mpmath.sign(ev(lo))
            tol = mpmath.ldexp(1, -prec)
            while hi - lo > tol:
                mid = (lo + hi) / 2
                s = mpmath.sign(ev(mid))
                if s == 0:
                    return mid
                if s == slo:
                    lo = mid
                else:
                    hi = mid
            return (lo + hi) / 2

    def simplest_rational(self):
        """Simplest fraction inside the closed interval (Stern-Brocot)."""
        return _simplest_between(self.lo, self.hi)


def _simplest_between(lo, hi):
    if lo == hi:
        return lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -_simplest_between(-hi, -lo)
    # continued fraction expansion of the simplest rational in [lo, hi]
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    rest = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest


def real_roots(p, width=DEFAULT_WIDTH):
    """Isolate every distinct real root of ``p`` to intervals of width <= ``width``."""
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    if p.is_zero():
        raise DegenerateInput("zero polynomial has no isolated roots")
    width = Fraction(width)
    if p.degree < 1:
        return []
    factors = p.squarefree_factors()
    roots = []
    for fac, mult in factors:
        ip = fac.to_integer()
        for lo, hi in _isolate_squarefree(ip, width):
            roots.append(IsolatedRoot(lo, hi, mult, tuple(ip)))
    roots.sort(key=lambda r: (r.lo, r.hi))
    return roots


def _isolate_squarefree(ip, width):
    if len(ip) == 2:
        x = Fraction(-ip[0], ip[1])
        return [(x, x)]
    seq = _sturm_sequence(ip)
    bound = _cauchy_bound(ip)
    # power-of-two bound keeps bisection points dyadic
    b = Fraction(1)
    while b <= bound:
        b *= 2
    out = []
    stack = [(-b, b, _var_at(seq, -b), _var_at(seq, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        if count == 1:
            out.append(_bisect_single(ip, lo, hi, width))
            continue
        mid = (lo + hi) / 2
        if _isign_eval(ip, mid) == 0:
            out.append((mid, mid))
            delta = (hi - lo) / 4
            while True:
                m1, m2 = mid - delta, mid + delta
                if _isign_eval(ip, m1) and _isign_eval(ip, m2):
                    v1, v2 = _var_at(seq, m1), _var_at(seq, m2)
                    if v1 - v2 == 1:
                        break
                delta /= 2
            stack.append((lo, m1, vlo, v1))
            stack.append((m2, hi, v2, vhi))
            continue
        vmid = _var_at(seq, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    return out


def _bisect_single(ip, lo, hi, width):
    slo = _isign_eval(ip, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _isign_eval(ip, mid)
        if s == 0:
            return (mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def rational_roots(p):
    """Exact rational roots of ``p`` (distinct, sorted).

    Distinct fractions with denominators dividing the leading coefficient are
    at least ``1/lc**2`` apart, so after refining below that width the
    simplest fraction in an isolating interval is the only candidate.
    """
    if p.degree < 1:
        return []
    out = set()
    for fac, _ in p.squarefree_factors():
        ip = fac.to_integer()
        width = Fraction(1, 2 * ip[-1] * ip[-1])
        for r in real_roots(fac, width):
            cand = r.simplest_rational()
            if _isign_eval(ip, cand) == 0:
                out.add(cand)
    return sorted(out)


# --------------------------------------------------------------------------
# bivariate polynomials in (t, u)


class BiPoly:
    """Sparse bivariate polynomial keyed by ``(deg_t, deg_u)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, v in dict(terms).items():
                v = _coerce(v)
                if v != 0:
                    clean[(int(k[0]), int(k[1]))] = v
        self.terms = clean

    @classmethod
    def t(cls):
        return cls({(1, 0): 1})

    @classmethod
    def u(cls):
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def from_uni(cls, p, var="t"):
        if var == "t":
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls({(0, i): c for i, c in enumerate(p.coeffs)})

    def is_zero(self):
        return not self.terms

    @property
    def deg_t(self):
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_u(self):
        return max((j for _, j in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        items = sorted(self.terms.items())
        return "BiPoly({" + ", ".join(f"{k}: {format_rat(v) if is_exact(v) else v}" for k, v in items) + "})"

    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other
        return BiPoly.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly({k: v * other for k, v in self.terms.items()})
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = BiPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, t, u):
        return self.eval(t, u)

    def eval(self, t, u):
        # Horner in u over t-polynomials
        total = 0
        for j, coeff in enumerate(self.u_coefficients()):
            total += coeff(t) * u**j if not coeff.is_zero() else 0
        return total

    def u_coefficients(self):
        """Coefficients as UniPoly in ``t`` for ascending powers of ``u``."""
        du = self.deg_u
        cols = [dict() for _ in range(du + 1)]
        for (i, j), v in self.terms.items():
            cols[j][i] = v
        out = []
        for col in cols:
            n = max(col, default=-1) + 1
            out.append(UniPoly(col.get(i, 0) for i in range(n)))
        return out

    def t_coefficients(self):
        return self.swap().u_coefficients()

    def at_t(self, t):
        """Univariate polynomial in ``u`` obtained by fixing ``t``."""
        return UniPoly(c(t) for c in self.u_coefficients())

    def at_u(self, u):
        return self.swap().at_t(u)

    def swap(self):
        return BiPoly({(j, i): v for (i, j), v in self.terms.items()})

    def max_abs_coeff(self):
        return max((abs(v) for v in self.terms.values()), default=0)

    def scaled(self, c):
        return self * c


def bipoly_divmod(R, F):
    """Division of ``R`` by ``F`` in lex order ``u > t``; returns (quotient, remainder)."""
    if F.is_zero():
        raise DivisionByZero("division by the zero bivariate polynomial")
    lead = max(F.terms, key=lambda k: (k[1], k[0]))
    lc = F.terms[lead]
    inv = 1 / Fraction(lc) if is_exact(lc) else 1 / lc
    work = dict(R.terms)
    quot = {}
    rem = {}
    while work:
        k = max(work, key=lambda k: (k[1], k[0]))
        c = work.pop(k)
        if c == 0:
            continue
        if k[0] >= lead[0] and k[1] >= lead[1]:
            m = (k[0] - lead[0], k[1] - lead[1])
            q = c * inv
            quot[m] = quot.get(m, 0) + q
            for fk, fv in F.terms.items():
                if fk == lead:
                    continue
                kk = (fk[0] + m[0], fk[1] + m[1])
                nv = work.get(kk, 0) - q * fv
                if nv == 0:
                    work.pop(kk, None)
                else:
                    work[kk] = nv
        else:
            rem[k] = c
    return BiPoly(quot), BiPoly(rem)


def bipoly_divides(F, R):
    """True iff ``R = F * G`` for some bivariate polynomial ``G``."""
    if F.is_zero():
        raise DegenerateInput("divisor must be nonzero")
    if R.is_zero():
        return True
    return bipoly_divmod(R, F)[1].is_zero()


def bipoly_exact_div(R, F):
    q, r = bipoly_divmod(R, F)
    if not r.is_zero():
        raise ValueError("bivariate division is not exact")
    return q


# --------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Reduced quotient ``num/den`` with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = num if isinstance(num, UniPoly) else UniPoly(num if isinstance(num, (list, tuple)) else (num,))
        if den is None:
            den = UniPoly((1,))
        elif not isinstance(den, UniPoly):
            den = UniPoly(den if isinstance(den, (list, tuple)) else (den,))
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = UniPoly((1,))
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.lc
                num = num * (1 / Fraction(lc))
                den = den * (1 / Fraction(lc))
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, c):
        return cls(UniPoly((c,)))

    @classmethod
    def t(cls):
        return cls(UniPoly((0, 1)))

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num[0]

    def is_polynomial(self):
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc.constant(other)
        if isinstance(other, UniPoly):
            return self == RatFunc(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return RatFunc.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc.constant(1) / (self ** (-n))
        return RatFunc(self.num**n, self.den**n)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise PoleAtInput(f"pole of rational function at {x}")
        return self.num(x) / d

    def eval_mp(self, x):
        d = self.den.eval_mp(x)
        return self.num.eval_mp(x) / d

    def derivative(self, k=1):
        out = self
        for _ in range(k):
            out = RatFunc(out.num.derivative() * out.den - out.num * out.den.derivative(), out.den * out.den)
        return out

    def compose(self, other):
        """Return ``self(other(t))`` for a RatFunc or UniPoly ``other``."""
        other = self._lift(other)
        P, Q = other.num, other.den
        d = max(self.num.degree, self.den.degree, 0)
        Qpows = [UniPoly((1,))]
        for _ in range(d):
            Qpows.append(Qpows[-1] * Q)

        def homog(poly):
            acc = UniPoly()
            Ppow = UniPoly((1,))
            for i in range(d + 1):
                c = poly[i]
                if c != 0:
                    acc = acc + Ppow * Qpows[d - i] * c
                Ppow = Ppow * P
            return acc

        return RatFunc(homog(self.num), homog(self.den))


def normalize_ratfunc(A, B):
    """Reduced, denominator-monic representative of ``A/B``."""
    if not isinstance(A, UniPoly):
        A = UniPoly(A)
    if not isinstance(B, UniPoly):
        B = UniPoly(B)
    return RatFunc(A, B)


def moebius_bilinear_numerators(f):
    """Numerator of ``f(t) - f(u)`` as a BiPoly (used for invariants)."""
    A, B = f.num, f.den
    return BiPoly.from_uni(A, "t") * BiPoly.from_uni(B, "u") - BiPoly.from_uni(A, "u") * BiPoly.from_uni(B, "t")


def binomial(n, k):
    return comb(n, k)
