"""Real Möbius transformations and the search for Möbius-like factors.

A Möbius transformation ``t -> (alpha*t + beta)/(gamma*t + delta)`` is stored
projectively, scaled so that the first nonzero coefficient equals one.  Its
bilinear form ``u*(gamma*t + delta) - (alpha*t + beta)`` vanishes exactly on
the graph of the map.

Möbius-like factors of a bivariate polynomial ``R(t, u)`` are found in three
stages: the four closed-form candidates ``u -/+ t`` and ``u*t -/+ 1`` are
tested by exact division; remaining factors are located by sampling ``R`` at
a handful of rational ``t`` values, fitting a Möbius map through every triple
of real ``u``-roots and filtering against extra samples; candidates are then
certified, rational ones by exact division and irrational ones by a residual
bound computed with 256-bit interval arithmetic.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
import itertools

import mpmath

from .errors import DegenerateInput, PoleAtInput
from .ratpoly import (
    BiPoly,
    RatFunc,
    UniPoly,
    bipoly_divides,
    bipoly_exact_div,
    is_exact,
    rational_roots,
    real_roots,
    to_iv,
    to_mpf,
    format_rat,
    high_precision,
    WORK_PREC,
)

CERT_PREC = 256
RESIDUAL_THRESHOLD = mpmath.mpf("1e-30")
DEDUP_TOL = mpmath.mpf("1e-20")
SAMPLE_POINTS = (2, 3, 5, 7, 11)
CERT_SAMPLES = 50


class Moebius:
    """Projective coefficient quadruple of a real Möbius transformation."""

    __slots__ = ("alpha", "beta", "gamma", "delta")

    @high_precision
    def __init__(self, alpha, beta, gamma, delta):
        coeffs = [_scalar(c) for c in (alpha, beta, gamma, delta)]
        if not all(is_exact(c) for c in coeffs):
            coeffs = [to_mpf(c) for c in coeffs]
        if coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2] == 0:
            raise DegenerateInput("degenerate Möbius transformation (alpha*delta - beta*gamma = 0)")
        lead = next(c for c in coeffs if c != 0)
        coeffs = [c / lead for c in coeffs]
        self.alpha, self.beta, self.gamma, self.delta = coeffs

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def coeffs(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def is_exact(self):
        return is_exact(self.alpha)

    @property
    def determinant(self):
        return self.alpha * self.delta - self.beta * self.gamma

    def is_identity(self):
        return self.is_exact and self.coeffs == (1, 0, 0, 1)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        if self.is_exact and other.is_exact:
            return self.coeffs == other.coeffs
        return self.distance(other) < DEDUP_TOL

    def __hash__(self):
        if self.is_exact:
            return hash(self.coeffs)
        return hash(tuple(round(float(c), 9) for c in self.coeffs))

    def distance(self, other):
        """Max coefficient deviation after projective normalization."""
        with mpmath.workprec(WORK_PREC):
            return max(abs(to_mpf(a) - to_mpf(b)) for a, b in zip(self.coeffs, other.coeffs))

    def __call__(self, t):
        return apply(self, t)

    @high_precision
    def eval_mp(self, t):
        a, b, c, d = (to_mpf(x) for x in self.coeffs)
        t = to_mpf(t)
        return (a * t + b) / (c * t + d)

    def __repr__(self):
        return f"Moebius({self})"

    def __str__(self):
        if not self.is_exact:
            a, b, c, d = (mpmath.nstr(x, 15) for x in self.coeffs)
            return f"({a}*t + {b})/({c}*t + {d})"
        a, b, c, d = self.coeffs
        if c == 0:
            return _linear_str(a / d, b / d)
        a, b, d = a / c, b / c, d / c
        num = _linear_str(a, b)
        den = _linear_str(1, d)
        if " " in num:
            num = f"({num})"
        if " " in den:
            den = f"({den})"
        return f"{num}/{den}"

    def as_ratfunc(self):
        """The map as an exact RatFunc in ``t``."""
        if not self.is_exact:
            raise TypeError("numeric Möbius transformation has no exact RatFunc form")
        return RatFunc(UniPoly((self.beta, self.alpha)), UniPoly((self.delta, self.gamma)))

    def derivative_at(self, t):
        """First and second derivative of the map at ``t``."""
        den = self.gamma * t + self.delta
        if den == 0:
            raise PoleAtInput(f"pole of Möbius transformation at {t}")
        det = self.determinant
        return det / den**2, -2 * self.gamma * det / den**3

    def to_json(self):
        if self.is_exact:
            return [format_rat(c) for c in self.coeffs]
        return [mpmath.nstr(c, 40) for c in self.coeffs]


def _linear_str(a, b):
    if a == 0:
        return format_rat(b)
    lead = "t" if a == 1 else "-t" if a == -1 else f"{format_rat(a)}*t"
    if b == 0:
        return lead
    sign = "-" if b < 0 else "+"
    return f"{lead} {sign} {format_rat(abs(b))}"


def _scalar(c):
    if isinstance(c, (int, str)) and not isinstance(c, bool):
        return Fraction(c)
    return c


def apply(phi, t):
    """Evaluate ``phi`` at ``t``; raises PoleAtInput at the pole."""
    den = phi.gamma * t + phi.delta
    if den == 0:
        raise PoleAtInput(f"pole of {phi} at t = {t}")
    return (phi.alpha * t + phi.beta) / den


@high_precision
def compose(phi, psi):
    """Return ``phi o psi`` (apply ``psi`` first)."""
    a1, b1, c1, d1 = phi.coeffs
    a2, b2, c2, d2 = psi.coeffs
    if not (phi.is_exact and psi.is_exact):
        a1, b1, c1, d1, a2, b2, c2, d2 = (to_mpf(x) for x in (a1, b1, c1, d1, a2, b2, c2, d2))
    return Moebius(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


def inverse(phi):
    a, b, c, d = phi.coeffs
    return Moebius(d, -b, -c, a)


def to_bilinear(phi):
    """Möbius-like polynomial ``u*(gamma*t + delta) - (alpha*t + beta)``, scaled
    so that the leading coefficient of ``gamma*t + delta`` is positive."""
    a, b, c, d = phi.coeffs
    if (c if c != 0 else d) < 0:
        a, b, c, d = -a, -b, -c, -d
    return BiPoly({(1, 1): c, (0, 1): d, (1, 0): -a, (0, 0): -b})


def moebius_from_bilinear(F):
    """Inverse of :func:`to_bilinear` for a bilinear polynomial."""
    g = F.terms
    if any(i > 1 or j > 1 for i, j in g):
        raise DegenerateInput("polynomial is not bilinear")
    return Moebius(-g.get((1, 0), 0), -g.get((0, 0), 0), g.get((1, 1), 0), g.get((0, 1), 0))


@dataclass(frozen=True)
class MoebiusLikeFactor:
    moebius: Moebius
    bilinear: BiPoly
    certainty: str = "exact"  # "exact" or "numeric"
    residual: object = None

    @property
    def is_exact(self):
        return self.certainty == "exact"


CLOSED_FORM = (
    Moebius(1, 0, 0, 1),
    Moebius(-1, 0, 0, 1),
    Moebius(0, 1, 1, 0),
    Moebius(0, -1, 1, 0),
)


@contextmanager
def _iv_prec(bits):
    old = mpmath.iv.prec
    mpmath.iv.prec = bits
    try:
        yield mpmath.iv
    finally:
        mpmath.iv.prec = old


def moebius_like_factors(R):
    """Every Möbius-like factor of ``R`` as a sorted list of MoebiusLikeFactor."""
    if R.is_zero():
        raise DegenerateInput("R vanishes identically (pipe surface); use invariant-based candidates")
    found = []
    work = R
    for phi in CLOSED_FORM:
        F = to_bilinear(phi)
        if bipoly_divides(F, work):
            found.append(MoebiusLikeFactor(phi, F))
            while bipoly_divides(F, work):
                work = bipoly_exact_div(work, F)
    if work.deg_t >= 1 and work.deg_u >= 1:
        for phi in _sampled_candidates(work):
            if any(phi == f.moebius for f in found):
                continue
            factor = _certify(phi, work)
            if factor is not None:
                found.append(factor)
    return sort_factors(found)


def sort_factors(factors):
    def key(f):
        phi = f.moebius
        return (not f.is_exact, not phi.is_identity(), [float(c) for c in phi.coeffs])

    return sorted(factors, key=key)


def _sample_params(lc, count=len(SAMPLE_POINTS), avoid=()):
    used = set(avoid)
    out = []
    for t in SAMPLE_POINTS + tuple(range(13, 13 + 4 * count)):
        if len(out) == count:
            break
        t = Fraction(t)
        while lc(t) == 0 or t in used:
            t += 1
        used.add(t)
        out.append(t)
    return out


def _roots_at(poly):
    """Real roots of ``poly``: exact Fractions where rational, else mpf."""
    exact = rational_roots(poly)
    out = list(exact)
    for r in real_roots(poly):
        if r.is_exact and r.lo in exact:
            continue
        if any(r.lo <= q <= r.hi for q in exact):
            continue
        out.append(r.approx(WORK_PREC))
    return out


def _null_vector(rows):
    """Kernel vector of a 3x4 matrix by signed 3x3 minors."""
    vec = []
    for k in range(4):
        cols = [c for c in range(4) if c != k]
        m = [[row[c] for c in cols] for row in rows]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        vec.append(det if k % 2 == 0 else -det)
    return vec


def fit_moebius(ts, us):
    """Möbius map through three correspondences ``t_i -> u_i`` or None."""
    if not all(is_exact(x) for x in (*ts, *us)):
        ts = [to_mpf(x) for x in ts]
        us = [to_mpf(x) for x in us]
    rows = [[t * u, u, -t, -1] for t, u in zip(ts, us)]
    vec = _null_vector(rows)
    if not all(is_exact(x) for x in vec):
        scale = max(abs(x) for x in vec)
        vec = [x if abs(x) > scale * mpmath.mpf(2) ** (-WORK_PREC // 2) else mpmath.mpf(0) for x in vec]
    gamma, delta, alpha, beta = vec
    det = alpha * delta - beta * gamma
    if is_exact(det):
        if det == 0:
            return None
    else:
        scale = max(abs(alpha), abs(beta), abs(gamma), abs(delta))
        if scale == 0 or abs(det) <= scale**2 * mpmath.mpf(2) ** (-WORK_PREC // 2):
            return None
    return Moebius(alpha, beta, gamma, delta)


def _poly_rel_residual(poly, x):
    val = abs(poly.eval_mp(to_mpf(x)))
    scale = sum(abs(to_mpf(c)) * abs(to_mpf(x)) ** i for i, c in enumerate(poly.coeffs))
    return val / scale if scale else val


def _sampled_candidates(work):
    lc = work.u_coefficients()[-1]
    ts = _sample_params(lc)
    polys = [work.at_t(t) for t in ts]
    out = []
    with mpmath.workprec(WORK_PREC):
        roots = [_roots_at(p) for p in polys]
        if any(not r for r in roots[:3]):
            return out
        check_tol = mpmath.mpf(2) ** (-WORK_PREC // 2)
        for triple in itertools.product(*roots[:3]):
            phi = fit_moebius(ts[:3], triple)
            if phi is None:
                continue
            ok = True
            for t, p in zip(ts[3:], polys[3:]):
                try:
                    v = apply(phi, t)
                except PoleAtInput:
                    ok = False
                    break
                if phi.is_exact:
                    if p(v) != 0:
                        ok = False
                        break
                elif _poly_rel_residual(p, v) > check_tol:
                    ok = False
                    break
            if ok and not any(phi == q for q in out):
                out.append(phi)
    return out


def _rationalize(phi, max_den=10**12):
    with mpmath.workprec(WORK_PREC):
        coeffs = []
        for c in phi.coeffs:
            q = Fraction(mpmath.nstr(c, 60, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)).limit_denominator(max_den)
            coeffs.append(q)
    try:
        return Moebius(*coeffs)
    except DegenerateInput:
        return None


def _certify(phi, R):
    if phi.is_exact:
        F = to_bilinear(phi)
        return MoebiusLikeFactor(phi, F) if bipoly_divides(F, R) else None
    guess = _rationalize(phi)
    if guess is not None and bipoly_divides(to_bilinear(guess), R):
        return MoebiusLikeFactor(guess, to_bilinear(guess))
    bound = certified_residual(phi, R)
    if bound is not None and bound < RESIDUAL_THRESHOLD:
        return MoebiusLikeFactor(phi, to_bilinear(phi), "numeric", bound)
    return None


def certified_residual(phi, R, samples=CERT_SAMPLES):
    """Upper bound on ``|R(t, phi(t))|`` relative to the term magnitudes.

    Evaluated with 256-bit interval arithmetic at ``samples`` fresh rational
    points away from the pole of ``phi``.
    """
    worst = mpmath.mpf(0)
    with _iv_prec(CERT_PREC) as iv:
        a, b, c, d = (to_iv(x, iv) for x in phi.coeffs)
        taken = 0
        k = 0
        while taken < samples and k < 10 * samples:
            t = Fraction(2 * k - samples, 7) + Fraction(1, 13)
            k += 1
            tv = to_iv(t, iv)
            den = c * tv + d
            if mpmath.mpf(abs(den).a) < mpmath.mpf("1e-3"):
                continue
            u = (a * tv + b) / den
            if mpmath.mpf(abs(u).b) > 1000:
                continue
            val = iv.mpf(0)
            scale = iv.mpf(0)
            for (i, j), coeff in R.terms.items():
                term = to_iv(coeff, iv) * tv**i * u**j
                val += term
                scale += abs(term)
            rel = mpmath.mpf(abs(val).b) / mpmath.mpf(scale.a)
            worst = max(worst, rel)
            taken += 1
    if taken == 0:
        return None
    return worst
