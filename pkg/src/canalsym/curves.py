"""Rational space curves, their differential invariants and Euclidean isometries."""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import DegenerateInput, ExactnessRequired, FrameDegenerate, LinearSpine
from .moebius import Moebius, certified_residual, moebius_like_factors, RESIDUAL_THRESHOLD
from .ratpoly import BiPoly, RatFunc, UniPoly, bipoly_divides, format_rat, high_precision, is_exact, to_mpf

MAX_DERIVATIVE = 6
ORTHO_TOL = mpmath.mpf("1e-30")


def _as_ratfunc(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, UniPoly):
        return RatFunc(v)
    if isinstance(v, (list, tuple)):
        return RatFunc(UniPoly(v))
    return RatFunc.constant(v)


# vector helpers over triples of RatFunc or scalars

def vdot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def vcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vscale(s, a):
    return tuple(s * x for x in a)


def det3(a, b, c):
    return vdot(a, vcross(b, c))


class SpaceCurve:
    """Parametrized curve ``t -> (x(t), y(t), z(t))`` with RatFunc components.

    Properness (injectivity up to finitely many parameters) is assumed and not
    checked.
    """

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x, self.y, self.z = (_as_ratfunc(v) for v in (x, y, z))
        if all(c.is_constant() for c in self.components):
            raise DegenerateInput("space curve has three constant components")

    @property
    def components(self):
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        return isinstance(other, SpaceCurve) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"SpaceCurve({self.x}, {self.y}, {self.z})"

    def __call__(self, t):
        return tuple(c(t) for c in self.components)

    def eval_mp(self, t):
        return tuple(c.eval_mp(t) for c in self.components)

    def derivative(self, k=1):
        return derivative(self, k)

    def compose(self, phi):
        return compose_curve(self, phi)

    def denominator_lcm(self):
        den = UniPoly((1,))
        for c in self.components:
            den = den * c.den // den.gcd(c.den)
        return den.monic()


def derivative(c, k=1):
    """k-th derivative of each component as a triple of RatFunc."""
    if not 0 <= k <= MAX_DERIVATIVE:
        raise ValueError(f"derivative order must be in 0..{MAX_DERIVATIVE}")
    return tuple(comp.derivative(k) for comp in c.components)


def compose_curve(c, phi):
    """Exact reparametrization ``c o phi`` for a Möbius map or RatFunc ``phi``."""
    f = phi.as_ratfunc() if isinstance(phi, Moebius) else _as_ratfunc(phi)
    return SpaceCurve(*(comp.compose(f) for comp in c.components))


def speed_sq(c):
    d1 = derivative(c, 1)
    return vdot(d1, d1)


def _frame_data(c):
    d1, d2, d3 = (derivative(c, k) for k in (1, 2, 3))
    cr = vcross(d1, d2)
    return d1, d2, d3, cr, vdot(cr, cr)


def kappa_sq(c):
    """Squared curvature ``|c' x c''|^2 / |c'|^6``."""
    d1, _, _, _, cr2 = _frame_data(c)
    if cr2.is_zero():
        raise LinearSpine("spine is a straight line; its curvature vanishes identically")
    return cr2 / vdot(d1, d1) ** 3


def torsion(c):
    """Torsion ``det(c', c'', c''') / |c' x c''|^2``."""
    d1, d2, d3, _, cr2 = _frame_data(c)
    if cr2.is_zero():
        raise LinearSpine("spine is a straight line; torsion is undefined")
    return det3(d1, d2, d3) / cr2


def frenet_frame(c, t):
    """Numeric Frenet frame (tangent, normal, binormal) at ``t`` as numpy arrays."""
    d1, d2 = (np.array([float(comp.eval_mp(t)) for comp in derivative(c, k)]) for k in (1, 2))
    cr = np.cross(d1, d2)
    n1, ncr = np.linalg.norm(d1), np.linalg.norm(cr)
    if n1 == 0 or ncr <= 1e-14 * n1 * max(np.linalg.norm(d2), 1.0):
        raise FrameDegenerate(f"Frenet frame undefined at t = {t}")
    tangent = d1 / n1
    binormal = cr / ncr
    return tangent, np.cross(binormal, tangent), binormal


# --------------------------------------------------------------------------
# isometries


def _mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def _mat_vec(A, v):
    return tuple(sum(A[i][k] * v[k] for k in range(3)) for i in range(3))


def _transpose(A):
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def _det(A):
    return det3(A[0], A[1], A[2])


IDENTITY_MATRIX = tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))


def _entry(x):
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return Fraction(x)
    return x


class Isometry:
    """Affine map ``x -> Q x + b`` with orthogonal ``Q``."""

    __slots__ = ("Q", "b", "det_sign")

    @high_precision
    def __init__(self, Q, b=(0, 0, 0)):
        Q = tuple(tuple(_entry(x) for x in row) for row in Q)
        b = tuple(_entry(x) for x in b)
        exact = all(is_exact(x) for row in Q for x in row) and all(is_exact(x) for x in b)
        if not exact:
            Q = tuple(tuple(to_mpf(x) for x in row) for row in Q)
            b = tuple(to_mpf(x) for x in b)
        gram = _mat_mul(Q, _transpose(Q))
        if exact:
            if gram != IDENTITY_MATRIX:
                raise DegenerateInput("matrix is not orthogonal")
        elif max(abs(gram[i][j] - (i == j)) for i in range(3) for j in range(3)) >= ORTHO_TOL:
            raise DegenerateInput("matrix is not orthogonal within 1e-30")
        self.Q, self.b = Q, b
        d = _det(Q)
        self.det_sign = 1 if d > 0 else -1

    @classmethod
    def identity(cls):
        return cls(IDENTITY_MATRIX)

    @classmethod
    def translation(cls, b):
        return cls(IDENTITY_MATRIX, b)

    @classmethod
    def diagonal(cls, *signs):
        return cls(tuple(tuple(signs[i] if i == j else 0 for j in range(3)) for i in range(3)))

    @classmethod
    def from_quaternion(cls, w, x, y, z, b=(0, 0, 0)):
        """Rotation from an (unnormalized) rational quaternion; exact."""
        w, x, y, z = (Fraction(v) for v in (w, x, y, z))
        n = w * w + x * x + y * y + z * z
        if n == 0:
            raise DegenerateInput("zero quaternion")
        Q = (
            (w * w + x * x - y * y - z * z, 2 * (x * y - w * z), 2 * (x * z + w * y)),
            (2 * (x * y + w * z), w * w - x * x + y * y - z * z, 2 * (y * z - w * x)),
            (2 * (x * z - w * y), 2 * (y * z + w * x), w * w - x * x - y * y + z * z),
        )
        return cls(tuple(tuple(v / n for v in row) for row in Q), b)

    @property
    def is_exact(self):
        return is_exact(self.Q[0][0])

    def __call__(self, p):
        return self.apply(p)

    @high_precision
    def apply(self, p):
        if not self.is_exact:
            p = tuple(to_mpf(x) for x in p)
        return vadd(_mat_vec(self.Q, p), self.b)

    @high_precision
    def linear(self, v):
        if not self.is_exact:
            v = tuple(to_mpf(x) for x in v)
        return _mat_vec(self.Q, v)

    @high_precision
    def compose(self, other):
        """``self o other``."""
        a, b = self, other
        if not (a.is_exact and b.is_exact):
            a, b = a._numeric(), b._numeric()
        return Isometry(_mat_mul(a.Q, b.Q), vadd(_mat_vec(a.Q, b.b), a.b))

    def _numeric(self):
        out = object.__new__(Isometry)
        out.Q = tuple(tuple(to_mpf(x) for x in row) for row in self.Q)
        out.b = tuple(to_mpf(x) for x in self.b)
        out.det_sign = self.det_sign
        return out

    @high_precision
    def inverse(self):
        Qt = _transpose(self.Q)
        return Isometry(Qt, vscale(-1, _mat_vec(Qt, self.b)))

    def conjugate(self, g):
        """``g o self o g^-1``: the same symmetry seen after moving space by ``g``."""
        return g.compose(self).compose(g.inverse())

    def is_identity(self):
        return self == Isometry.identity()

    @high_precision
    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        if self.is_exact and other.is_exact:
            return self.Q == other.Q and self.b == other.b
        diffs = [abs(to_mpf(a) - to_mpf(b)) for ra, rb in zip(self.Q, other.Q) for a, b in zip(ra, rb)]
        diffs += [abs(to_mpf(a) - to_mpf(b)) for a, b in zip(self.b, other.b)]
        return max(diffs) < mpmath.mpf("1e-20")

    def __hash__(self):
        if self.is_exact:
            return hash((self.Q, self.b))
        return hash(tuple(round(float(x), 9) for row in self.Q for x in row))

    def order(self, limit=24):
        """Smallest ``k >= 1`` with ``self^k = id``, or None beyond ``limit``."""
        power = self
        for k in range(1, limit + 1):
            if power.is_identity() if self.is_exact else power == Isometry.identity():
                return k
            power = power.compose(self)
        return None

    def kind(self):
        """Coarse geometric description from determinant and trace."""
        tr = self.Q[0][0] + self.Q[1][1] + self.Q[2][2]
        moves = any(x != 0 for x in self.b)
        if self.det_sign > 0:
            if tr == 3:
                return "translation" if moves else "identity"
            if tr == -1:
                return "half-turn"
            return "rotation"
        if tr == 1:
            return "reflection"
        if tr == -3:
            return "point reflection"
        return "rotoreflection"

    def __repr__(self):
        return f"Isometry(Q={self.matrix_str()}, b={self.vector_str()})"

    def matrix_str(self):
        return "[" + ", ".join("[" + ", ".join(_fmt(x) for x in row) + "]" for row in self.Q) + "]"

    def vector_str(self):
        return "(" + ", ".join(_fmt(x) for x in self.b) + ")"

    def to_json(self):
        return {
            "Q": [[_fmt(x) for x in row] for row in self.Q],
            "b": [_fmt(x) for x in self.b],
            "det": self.det_sign,
            "kind": self.kind(),
        }


def _fmt(x):
    return format_rat(x) if is_exact(x) else mpmath.nstr(x, 40)


def apply_isometry(f, c):
    """Exact curve ``f o c``."""
    if not f.is_exact:
        raise ExactnessRequired("apply_isometry needs an exact isometry")
    comps = c.components
    return SpaceCurve(
        *(sum((f.Q[i][k] * comps[k] for k in range(3)), RatFunc.constant(0)) + f.b[i] for i in range(3))
    )


# --------------------------------------------------------------------------
# invariant-based candidates for pipe surfaces


@dataclass(frozen=True)
class ContinuousFamilyMarker:
    """Both invariants are constant: the spine is a circle or a helix."""

    kappa_sq: RatFunc
    torsion: RatFunc


def _diff_numerator(f, sign=-1):
    """Numerator of ``f(t) + sign * f(u)`` for a RatFunc ``f``."""
    P, Q = f.num, f.den
    lift = BiPoly.from_uni
    return lift(P, "t") * lift(Q, "u") + lift(P, "u") * lift(Q, "t") * sign


def _factor_divides(factor, poly):
    if poly.is_zero():
        return True
    if factor.is_exact:
        return bipoly_divides(factor.bilinear, poly)
    bound = certified_residual(factor.moebius, poly)
    return bound is not None and bound < RESIDUAL_THRESHOLD


def candidate_moebius_from_invariants(c):
    """Möbius maps ``phi`` with ``kappa(phi(t)) = kappa(t)`` and ``tau(phi(t)) = +-tau(t)``."""
    k2 = kappa_sq(c)
    tau = torsion(c)
    if k2.is_constant() and tau.is_constant():
        return ContinuousFamilyMarker(k2, tau)
    t_minus = _diff_numerator(tau, -1)
    t_plus = _diff_numerator(tau, 1)
    if k2.is_constant():
        found = []
        for poly in (t_minus, t_plus):
            if not poly.is_zero():
                found.extend(f.moebius for f in moebius_like_factors(poly))
        return _dedup(found)
    K = _diff_numerator(k2, -1)
    out = []
    for factor in moebius_like_factors(K):
        if tau.is_constant() or _factor_divides(factor, t_minus) or _factor_divides(factor, t_plus):
            out.append(factor.moebius)
    return _dedup(out)


def _dedup(items):
    out = []
    for m in items:
        if not any(m == q for q in out):
            out.append(m)
    return out
