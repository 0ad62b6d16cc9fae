"""Bézier spines and radius functions for canal-surface blends.

A blend joins ``(c1, r1)`` at ``t1`` to ``(c2, r2)`` at ``t2`` by a polynomial
patch on ``[0, 1]`` whose spine and radius match the given derivatives up to
order ``N``.  The spine has degree ``2N + 1`` and its control points follow
from ``n!/(n-k)! Δ^k b_0 = c1^(k)(t1)`` and the mirrored conditions at the
other end.

If an isometry ``f`` carries the first junction onto the second, the control
polygon satisfies ``f(b_i) = b_{n-i}`` and the patch is invariant under ``f``
with parameter map ``t -> 1 - t``, provided the radius obeys
``a_i = (-1)^n a_{n-i}``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

from .canal import CanalSurface
from .curves import Isometry, SpaceCurve, derivative, vadd, vscale, vsub
from .errors import DegenerateBlend, InconsistentConstraint, SymmetryIncompatible
from .linalg import solve
from .moebius import Moebius
from .ratpoly import RatFunc, UniPoly, binomial

MAX_CONTINUITY = 3


# --------------------------------------------------------------------------
# Bernstein basis


def bernstein_poly(n, i):
    """``B_{i,n}(t) = C(n, i) t^i (1 - t)^(n - i)`` as a polynomial."""
    if not 0 <= i <= n:
        raise IndexError(f"Bernstein index {i} outside 0..{n}")
    one_minus = UniPoly((1, -1)) ** (n - i)
    return one_minus * UniPoly.monomial(i, binomial(n, i))


def bernstein_eval(n, i, t):
    if not 0 <= i <= n:
        raise IndexError(f"Bernstein index {i} outside 0..{n}")
    return binomial(n, i) * t**i * (1 - t) ** (n - i)


def _combine(terms):
    """Sum of ``coeff * value`` where values are scalars or 3-vectors."""
    total = None
    for coeff, value in terms:
        piece = vscale(coeff, value) if isinstance(value, tuple) else coeff * value
        if total is None:
            total = piece
        else:
            total = vadd(total, piece) if isinstance(piece, tuple) else total + piece
    return total


def forward_difference(seq, k):
    """``Δ^k`` applied to a sequence of scalars or 3-vectors."""
    seq = list(seq)
    if not 0 <= k <= len(seq) - 1:
        raise IndexError(f"difference order {k} needs at least {k + 1} entries")
    for _ in range(k):
        seq = [vsub(b, a) if isinstance(a, tuple) else b - a for a, b in zip(seq, seq[1:])]
    return seq


def _falling(n, k):
    return math.perm(n, k)


# --------------------------------------------------------------------------
# Bézier objects


@dataclass(frozen=True)
class BezierCurve3:
    control_points: tuple

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.control_points)
        if len(pts) < 2:
            raise ValueError("a Bézier curve needs at least two control points")
        object.__setattr__(self, "control_points", pts)

    @property
    def degree(self):
        return len(self.control_points) - 1

    def to_curve(self):
        n = self.degree
        basis = [bernstein_poly(n, i) for i in range(n + 1)]
        comps = []
        for axis in range(3):
            comps.append(RatFunc(sum((basis[i] * p[axis] for i, p in enumerate(self.control_points)), UniPoly())))
        return SpaceCurve(*comps)

    def __call__(self, t):
        n = self.degree
        return _combine((bernstein_eval(n, i, t), p) for i, p in enumerate(self.control_points))

    def reversed(self):
        return BezierCurve3(tuple(reversed(self.control_points)))

    def is_symmetric_under(self, f):
        """``f(b_i) = b_{n-i}`` for every control point."""
        pts = self.control_points
        return all(tuple(f.apply(p)) == q for p, q in zip(pts, reversed(pts)))


@dataclass(frozen=True)
class BezierScalar:
    """Bernstein coefficients ``a_0..a_n``; ``sign`` records the ± chosen for a
    symmetric radius (``a_i = sign * a_{n-i}``), or None."""

    coefficients: tuple
    sign: int = None

    def __post_init__(self):
        coeffs = tuple(Fraction(a) for a in self.coefficients)
        if not coeffs:
            raise ValueError("a Bernstein expansion needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def to_ratfunc(self):
        n = self.degree
        return RatFunc(sum((bernstein_poly(n, i) * a for i, a in enumerate(self.coefficients)), UniPoly()))

    def __call__(self, t):
        n = self.degree
        return sum(bernstein_eval(n, i, t) * a for i, a in enumerate(self.coefficients))


# --------------------------------------------------------------------------
# symmetric radius functions


def symmetric_radius_coeffs(n, free):
    """Complete coefficients so that ``a_i = (-1)^n a_{n-i}``.

    ``free`` gives ``a_0 .. a_{ceil((n+1)/2) - 1}``, or the full sequence, which
    is then checked.
    """
    free = [Fraction(a) for a in free]
    sign = 1 if n % 2 == 0 else -1
    half = (n + 2) // 2
    if len(free) == n + 1:
        bad = [i for i in range(n + 1) if free[i] != sign * free[n - i]]
        if bad:
            raise InconsistentConstraint(f"a_{bad[0]} != {sign} * a_{n - bad[0]}")
        return BezierScalar(free, sign)
    if len(free) != half:
        raise InconsistentConstraint(f"degree {n} needs {half} free coefficients, got {len(free)}")
    coeffs = free + [sign * free[n - i] for i in range(half, n + 1)]
    return BezierScalar(coeffs, sign)


# --------------------------------------------------------------------------
# Hermite data


def _check_continuity(N):
    if not 0 <= N <= MAX_CONTINUITY:
        raise ValueError(f"continuity order must be between 0 and {MAX_CONTINUITY}")


def _jet(func, t, N, vector):
    """Values of the first N derivatives of a curve or radius at ``t``."""
    out = []
    for k in range(N + 1):
        if vector:
            out.append(tuple(comp(t) for comp in derivative(func, k)))
        else:
            out.append(func.derivative(k)(t) if k else func(t))
    return out


def _hermite_points(head, tail, n):
    """Control values solving the end conditions of a degree-n Bézier, n = 2N+1."""
    N = len(head) - 1
    b = [None] * (n + 1)
    for k in range(N + 1):
        target = _combine([(Fraction(1, _falling(n, k)), head[k])])
        # Δ^k b_0 = sum_j (-1)^(k-j) C(k,j) b_j
        rest = [((-1) ** (k - j) * binomial(k, j), b[j]) for j in range(k)]
        b[k] = target if not rest else _sub(target, _combine(rest))
    for k in range(N + 1):
        target = _combine([(Fraction(1, _falling(n, k)), tail[k])])
        rest = [((-1) ** (k - j) * binomial(k, j), b[n - k + j]) for j in range(1, k + 1)]
        val = target if not rest else _sub(target, _combine(rest))
        b[n - k] = _combine([((-1) ** k, val)])
    return b


def _sub(a, b):
    return vsub(a, b) if isinstance(a, tuple) else a - b


def hermite_spine(c1, t1, c2, t2, N):
    """Degree ``2N + 1`` Bézier spine matching ``c1`` at ``t1`` and ``c2`` at ``t2`` to order N."""
    _check_continuity(N)
    t1, t2 = Fraction(t1), Fraction(t2)
    n = 2 * N + 1
    return BezierCurve3(_hermite_points(_jet(c1, t1, N, True), _jet(c2, t2, N, True), n))


def _radius_system(n, head, tail, sign):
    """Linear system for Bernstein coefficients of degree n meeting the end jets."""
    A, b = [], []
    for k, value in enumerate(head):
        row = [Fraction(0)] * (n + 1)
        if k <= n:
            for j in range(k + 1):
                row[j] += _falling(n, k) * (-1) ** (k - j) * binomial(k, j)
        A.append(row)
        b.append(value)
    for k, value in enumerate(tail):
        row = [Fraction(0)] * (n + 1)
        if k <= n:
            for j in range(k + 1):
                row[n - k + j] += _falling(n, k) * (-1) ** (k - j) * binomial(k, j)
        A.append(row)
        b.append(value)
    if sign is not None:
        for i in range(n + 1):
            if i < n - i or (i == n - i and sign == -1):
                row = [Fraction(0)] * (n + 1)
                row[i] += 1
                row[n - i] -= sign
                A.append(row)
                b.append(Fraction(0))
    return A, b


def radius_compatibility(r1, t1, r2, t2, N, sign):
    """First order k at which ``r1^(k)(t1) = sign (-1)^k r2^(k)(t2)`` fails, or None."""
    head, tail = _jet(r1, Fraction(t1), N, False), _jet(r2, Fraction(t2), N, False)
    for k in range(N + 1):
        if head[k] != sign * (-1) ** k * tail[k]:
            return k
    return None


def hermite_radius(r1, t1, r2, t2, N, enforce_symmetry=False):
    """Lowest-degree Bernstein radius matching ``r1`` at ``t1`` and ``r2`` at ``t2`` to order N.

    With ``enforce_symmetry`` the coefficients also satisfy ``a_i = ±a_{n-i}``;
    the sign is tried as + first, then -, and stored on the result.
    """
    _check_continuity(N)
    r1, r2 = (r if isinstance(r, RatFunc) else RatFunc.constant(r) for r in (r1, r2))
    head, tail = _jet(r1, Fraction(t1), N, False), _jet(r2, Fraction(t2), N, False)
    if not enforce_symmetry:
        for n in range(2 * N + 2):
            sol = solve(*_radius_system(n, head, tail, None))
            if sol is not None:
                return BezierScalar(sol)
        raise InconsistentConstraint("no interpolating radius found")  # pragma: no cover
    for sign in (1, -1):
        if radius_compatibility(r1, t1, r2, t2, N, sign) is not None:
            continue
        start = 0 if sign == 1 else 1
        for n in range(start, 2 * N + 3, 2):
            sol = solve(*_radius_system(n, head, tail, sign))
            if sol is not None:
                return BezierScalar(sol, sign)
    raise InconsistentConstraint("radius data admit no symmetric interpolant")


# --------------------------------------------------------------------------
# symmetric blends


@dataclass(frozen=True)
class BlendSurface(CanalSurface):
    """Canal surface patch on ``[0, 1]`` with its Bézier data.

    ``moebius`` is the parameter map induced by ``symmetry`` (``1 - t``), or
    None for a plain blend."""

    spine_bezier: BezierCurve3 = None
    radius_bezier: BezierScalar = None
    symmetry: Isometry = None
    moebius: Moebius = None
    notes: tuple = field(default=())


def hermite_blend(S1, t1, S2, t2, N):
    spine = hermite_spine(S1.spine, t1, S2.spine, t2, N)
    radius = hermite_radius(S1.radius, t1, S2.radius, t2, N)
    return BlendSurface(spine.to_curve(), radius.to_ratfunc(), spine, radius)


def _fixes_jets(f, jet):
    if tuple(f.apply(jet[0])) != jet[0]:
        return False
    return all(tuple(f.linear(v)) == v for v in jet[1:])


def symmetric_blend(S1, t1, S2, t2, f, N):
    """Blend of order N that is invariant under the isometry ``f``.

    Requires ``f(c1(t1)) = c2(t2)`` and ``Q c1^(k)(t1) = (-1)^k c2^(k)(t2)``,
    and radius data compatible for one choice of sign.  When ``f`` fixes both
    junctions (a mirror containing all the data) the plain blend is already
    symmetric and is returned with ``moebius`` the identity.
    """
    _check_continuity(N)
    if not f.is_exact:
        raise SymmetryIncompatible("symmetric blends need an exact isometry")
    t1, t2 = Fraction(t1), Fraction(t2)
    jet1, jet2 = _jet(S1.spine, t1, N, True), _jet(S2.spine, t2, N, True)
    if f.is_identity():
        if jet1[0] == jet2[0]:
            raise DegenerateBlend("identity symmetry with coincident junctions collapses the spine")
        raise SymmetryIncompatible("identity cannot exchange distinct junctions", order=0)
    if _fixes_jets(f, jet1) and _fixes_jets(f, jet2):
        plain = hermite_blend(S1, t1, S2, t2, N)
        return BlendSurface(
            plain.spine, plain.radius, plain.spine_bezier, plain.radius_bezier,
            f, Moebius.identity(), ("junction data lie in the fixed set of the symmetry",),
        )
    if tuple(f.apply(jet1[0])) != jet2[0]:
        raise SymmetryIncompatible("f does not map the first junction point to the second", order=0)
    for k in range(1, N + 1):
        if tuple(f.linear(jet1[k])) != vscale((-1) ** k, jet2[k]):
            raise SymmetryIncompatible(f"derivative of order {k} is not carried across by f", order=k)
    spine = hermite_spine(S1.spine, t1, S2.spine, t2, N)
    if len(set(spine.control_points)) == 1:
        raise DegenerateBlend("all control points coincide")
    try:
        radius = hermite_radius(S1.radius, t1, S2.radius, t2, N, enforce_symmetry=True)
    except InconsistentConstraint:
        failing = [radius_compatibility(S1.radius, t1, S2.radius, t2, N, s) for s in (1, -1)]
        raise SymmetryIncompatible(
            "radius derivatives are incompatible with a symmetric patch", order=max(failing)
        ) from None
    if not spine.is_symmetric_under(f):  # pragma: no cover - implied by the checks above
        raise SymmetryIncompatible("control polygon is not symmetric")
    return BlendSurface(spine.to_curve(), radius.to_ratfunc(), spine, radius, f, Moebius(-1, 1, 0, 1))
