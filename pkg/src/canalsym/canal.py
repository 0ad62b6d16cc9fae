"""Canal surfaces: regularity, characteristic circles and symmetry detection.

A canal surface is the envelope of the spheres centred at ``c(t)`` with radius
``r(t)``.  A Euclidean isometry ``f`` maps the surface to itself when it
reparametrizes the spine, ``f o c = c o phi`` for a Möbius map ``phi``, and the
radius agrees up to sign, ``r^2 = (r o phi)^2``.  Candidates for ``phi`` are the
Möbius-like factors of ``A(t)^2 B(u)^2 - A(u)^2 B(t)^2`` where ``r = A/B``; for
constant radius they come from the curvature and torsion of the spine instead.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools

import mpmath

from .curves import (
    ContinuousFamilyMarker,
    Isometry,
    SpaceCurve,
    apply_isometry,
    candidate_moebius_from_invariants,
    compose_curve,
    derivative,
    speed_sq,
    vcross,
    vadd,
    vdot,
    vsub,
    _mat_mul,
    _mat_vec,
    _transpose,
)
from .errors import (
    DegenerateCircle,
    DegenerateEnvelope,
    ExactnessRequired,
    FrameDegenerate,
    LinearSpine,
    PoleAtInput,
)
from .moebius import Moebius, apply, moebius_like_factors
from .ratpoly import WORK_PREC
from .ratpoly import BiPoly, RatFunc, exact_sqrt, is_exact, real_roots, to_mpf

FRAME_SEARCH = 40
NUMERIC_TOL = mpmath.mpf("1e-30")


@dataclass(frozen=True)
class CanalSurface:
    spine: SpaceCurve
    radius: RatFunc

    def __post_init__(self):
        if not isinstance(self.radius, RatFunc):
            object.__setattr__(self, "radius", RatFunc.constant(self.radius))


@dataclass(frozen=True)
class Circle3:
    center: tuple
    radius: object
    plane_normal: tuple


@dataclass(frozen=True)
class Symmetry:
    """An isometry together with the parameter map(s) it induces.

    For Dupin cyclides ``moebius2`` holds the map on the second spine and
    ``swaps_spines`` records whether the two spines are exchanged.
    """

    isometry: Isometry
    moebius: object
    certainty: str = "exact"
    residual: object = None
    label: str = None
    moebius2: object = None
    swaps_spines: bool = False


@dataclass
class SymmetryReport:
    symmetries: list
    group_label: str
    continuous_family: object = None
    closed: bool = True
    factors: list = field(default_factory=list)

    def __len__(self):
        return len(self.symmetries)

    @property
    def isometries(self):
        return [s.isometry for s in self.symmetries]


@dataclass(frozen=True)
class RegularityReport:
    envelope: RatFunc
    degenerate_roots: list
    pinch_roots: list
    passes: bool


def radius_condition_poly(r_i, r_j):
    """``A_i(t)^2 B_j(u)^2 - A_j(u)^2 B_i(t)^2`` for ``r_i = A_i/B_i``, ``r_j = A_j/B_j``."""
    lift = BiPoly.from_uni
    return lift(r_i.num, "t") ** 2 * lift(r_j.den, "u") ** 2 - lift(r_j.num, "u") ** 2 * lift(r_i.den, "t") ** 2


# --------------------------------------------------------------------------
# isometry reconstruction


def _eval_vec(vec, t):
    return tuple(comp(t) if is_exact(t) else comp.eval_mp(t) for comp in vec)


def _moebius_jet(phi, t):
    """phi(t), phi'(t), phi''(t)."""
    val = phi(t)
    d1, d2 = phi.derivative_at(t)
    return val, d1, d2


def _inverse3(M):
    a = M
    det = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    if det == 0:
        return None
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    return tuple(tuple(cof[j][i] / det for j in range(3)) for i in range(3))


def _columns(*vecs):
    return tuple(tuple(v[i] for v in vecs) for i in range(3))


def _frame_params():
    yield 0
    for k in range(1, FRAME_SEARCH):
        yield k
        yield -k


def _is_orthogonal(Q, exact):
    gram = _mat_mul(Q, _transpose(Q))
    if exact:
        return all(gram[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))
    return max(abs(gram[i][j] - (i == j)) for i in range(3) for j in range(3)) < NUMERIC_TOL


def isometry_from_moebius(c_src, c_dst, phi):
    """Isometry ``f`` with ``f o c_src = c_dst o phi``, or None if none exists.

    ``Q`` is determined by its action on ``(c', c'', c' x c'')`` at a regular
    parameter ``t0``; ``b`` follows from the point values.  The result is
    verified before it is returned.
    """
    found = isometries_from_moebius(c_src, c_dst, phi)
    return found[0] if found else None


def isometries_from_moebius(c_src, c_dst, phi):
    """Every isometry ``f`` with ``f o c_src = c_dst o phi``, proper one first.

    A non-planar curve admits at most one such ``f``.  A planar curve admits
    a second one, composed with the reflection in its plane.
    """
    exact = phi.is_exact
    src_d = [derivative(c_src, k) for k in (0, 1, 2)]
    dst_d = [derivative(c_dst, k) for k in (0, 1, 2)]
    with mpmath.workprec(WORK_PREC):
        for t0 in _frame_params():
            t0 = Fraction(t0) if exact else mpmath.mpf(t0)
            try:
                p0, p1, p2 = (_eval_vec(v, t0) for v in src_d)
                u0, du, ddu = _moebius_jet(phi, t0)
                q0, q1, q2 = (_eval_vec(v, u0) for v in dst_d)
            except (PoleAtInput, ZeroDivisionError):
                continue
            cr = vcross(p1, p2)
            if all(x == 0 for x in cr):
                continue
            M = _inverse3(_columns(p1, p2, cr))
            if M is None:
                continue
            # chain rule for c_dst o phi
            d1 = tuple(du * x for x in q1)
            d2 = tuple(du * du * x + ddu * y for x, y in zip(q2, q1))
            dcr = vcross(d1, d2)
            out = []
            for sign in (1, -1):
                D = _columns(d1, d2, tuple(sign * x for x in dcr))
                Q = _mat_mul(D, M)
                if not _is_orthogonal(Q, exact):
                    continue
                b = vsub(q0, _mat_vec(Q, p0))
                try:
                    f = Isometry(Q, b)
                except Exception:
                    continue
                if f.det_sign != sign:
                    continue
                if exact:
                    if _agrees_at_probes(f, c_src, c_dst, phi, t0) and verify_conjugation(f, c_src, c_dst, phi):
                        out.append(f)
                elif conjugation_residual(f, c_src, c_dst, phi) < NUMERIC_TOL:
                    out.append(f)
            return out
    raise FrameDegenerate("no regular parameter found for frame reconstruction")


def _agrees_at_probes(f, c_src, c_dst, phi, t0):
    # cheap exact rejection before the full curve comparison
    for t in (t0 + Fraction(7, 5), t0 - Fraction(11, 3)):
        try:
            lhs = _mat_vec(f.Q, _eval_vec(c_src.components, t))
            rhs = _eval_vec(c_dst.components, apply(phi, t))
        except (PoleAtInput, ZeroDivisionError):
            continue
        if vadd(lhs, f.b) != rhs:
            return False
    return True


def verify_conjugation(f, c_src, c_dst, phi):
    """Exact test of ``f o c_src = c_dst o phi``."""
    if not (f.is_exact and phi.is_exact):
        raise ExactnessRequired("exact conjugation test needs exact data; use conjugation_residual")
    return apply_isometry(f, c_src) == compose_curve(c_dst, phi)


def conjugation_residual(f, c_src, c_dst, phi, samples=20):
    """Max relative deviation of ``f o c_src`` from ``c_dst o phi`` at sample points."""
    worst = mpmath.mpf(0)
    with mpmath.workprec(WORK_PREC):
        k = 0
        taken = 0
        while taken < samples and k < 10 * samples:
            t = Fraction(2 * k - samples, 5) + Fraction(1, 17)
            k += 1
            try:
                lhs = f.apply(tuple(to_mpf(x) for x in c_src(t)))
                rhs = c_dst.eval_mp(phi.eval_mp(t))
            except (PoleAtInput, ZeroDivisionError):
                continue
            scale = 1 + max(abs(x) for x in rhs)
            worst = max(worst, max(abs(a - b) for a, b in zip(lhs, rhs)) / scale)
            taken += 1
    return worst


# --------------------------------------------------------------------------
# regularity and characteristic circles


def envelope_function(S):
    """``|c'|^2 - r'^2``, positive exactly where the sphere family has a real envelope."""
    dr = S.radius.derivative()
    return speed_sq(S.spine) - dr * dr


def check_regularity(S):
    env = envelope_function(S)
    if env.is_zero():
        raise DegenerateEnvelope("|c'|^2 - r'^2 vanishes identically")
    degenerate = real_roots(env.num) if env.num.degree > 0 else []
    pinch = real_roots(S.radius.num) if not S.radius.num.is_zero() and S.radius.num.degree > 0 else []
    sample = next(Fraction(k) for k in itertools.count() if env.den(Fraction(k)) != 0)
    positive = env(sample) > 0
    return RegularityReport(env, degenerate, pinch, positive and not degenerate)


def characteristic_circle(S, t):
    """Contact circle of the envelope with the sphere at parameter ``t``."""
    try:
        c = S.spine(t)
        d1 = tuple(comp(t) for comp in derivative(S.spine, 1))
        r = S.radius(t)
        dr = S.radius.derivative()(t)
    except PoleAtInput as exc:
        raise DegenerateCircle(f"pole at t = {t}") from exc
    speed2 = vdot(d1, d1)
    if speed2 == 0:
        raise DegenerateCircle(f"spine is singular at t = {t}")
    factor = 1 - dr * dr / speed2
    if factor < 0:
        raise DegenerateCircle(f"sphere family has no real envelope at t = {t}")
    root = exact_sqrt(factor) if is_exact(factor) else None
    if r == 0:
        root = 0
    elif root is None:
        root = mpmath.sqrt(to_mpf(factor))
    center = tuple(ci - r * dr * di / speed2 for ci, di in zip(c, d1))
    return Circle3(center, abs(r * root), d1)


# --------------------------------------------------------------------------
# symmetry detection


def sym_canal(S):
    """All symmetries of a canal surface with a single non-linear spine."""
    spine, r = S.spine, S.radius
    d1, d2 = derivative(spine, 1), derivative(spine, 2)
    if all(x.is_zero() for x in vcross(d1, d2)):
        raise LinearSpine(
            "linear spine: the surface is a surface of revolution, whose symmetries "
            "are found by dedicated axis-of-revolution methods"
        )
    factors = []
    if r.is_constant():
        cands = candidate_moebius_from_invariants(spine)
        if isinstance(cands, ContinuousFamilyMarker):
            ident = Symmetry(Isometry.identity(), Moebius.identity())
            return SymmetryReport([ident], "infinite", continuous_family=cands)
    else:
        factors = moebius_like_factors(radius_condition_poly(r, r))
        cands = [f.moebius for f in factors]
    found = []
    for phi in cands:
        for f in isometries_from_moebius(spine, spine, phi):
            if phi.is_exact:
                found.append(Symmetry(f, phi))
            else:
                found.append(Symmetry(f, phi, "numeric", conjugation_residual(f, spine, spine, phi)))
    found.sort(key=lambda s: not s.isometry.is_identity())
    isos = [s.isometry for s in found]
    closed = is_closed(isos)
    return SymmetryReport(found, group_label(isos) if closed else "not closed", closed=closed, factors=factors)


def is_closed(isos):
    for f, g in itertools.product(isos, repeat=2):
        h = f.compose(g)
        if not any(h == k for k in isos):
            return False
    return True


def group_label(isos):
    """Name of a finite isometry group given by its elements."""
    n = len(isos)
    if n == 1:
        return "trivial"
    orders = [f.order(limit=n) for f in isos]
    abelian = all(f.compose(g) == g.compose(f) for f, g in itertools.combinations(isos, 2))
    if n in orders:
        return f"Z{n}"
    if abelian:
        if all(o in (1, 2) for o in orders):
            k = n.bit_length() - 1
            return f"Z2^{k}"
        return f"abelian of order {n}"
    half = n // 2
    involutions = sum(1 for o in orders if o == 2)
    if n % 2 == 0 and half in orders and involutions == half + (1 if half % 2 == 0 else 0):
        return f"D{half}"
    return f"nonabelian of order {n}"
