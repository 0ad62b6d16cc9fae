"""Dupin cyclides: conic analysis, canonical frames and symmetry groups.

A Dupin cyclide is a canal surface in two ways, with two conic spines in
perpendicular planes, each passing through the foci of the other.  The pair of
conic kinds fixes the type: circle and line (I), ellipse and hyperbola (II) or
two parabolas (III).  After moving the data to canonical position, the
symmetries are read off a fixed table and moved back.

Canonical forms, with ``f^2 = a^2 - b^2``::

    I    c1 = a((1-t^2)/(1+t^2), 2t/(1+t^2), 0)       r1 = c
         c2 = a(0, 0, 2t/(1-t^2))                      r2 = c - a(1+t^2)/(1-t^2)
    II   c1 = (a(1-t^2)/(1+t^2), 2bt/(1+t^2), 0)       r1 = c - f(1-t^2)/(1+t^2)
         c2 = (f(1+t^2)/(1-t^2), 0, 2bt/(1-t^2))       r2 = c - a(1+t^2)/(1-t^2)
    III  c1 = g(t^2 - 1/2, 2t, 0)                      r1 = c + g(t^2 + 1/2)
         c2 = g(1/2 - t^2, 0, 2t)                      r2 = c - g(t^2 + 1/2)

In canonical position the radius of each of the spines of types II and III is
an affine function of position whose gradient points along the common axis;
this is what the frame recovery exploits.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import math

import mpmath

from .canal import (
    Symmetry,
    SymmetryReport,
    conjugation_residual,
    group_label,
    radius_condition_poly,
    verify_conjugation,
)
from .curves import Isometry, SpaceCurve, derivative, vadd, vcross, vdot, vscale, vsub
from .errors import (
    DegenerateConic,
    InvalidParams,
    NotADupinConfiguration,
    NotPlanar,
)
from .linalg import nullspace, solve
from .moebius import Moebius, moebius_like_factors
from .ratpoly import (
    RatFunc,
    UniPoly,
    exact_sqrt,
    high_precision,
    is_exact,
    rational_roots,
    real_roots,
    to_mpf,
)

CIRCLE, ELLIPSE, HYPERBOLA, PARABOLA, LINE = "circle", "ellipse", "hyperbola", "parabola", "line"
NUMERIC_TOL = mpmath.mpf("1e-30")


# --------------------------------------------------------------------------
# scalar helpers: exact where possible, mpf otherwise


def _sqrt(q):
    if is_exact(q):
        root = exact_sqrt(q)
        if root is not None:
            return root
    with mpmath.workprec(320):
        return mpmath.sqrt(to_mpf(q))


def _is_zero(x):
    return x == 0 if is_exact(x) else abs(x) < NUMERIC_TOL


def _equal(x, y):
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(to_mpf(x) - to_mpf(y)) < NUMERIC_TOL


def _vec_is_zero(v):
    return all(_is_zero(x) for x in v)


@high_precision
def _unit(v):
    n = _sqrt(vdot(v, v))
    if not is_exact(n):
        v = tuple(to_mpf(x) for x in v)
    return tuple(x / n for x in v)


def _sign_normalized(v):
    """``v`` or ``-v``, whichever has a positive first nonzero entry."""
    lead = next(x for x in v if not _is_zero(x))
    return v if lead > 0 else vscale(-1, v)


def _primitive(v):
    """Integer vector proportional to a rational vector, first nonzero entry positive."""
    den = math.lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*ints) or 1
    ints = [Fraction(i // g) for i in ints]
    return tuple(_sign_normalized(ints))


# --------------------------------------------------------------------------
# planes and conics


@dataclass(frozen=True)
class Plane:
    """``{x : <normal, x> = offset}``."""

    normal: tuple
    offset: object

    @classmethod
    def through(cls, normal, point):
        return cls(tuple(normal), vdot(normal, point))

    @high_precision
    def contains(self, p):
        return _equal(vdot(self.normal, p), self.offset)

    def __str__(self):
        terms = [f"{_fmt(c)}*{v}" for c, v in zip(self.normal, "xyz") if not _is_zero(c)]
        return " + ".join(terms) + f" = {_fmt(self.offset)}"


def _fmt(x):
    from .ratpoly import format_rat

    return format_rat(x) if is_exact(x) else mpmath.nstr(x, 20)


@dataclass(frozen=True)
class ConicInfo:
    kind: str
    plane: Plane
    center_or_vertex: tuple
    foci: list
    axes: list
    matrix: tuple = None
    semi_axes: tuple = ()
    focal_parameter: object = None
    basis: tuple = None  # (u1, u2, w1, w2): in-plane coordinates and their metric weights
    curve: SpaceCurve = field(default=None, compare=False, repr=False)

    @high_precision
    def contains(self, p):
        """Point-on-curve test, exact when ``p`` and the conic are exact."""
        if self.kind == LINE:
            return _vec_is_zero(vcross(vsub(p, self.center_or_vertex), self.axes[0]))
        if not self.plane.contains(p):
            return False
        u1, u2, _, _ = self.basis
        xi, eta = vdot(p, u1), vdot(p, u2)
        C = self.matrix
        vec = (xi, eta, 1)
        val = sum(C[i][j] * vec[i] * vec[j] for i in range(3) for j in range(3))
        return _is_zero(val)


def _curve_polys(c, extra=()):
    """Components times a common denominator, plus that denominator."""
    L = UniPoly((1,))
    for f in list(c.components) + list(extra):
        L = (L * f.den // L.gcd(f.den)).monic()
    comps = [f.num * (L // f.den) for f in list(c.components) + list(extra)]
    return comps, L


def fit_plane(c):
    """Supporting plane of a planar curve, or None when the curve is a line."""
    (px, py, pz), L = _curve_polys(c)
    deg = max(p.degree for p in (px, py, pz, L))
    rows = [[px[i], py[i], pz[i], -L[i]] for i in range(deg + 1)]
    ns = nullspace(rows, 4)
    if not ns:
        raise NotPlanar("spine curve does not lie in a plane")
    if len(ns) > 1:
        return None
    v = _primitive(ns[0])
    normal = v[:3]
    # offset rescaled with the normal
    scale = normal[next(i for i in range(3) if normal[i] != 0)] / ns[0][next(i for i in range(3) if ns[0][i] != 0)]
    return Plane(normal, ns[0][3] * scale)


def _sample_params(c, count):
    out = []
    for k in itertools.count():
        t = Fraction((k + 1) // 2 * (1 if k % 2 else -1))
        if all(comp.den(t) != 0 for comp in c.components):
            out.append(t)
        if len(out) == count:
            return out


def _inplane_basis(n):
    k = min(range(3), key=lambda i: abs(n[i]))
    e = tuple(Fraction(int(i == k)) for i in range(3))
    u1 = vcross(n, e)
    u2 = vcross(n, u1)
    return u1, u2


def _det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


@high_precision
def classify_conic(c):
    """Kind, plane, centre or vertex, foci and axes of a conic spine."""
    d1, d2 = derivative(c, 1), derivative(c, 2)
    if all(x.is_zero() for x in vcross(d1, d2)):
        p0 = c(_sample_params(c, 1)[0])
        direction = _line_direction(c)
        return ConicInfo(LINE, None, p0, [], [direction], curve=c)
    plane = fit_plane(c)
    n = plane.normal
    u1, u2 = _inplane_basis(n)
    w1, w2 = 1 / vdot(u1, u1), 1 / vdot(u2, u2)
    ts = _sample_params(c, 8)
    pts = [c(t) for t in ts]
    coords = [(vdot(p, u1), vdot(p, u2)) for p in pts]
    rows = [[x * x, x * y, y * y, x, y, 1] for x, y in coords]
    ns = nullspace(rows, 6)
    if len(ns) != 1:
        raise DegenerateConic("sample points do not determine a unique conic")
    A, B, Cc, D, E, F = ns[0]
    # verify on the parametrization itself
    xi = sum((u1[i] * c.components[i] for i in range(3)), RatFunc.constant(0))
    eta = sum((u2[i] * c.components[i] for i in range(3)), RatFunc.constant(0))
    if not (A * xi * xi + B * xi * eta + Cc * eta * eta + D * xi + E * eta + F).is_zero():
        raise DegenerateConic("spine is not a conic")
    C3 = ((A, B / 2, D / 2), (B / 2, Cc, E / 2), (D / 2, E / 2, F))
    big = C3[0][0] * _det2(((C3[1][1], C3[1][2]), (C3[2][1], C3[2][2]))) - C3[0][1] * _det2(
        ((C3[1][0], C3[1][2]), (C3[2][0], C3[2][2]))
    ) + C3[0][2] * _det2(((C3[1][0], C3[1][1]), (C3[2][0], C3[2][1])))
    if big == 0:
        raise DegenerateConic("conic is degenerate")
    M = ((A, B / 2), (B / 2, Cc))
    delta = _det2(M)
    base = vscale(plane.offset / vdot(n, n), n)

    def point(xc, yc):
        return vadd(vadd(vscale(xc * w1, u1), vscale(yc * w2, u2)), base)

    def direction(v):
        return vadd(vscale(v[0] * w1, u1), vscale(v[1] * w2, u2))

    common = dict(plane=plane, matrix=C3, basis=(u1, u2, w1, w2), curve=c)
    if delta == 0:
        return _parabola_info(c, pts, plane, M, direction, common)
    xc, yc = solve([list(M[0]), list(M[1])], [-D / 2, -E / 2])
    center = point(xc, yc)
    k = D / 2 * xc + E / 2 * yc + F
    # eigenvalues of the quadratic part in orthonormal in-plane coordinates
    qa, qb, qc = w1 * w2, -(A * w2 + Cc * w1), delta
    if B == 0 and A / w1 == Cc / w2:
        if delta < 0 or -k / (A / w1) <= 0:
            raise DegenerateConic("imaginary circle")
        radius = _sqrt(-k / (A / w1))
        return ConicInfo(CIRCLE, center_or_vertex=center, foci=[center], axes=[], semi_axes=(radius,), **common)
    disc = qb * qb - 4 * qa * qc
    root = _sqrt(disc)
    lams = [(-qb + root) / (2 * qa), (-qb - root) / (2 * qa)]
    dirs = []
    for lam in lams:
        v = (B / 2, lam * w1 - A)
        if _vec_is_zero(v):
            v = (lam * w2 - Cc, B / 2)
        dirs.append(_unit(direction(v)))
    sq = [-k / lam for lam in lams]
    if delta > 0:
        if sq[0] <= 0:
            raise DegenerateConic("imaginary ellipse")
        major = 0 if sq[0] >= sq[1] else 1
        a2, b2 = sq[major], sq[1 - major]
        fdist = _sqrt(a2 - b2)
        axis = dirs[major]
        foci = [vadd(center, vscale(fdist, axis)), vsub(center, vscale(fdist, axis))]
        return ConicInfo(
            ELLIPSE, center_or_vertex=center, foci=foci, axes=[axis, dirs[1 - major]],
            semi_axes=(_sqrt(a2), _sqrt(b2)), **common,
        )
    trans = 0 if sq[0] > 0 else 1
    a2, b2 = sq[trans], -sq[1 - trans]
    fdist = _sqrt(a2 + b2)
    axis = dirs[trans]
    foci = [vadd(center, vscale(fdist, axis)), vsub(center, vscale(fdist, axis))]
    return ConicInfo(
        HYPERBOLA, center_or_vertex=center, foci=foci, axes=[axis, dirs[1 - trans]],
        semi_axes=(_sqrt(a2), _sqrt(b2)), **common,
    )


def _line_direction(c):
    ts = _sample_params(c, 2)
    return _primitive(vsub(c(ts[1]), c(ts[0])))


def _parabola_info(c, pts, plane, M, direction, common):
    A, hB = M[0][0], M[0][1]
    v = (hB, -A) if A != 0 else (Fraction(1), Fraction(0))
    w = direction(v)
    n = plane.normal
    wp = vcross(n, w)
    rows = []
    for p in pts:
        s, q = vdot(p, w), vdot(p, wp)
        rows.append([q * q, s, q, 1])
    ns = nullspace(rows, 4)
    if len(ns) != 1 or ns[0][0] == 0 or ns[0][1] == 0:
        raise DegenerateConic("parabola fit failed")
    al, be, ga, de = ns[0]
    qv = -ga / (2 * al)
    sv = -(al * qv * qv + ga * qv + de) / be
    vertex = vadd(
        vadd(vscale(sv / vdot(w, w), w), vscale(qv / vdot(wp, wp), wp)),
        vscale(plane.offset / vdot(n, n), n),
    )
    focus = vadd(vertex, vscale(-be / (4 * al * vdot(wp, wp)), w))
    offset = vsub(focus, vertex)
    p = _sqrt(vdot(offset, offset))
    return ConicInfo(
        PARABOLA, center_or_vertex=vertex, foci=[focus], axes=[_unit(offset)],
        focal_parameter=p, **common,
    )


# --------------------------------------------------------------------------
# canonical data


def _check_params(kind, params):
    get = params.get
    if kind == "I":
        if not get("a") or not get("c"):
            raise InvalidParams("Type I needs a != 0 and c != 0")
    elif kind == "II":
        a, b, f = get("a"), get("b"), get("f")
        if not a or not b or f is None or get("c") is None:
            raise InvalidParams("Type II needs a, b, c, f with a, b != 0")
        if f <= 0 or f * f != a * a - b * b:
            raise InvalidParams("Type II needs f > 0 and f^2 = a^2 - b^2")
    elif kind == "III":
        if not get("g") or get("c") is None:
            raise InvalidParams("Type III needs g != 0 and c")
    else:
        raise InvalidParams(f"unknown cyclide type {kind!r}")


def _rf(num, den=(1,)):
    return RatFunc(UniPoly(num), UniPoly(den))


def canonical_pairs(kind, **params):
    """The two (spine, radius) pairs of a cyclide in canonical position."""
    params = {k: Fraction(v) for k, v in params.items() if v is not None}
    _check_params(kind, params)
    P = params
    one_plus, one_minus = (1, 0, 1), (1, 0, -1)
    if kind == "I":
        a, c = P["a"], P["c"]
        c1 = SpaceCurve(_rf((a, 0, -a), one_plus), _rf((0, 2 * a), one_plus), 0)
        c2 = SpaceCurve(0, 0, _rf((0, 2 * a), one_minus))
        return (c1, RatFunc.constant(c)), (c2, RatFunc.constant(c) - _rf((a, 0, a), one_minus))
    if kind == "II":
        a, b, c, f = P["a"], P["b"], P["c"], P["f"]
        c1 = SpaceCurve(_rf((a, 0, -a), one_plus), _rf((0, 2 * b), one_plus), 0)
        c2 = SpaceCurve(_rf((f, 0, f), one_minus), 0, _rf((0, 2 * b), one_minus))
        r1 = RatFunc.constant(c) - _rf((f, 0, -f), one_plus)
        r2 = RatFunc.constant(c) - _rf((a, 0, a), one_minus)
        return (c1, r1), (c2, r2)
    g, c = P["g"], P["c"]
    c1 = SpaceCurve(_rf((-g / 2, 0, g)), _rf((0, 2 * g)), 0)
    c2 = SpaceCurve(_rf((g / 2, 0, -g)), 0, _rf((0, 2 * g)))
    return (c1, _rf((c + g / 2, 0, g))), (c2, _rf((c - g / 2, 0, -g)))


def implicit_eval(kind, params, point):
    """Canonical implicit equation of the given type evaluated at ``point``."""
    P = {k: Fraction(v) for k, v in params.items() if v is not None}
    _check_params(kind, P)
    x, y, z = point
    s = x * x + y * y + z * z
    if kind == "I":
        a, c = P["a"], P["c"]
        return (s + a * a - c * c) ** 2 - 4 * a * a * (x * x + y * y)
    if kind == "II":
        a, c, f = P["a"], P["c"], P["f"]
        return (s + a * a - f * f - c * c) ** 2 - 4 * (a * x - c * f) ** 2 - 4 * y * y * (a * a - f * f)
    g, c = P["g"], P["c"]
    return (x + c) * s + (y * y - z * z) * g - (g * g + c * c) * x + (g * g - c * c) * c


# --------------------------------------------------------------------------
# frame recovery


@dataclass(frozen=True)
class DupinFrame:
    cyclide_type: str
    params: dict
    O: tuple
    planes: dict
    pose: Isometry
    order: tuple  # user pair index for canonical pair 1 and 2
    radius_signs: tuple  # sign turning each user radius into its canonical orientation
    conics: tuple


def _affine_radius(c, r, normal):
    """``(k, m)`` with ``r(t) = <k, c(t)> + m`` and ``k`` in the spine plane, or None."""
    (px, py, pz, pr), L = _curve_polys(c, extra=(r,))
    deg = max(p.degree for p in (px, py, pz, pr, L))
    A = [[px[i], py[i], pz[i], L[i]] for i in range(deg + 1)]
    b = [pr[i] for i in range(deg + 1)]
    A.append(list(normal) + [0])
    b.append(0)
    sol = solve(A, b)
    if sol is None:
        return None
    return tuple(sol[:3]), sol[3]


def _frame_from_axes(ex, ey, O):
    ez = vcross(ex, ey)
    exact = all(is_exact(x) for x in (*ex, *ey, *ez, *O))
    if not exact:
        ex, ey, ez, O = (tuple(to_mpf(x) for x in v) for v in (ex, ey, ez, O))
    Q = (ex, ey, ez)
    rot = Isometry(Q)
    return Isometry(Q, vscale(-1, rot.apply(O))), ez


def _require(cond, msg):
    if not cond:
        raise NotADupinConfiguration(msg)


@high_precision
def dupin_frame(pair1, pair2):
    """Type, canonical parameters, special planes and pose of a Dupin cyclide."""
    k1, k2 = classify_conic(pair1[0]), classify_conic(pair2[0])
    kinds = {k1.kind, k2.kind}
    if kinds == {CIRCLE, LINE}:
        return _frame_type_i(pair1, pair2, k1, k2)
    if kinds == {ELLIPSE, HYPERBOLA}:
        return _frame_type_ii(pair1, pair2, k1, k2)
    if kinds == {PARABOLA}:
        return _frame_type_iii(pair1, pair2, k1, k2)
    raise NotADupinConfiguration(f"spine kinds {k1.kind}/{k2.kind} do not form a Dupin cyclide")


def _frame_type_i(pair1, pair2, k1, k2):
    order = (0, 1) if k1.kind == CIRCLE else (1, 0)
    pairs = (pair1, pair2)
    cc, rc = pairs[order[0]]
    circ, line = (k1, k2) if order == (0, 1) else (k2, k1)
    O = circ.center_or_vertex
    direction = line.axes[0]
    _require(_vec_is_zero(vcross(direction, circ.plane.normal)), "line is not perpendicular to the circle plane")
    _require(line.contains(O), "line does not pass through the circle centre")
    _require(rc.is_constant(), "radius along the circle must be constant")
    c = rc.constant_value()
    _require(c != 0, "Type I needs c != 0")
    ez = _unit(_sign_normalized(direction))
    p = cc(_sample_params(cc, 1)[0])
    ex = _unit(vsub(p, O))
    ey = vcross(ez, ex)
    pose, _ = _frame_from_axes(ex, ey, O)
    a = circ.semi_axes[0]
    radial = vsub(p, O)
    planes = {
        "Pi0": Plane.through(_normal_of(radial), O),
        "Pi1": circ.plane,
        "Pi2": Plane.through(_normal_of(vcross(circ.plane.normal, radial)), O),
    }
    return DupinFrame("I", {"a": a, "c": c}, O, planes, pose, order, (1, 1), (circ, line))


def _frame_type_ii(pair1, pair2, k1, k2):
    order = (0, 1) if k1.kind == ELLIPSE else (1, 0)
    pairs = (pair1, pair2)
    (ce, re), (ch, rh) = pairs[order[0]], pairs[order[1]]
    ell, hyp = (k1, k2) if order == (0, 1) else (k2, k1)
    _require(vdot(ell.plane.normal, hyp.plane.normal) == 0, "spine planes are not perpendicular")
    O = ell.center_or_vertex
    _require(_vec_is_zero(vsub(O, hyp.center_or_vertex)), "ellipse and hyperbola are not concentric")
    for focus in ell.foci:
        _require(hyp.contains(focus), "hyperbola misses a focus of the ellipse")
    for focus in hyp.foci:
        _require(ell.contains(focus), "ellipse misses a focus of the hyperbola")
    a, b = ell.semi_axes
    f = _sqrt(a * a - b * b)
    fit_e = _affine_radius(ce, re, ell.plane.normal)
    fit_h = _affine_radius(ch, rh, hyp.plane.normal)
    _require(fit_e is not None and fit_h is not None, "radius is not affine in position along the spine")
    ke, me = fit_e
    kh, mh = fit_h
    _require(_equal(vdot(ke, ke), f * f / (a * a)), "ellipse radius has the wrong slope")
    ex = _unit(vscale(-1, ke))
    _require(_vec_is_zero(vcross(ex, ell.axes[0])), "radius gradient is not along the major axis")
    c = vdot(ke, O) + me
    sign = -1 if vdot(kh, ex) > 0 else 1
    kh, mh = vscale(sign, kh), sign * mh
    _require(_equal(vdot(kh, kh), a * a / (f * f)), "hyperbola radius has the wrong slope")
    _require(_equal(vdot(kh, O) + mh, c), "radius functions disagree at the centre")
    ey = _unit(_sign_normalized(hyp.plane.normal))
    pose, _ = _frame_from_axes(ex, ey, O)
    pi0 = Plane.through(_primitive(vcross(ell.plane.normal, hyp.plane.normal)), O)
    planes = {"Pi0": pi0, "Pi1": ell.plane, "Pi2": hyp.plane}
    signs = [1, 1]
    signs[order[1]] = sign
    return DupinFrame("II", {"a": a, "b": b, "c": c, "f": f}, O, planes, pose, order, tuple(signs), (ell, hyp))


def _frame_type_iii(pair1, pair2, k1, k2):
    (c1, r1), (c2, r2) = pair1, pair2
    _require(vdot(k1.plane.normal, k2.plane.normal) == 0, "spine planes are not perpendicular")
    v1, f1 = k1.center_or_vertex, k1.foci[0]
    v2, f2 = k2.center_or_vertex, k2.foci[0]
    O = vscale(Fraction(1, 2), vadd(v1, f1))
    _require(_vec_is_zero(vsub(O, vscale(Fraction(1, 2), vadd(v2, f2)))), "parabolas have different centres")
    _require(k2.contains(f1) and k1.contains(f2), "each parabola must pass through the other's focus")
    fit1 = _affine_radius(c1, r1, k1.plane.normal)
    fit2 = _affine_radius(c2, r2, k2.plane.normal)
    _require(fit1 is not None and fit2 is not None, "radius is not affine in position along the spine")
    ka, ma = fit1
    kb, mb = fit2
    _require(vdot(ka, ka) == 1, "radius gradient must have unit length")
    ex = ka
    g = k1.focal_parameter * vdot(k1.axes[0], ex)
    c = vdot(ka, O) + ma - g
    sign = 1 if _vec_is_zero(vsub(kb, ex)) else -1
    _require(_vec_is_zero(vsub(vscale(sign, kb), ex)), "second radius gradient is not along the axis")
    _require(_equal(sign * (vdot(kb, O) + mb), c - g), "radius functions disagree at the centre")
    ey = _unit(_sign_normalized(k2.plane.normal))
    pose, ez = _frame_from_axes(ex, ey, O)
    planes = {
        "Pi0": Plane.through(_primitive(vcross(k1.plane.normal, k2.plane.normal)), O),
        "Pi1": k1.plane,
        "Pi2": k2.plane,
        "Pi3": Plane.through(_normal_of(vsub(ez, ey)), O),
        "Pi4": Plane.through(_normal_of(vadd(ez, ey)), O),
    }
    return DupinFrame("III", {"c": c, "g": g}, O, planes, pose, (0, 1), (1, sign), (k1, k2))


def _normal_of(v):
    return _primitive(v) if all(is_exact(x) for x in v) else v


# --------------------------------------------------------------------------
# cyclide objects and symmetries


class DupinCyclide:
    """Two (spine, radius) pairs describing the same Dupin cyclide."""

    def __init__(self, pair1, pair2):
        self.pair1 = tuple(pair1)
        self.pair2 = tuple(pair2)
        self._frame = None

    @classmethod
    def canonical(cls, kind, **params):
        return cls(*canonical_pairs(kind, **params))

    @property
    def frame(self):
        if self._frame is None:
            self._frame = dupin_frame(self.pair1, self.pair2)
        return self._frame

    @property
    def pairs(self):
        return (self.pair1, self.pair2)

    def transformed(self, g):
        """The same cyclide moved by an exact isometry ``g``."""
        from .curves import apply_isometry

        return DupinCyclide(*((apply_isometry(g, c), r) for c, r in self.pairs))


@high_precision
def ratfunc_extrema(r):
    """Global (min, max) of ``r`` over the projective line; infinities as mpmath.inf."""
    if r.is_constant():
        v = r.constant_value()
        return v, v
    num, den = r.num, r.den
    inf = mpmath.inf
    if den.degree > 0 and real_roots(den):
        return -inf, inf
    cands = []
    dn, dd = num.degree, den.degree
    if dn > dd:
        lc = num.lc / den.lc
        ends = [inf if lc > 0 else -inf]
        ends.append(ends[0] if (dn - dd) % 2 == 0 else -ends[0])
        cands.extend(ends)
    elif dn == dd:
        cands.append(num.lc / den.lc)
    else:
        cands.append(Fraction(0))
    crit = num.derivative() * den - num * den.derivative()
    if not crit.is_zero():
        exact = set(rational_roots(crit))
        cands.extend(r(x) for x in exact)
        for root in real_roots(crit):
            if root.is_exact and root.lo in exact:
                continue
            if any(root.lo <= q <= root.hi for q in exact):
                continue
            cands.append(r.eval_mp(root.approx(320)))
    key = lambda v: to_mpf(v) if is_exact(v) else v
    return min(cands, key=key), max(cands, key=key)


def is_super_symmetric(d):
    frame = d.frame
    if frame.cyclide_type == "I":
        return False
    if frame.cyclide_type == "II":
        ell_index = frame.order[0]
        lo, hi = ratfunc_extrema(d.pairs[ell_index][1])
        return _is_zero(lo + hi) if (is_exact(lo) and is_exact(hi)) else abs(to_mpf(lo) + to_mpf(hi)) < NUMERIC_TOL
    # r1 + r2 vanishes identically in canonical position exactly when c = 0
    return _is_zero(frame.params["c"])


TABLE_ROWS = {
    # label: (canonical matrix rows, canonical (phi1, phi2), swaps spines)
    "a": (((1, 0, 0), (0, 1, 0), (0, 0, 1)), ("t", "t"), False),
    "b": (((1, 0, 0), (0, 1, 0), (0, 0, -1)), ("t", "-t"), False),
    "c": (((1, 0, 0), (0, -1, 0), (0, 0, 1)), ("-t", "t"), False),
    "d": (((1, 0, 0), (0, -1, 0), (0, 0, -1)), ("-t", "-t"), False),
    "e": (((-1, 0, 0), (0, 1, 0), (0, 0, 1)), ("1/t", "-1/t"), False),
    "f": (((-1, 0, 0), (0, 1, 0), (0, 0, -1)), ("1/t", "1/t"), False),
    "g": (((-1, 0, 0), (0, -1, 0), (0, 0, 1)), ("-1/t", "-1/t"), False),
    "h": (((-1, 0, 0), (0, -1, 0), (0, 0, -1)), ("-1/t", "1/t"), False),
    "i": (((-1, 0, 0), (0, 0, 1), (0, 1, 0)), ("t", "t"), True),
    "j": (((-1, 0, 0), (0, 0, -1), (0, -1, 0)), ("-t", "-t"), True),
    "k": (((-1, 0, 0), (0, 0, -1), (0, 1, 0)), ("t", "-t"), True),
    "l": (((-1, 0, 0), (0, 0, 1), (0, -1, 0)), ("-t", "t"), True),
}

CANONICAL_MOEBIUS = {
    "t": Moebius(1, 0, 0, 1),
    "-t": Moebius(-1, 0, 0, 1),
    "1/t": Moebius(0, 1, 1, 0),
    "-1/t": Moebius(0, -1, 1, 0),
}


def table_rows(kind, super_symmetric):
    rows = "abcd"
    if super_symmetric:
        rows += "efgh" if kind == "II" else "ijkl"
    return rows


@dataclass(frozen=True)
class TorusFamily:
    """Symmetries of a Type I cyclide: rotations about the axis, optionally
    composed with the mirror in the circle plane and/or a mirror containing the
    axis.  Members are indexed by ``eps1, eps2`` in {1, -1} and an angle given by
    its cosine and sine.  The Möbius maps refer to the canonical
    parametrizations."""

    axis_point: tuple
    axis_direction: tuple
    mirror_plane: Plane
    pose: Isometry

    def canonical_matrix(self, eps1, eps2, cos_t, sin_t):
        return ((eps2 * cos_t, -eps2 * sin_t, 0), (sin_t, cos_t, 0), (0, 0, eps1))

    def member(self, eps1, eps2, cos_t, sin_t):
        if eps1 not in (1, -1) or eps2 not in (1, -1):
            raise InvalidParams("eps1 and eps2 must be +1 or -1")
        cos_t, sin_t = (Fraction(x) if isinstance(x, (int, str)) else x for x in (cos_t, sin_t))
        if not _equal(cos_t * cos_t + sin_t * sin_t, 1):
            raise InvalidParams("cos^2 + sin^2 must equal 1")
        can = Isometry(self.canonical_matrix(eps1, eps2, cos_t, sin_t))
        f = self.pose.inverse().compose(can).compose(self.pose)
        return Symmetry(f, _torus_phi1(eps2, cos_t, sin_t), moebius2=Moebius(eps1, 0, 0, 1), label="torus")


def _torus_phi1(eps2, cos_t, sin_t):
    if _equal(cos_t, -1):
        # half-angle pi/2
        return Moebius(0, -1, 1, 0) if eps2 == 1 else Moebius(-1, 0, 0, 1)
    h = sin_t / (1 + cos_t)
    if eps2 == 1:
        return Moebius(1, h, -h, 1)
    return Moebius(-h, 1, 1, h)


@high_precision
def dupin_symmetries(d):
    """Symmetry report looked up from the canonical tables and moved back by the pose."""
    frame = d.frame
    if frame.cyclide_type == "I":
        circ = frame.conics[0]
        inv = frame.pose.inverse()
        family = TorusFamily(frame.O, inv.linear((0, 0, 1)), circ.plane, frame.pose)
        ident = Symmetry(Isometry.identity(), Moebius.identity(), moebius2=Moebius.identity(), label="a")
        return SymmetryReport([ident], "Z2^2 x S1", continuous_family=family)
    kind = frame.cyclide_type
    rows = table_rows(kind, is_super_symmetric(d))
    inv = frame.pose.inverse()
    finder = _MoebiusFinder(d)
    out = []
    for label in rows:
        Q, (p1, p2), swaps = TABLE_ROWS[label]
        f = inv.compose(Isometry(Q)).compose(frame.pose)
        phi1 = finder.find(f, 0, 0 if not swaps else 1)
        phi2 = finder.find(f, 1, 1 if not swaps else 0)
        if phi1 is None or phi2 is None:
            raise NotADupinConfiguration(f"table symmetry ({label}) does not map the spines as expected")
        certainty = "exact" if f.is_exact and phi1.is_exact and phi2.is_exact else "numeric"
        out.append(Symmetry(f, phi1, certainty, label=label, moebius2=phi2, swaps_spines=swaps))
    label = group_label([s.isometry for s in out])
    return SymmetryReport(out, label)


class _MoebiusFinder:
    """Locates the Möbius map ``phi`` with ``f o c_i = c_j o phi`` among the
    Möbius-like factors of the radius condition for the pair (i, j)."""

    def __init__(self, d):
        self.pairs = d.pairs
        self.cache = {}

    def candidates(self, i, j):
        if (i, j) not in self.cache:
            R = radius_condition_poly(self.pairs[i][1], self.pairs[j][1])
            if R.is_zero():
                self.cache[(i, j)] = list(CANONICAL_MOEBIUS.values())
            else:
                self.cache[(i, j)] = [f.moebius for f in moebius_like_factors(R)]
        return self.cache[(i, j)]

    def find(self, f, i, j):
        src, dst = self.pairs[i][0], self.pairs[j][0]
        for phi in self.candidates(i, j):
            if f.is_exact and phi.is_exact:
                if verify_conjugation(f, src, dst, phi):
                    return phi
            elif conjugation_residual(f, src, dst, phi) < NUMERIC_TOL:
                return phi
        return None
