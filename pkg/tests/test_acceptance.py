"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line, and the
lines are repeated in the terminal summary."""

import random
from fractions import Fraction

import numpy as np
import sympy as sp

from canalsym.blend import hermite_blend, symmetric_blend, symmetric_radius_coeffs
from canalsym.canal import CanalSurface, isometry_from_moebius, radius_condition_poly, sym_canal, verify_conjugation
from canalsym.curves import Isometry, SpaceCurve, apply_isometry, compose_curve, derivative, frenet_frame, kappa_sq, torsion
from canalsym.dupin import DupinCyclide, dupin_symmetries, implicit_eval, is_super_symmetric, ratfunc_extrema
from canalsym.errors import FrameDegenerate
from canalsym.mesh import normals
from canalsym.moebius import Moebius
from canalsym.ratpoly import BiPoly, RatFunc, bipoly_divmod, exact_sqrt

from conftest import (
    T,
    U,
    criterion,
    crunode,
    crunode_radius,
    parity_pattern_holds,
    radius_sequence,
    rf,
    square_is_symmetric,
    twisted_cubic_shifted,
)

IDENTITY = Isometry.identity()
HALF_TURN_Y = Isometry.diagonal(-1, 1, -1)
REFLECT_X_PLUS_Z = Isometry(((0, 0, -1), (0, 1, 0), (-1, 0, 0)))
REFLECT_X_MINUS_Z = Isometry(((0, 0, 1), (0, 1, 0), (1, 0, 0)))
PYTHAGOREAN = [Fraction(0), Fraction(3, 4), Fraction(-3, 4), Fraction(4, 3), Fraction(5, 12), Fraction(-12, 5), Fraction(8, 15), Fraction(7, 24)]


def crunode_surface():
    return CanalSurface(crunode(), crunode_radius())


def negative_control():
    return CanalSurface(crunode(), rf((1, 1, 0, 1), (1, 0, 0, 0, 1)))


def pinched_cubic(sign=1):
    return CanalSurface(twisted_cubic_shifted(), rf((Fraction(-1, 2), 1)) * sign)


def random_points(rng, count=20):
    return [tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(3)) for _ in range(count)]


def random_isometries(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        q = [rng.randint(-3, 3) for _ in range(4)]
        if not any(q):
            q[0] = 1
        g = Isometry.from_quaternion(*q, [rng.randint(-3, 3) for _ in range(3)])
        if rng.random() < 0.5:
            g = g.compose(Isometry.diagonal(1, 1, -1))
        out.append(g)
    return out


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def exact_surface_points(c, r, ts, ss):
    """Points c + r N(t, s) at parameters where the normal field is rational."""
    points = []
    for t in ts:
        d1 = tuple(comp(t) for comp in derivative(c, 1))
        d2 = tuple(comp(t) for comp in derivative(c, 2))
        speed = exact_sqrt(dot(d1, d1))
        cr = cross(d1, d2)
        crn = exact_sqrt(dot(cr, cr))
        if not speed or not crn:
            continue
        ratio = r.derivative()(t) / speed
        root = exact_sqrt(1 - ratio * ratio)
        if root is None:
            continue
        tangent = tuple(x / speed for x in d1)
        binormal = tuple(x / crn for x in cr)
        normal = cross(binormal, tangent)
        centre, radius = c(t), r(t)
        for s in ss:
            cs, sn = (1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)
            N = tuple(-ratio * a + root * (cs * b + sn * d) for a, b, d in zip(tangent, normal, binormal))
            points.append(tuple(p + radius * n for p, n in zip(centre, N)))
    return points


def sym_bipoly(R):
    return sum((sp.Rational(c.numerator, c.denominator) * T**i * U**j for (i, j), c in R.terms.items()), sp.Integer(0))


def floats(Q):
    return np.array([[float(x) for x in row] for row in Q])


def test_criterion_01_crunode_example():
    with criterion(1, "crunode canal surface: 4 exact symmetries, factor set {t, -t, 1/t, -1/t}"):
        rep = sym_canal(crunode_surface())
        assert len(rep) == 4
        assert set(rep.isometries) == {IDENTITY, HALF_TURN_Y, REFLECT_X_PLUS_Z, REFLECT_X_MINUS_Z}
        assert all(s.certainty == "exact" and s.isometry.b == (0, 0, 0) for s in rep.symmetries)
        assert all(f.is_exact for f in rep.factors)
        assert {f.moebius for f in rep.factors} == {
            Moebius(1, 0, 0, 1), Moebius(-1, 0, 0, 1), Moebius(0, 1, 1, 0), Moebius(0, -1, 1, 0)
        }
        assert len(rep.factors) == 4


def test_criterion_02_type_ii():
    with criterion(2, "Type II a=5 b=4 f=3: c=0 gives 8 symmetries Z2^3, c=-1 gives 4 symmetries Z2^2"):
        rep = dupin_symmetries(DupinCyclide.canonical("II", a=5, b=4, f=3, c=0))
        assert len(rep) == 8 and rep.group_label == "Z2^3"
        assert [s.label for s in rep.symmetries] == list("abcdefgh")
        assert all(s.certainty == "exact" for s in rep.symmetries)
        rep = dupin_symmetries(DupinCyclide.canonical("II", a=5, b=4, f=3, c=-1))
        assert len(rep) == 4 and rep.group_label == "Z2^2"


def test_criterion_03_type_iii():
    with criterion(3, "Type III g=1: c=0 gives D4 with two order-4 elements, c=3/10 gives Z2^2; zero set of F preserved"):
        rng = random.Random(3)
        for c, count, label in ((0, 8, "D4"), (Fraction(3, 10), 4, "Z2^2")):
            params = dict(g=1, c=c)
            d = DupinCyclide.canonical("III", **params)
            rep = dupin_symmetries(d)
            assert len(rep) == count and rep.group_label == label
            assert all(s.certainty == "exact" for s in rep.symmetries)
            orders = [s.isometry.order() for s in rep.symmetries]
            assert orders.count(4) == (2 if c == 0 else 0)
            (c1, r1), (c2, r2) = d.pairs
            on_surface = exact_surface_points(c1, r1, PYTHAGOREAN, [Fraction(0), Fraction(1, 2), Fraction(-3), Fraction(2, 7)])
            assert len(on_surface) >= 20
            for sym in rep.symmetries:
                # F is cubic, so the spine-swapping maps send F to -F
                ratios = set()
                for p in random_points(rng):
                    before = implicit_eval("III", params, p)
                    ratios.add(implicit_eval("III", params, sym.isometry(p)) / before)
                assert len(ratios) == 1 and ratios.pop() in (1, -1)
                for p in on_surface:
                    assert implicit_eval("III", params, p) == 0
                    assert implicit_eval("III", params, sym.isometry(p)) == 0


def test_criterion_04_torus():
    with criterion(4, "Type I torus a=2 c=1: continuous family about the z-axis, Z2^2 x S1; rotation (3/5, 4/5) preserves F"):
        params = dict(a=2, c=1)
        d = DupinCyclide.canonical("I", **params)
        rep = dupin_symmetries(d)
        assert rep.group_label == "Z2^2 x S1"
        fam = rep.continuous_family
        assert fam is not None and fam.axis_point == (0, 0, 0)
        assert fam.axis_direction in ((0, 0, 1), (0, 0, -1))
        rotation = fam.member(1, 1, Fraction(3, 5), Fraction(4, 5)).isometry
        assert rotation == Isometry(((Fraction(3, 5), Fraction(-4, 5), 0), (Fraction(4, 5), Fraction(3, 5), 0), (0, 0, 1)))
        for p in random_points(random.Random(4)):
            assert implicit_eval("I", params, rotation(p)) == implicit_eval("I", params, p)
        (c1, r1), _ = d.pairs
        for p in exact_surface_points(c1, r1, [Fraction(k, 3) for k in range(-6, 7)], [Fraction(0), Fraction(1, 2), Fraction(5)]):
            assert implicit_eval("I", params, p) == 0
            assert implicit_eval("I", params, rotation(p)) == 0


def test_criterion_05_super_symmetry():
    with criterion(5, "super-symmetry: Type III true iff c=0 over {0, 1/10, -2}; Type II c=0 true via extrema (-f, f)"):
        for c in (Fraction(0), Fraction(1, 10), Fraction(-2)):
            assert is_super_symmetric(DupinCyclide.canonical("III", g=1, c=c)) is (c == 0)
        d = DupinCyclide.canonical("II", a=5, b=4, f=3, c=0)
        ellipse_radius = d.pairs[d.frame.order[0]][1]
        assert ratfunc_extrema(ellipse_radius) == (-3, 3)
        assert is_super_symmetric(d) is True


def test_criterion_06_blends():
    with criterion(6, "blends: cylinder control points and r=(2-3t^2+2t^3)/4; symmetric quadratic radius t^2-t+1/2"):
        S1 = CanalSurface(SpaceCurve(0, 0, rf((1, -2))), Fraction(1, 2))
        S2 = CanalSurface(SpaceCurve(0, rf((-1, 2)), 0), Fraction(1, 4))
        B = hermite_blend(S1, 0, S2, 1, 1)
        third = Fraction(1, 3)
        assert B.spine_bezier.control_points == ((0, 0, 1), (0, 0, third), (0, third, 0), (0, 1, 0))
        assert B.radius == rf((2, 0, -3, 2)) * RatFunc.constant(Fraction(1, 4))
        target = rf((Fraction(1, 2), -1, 1))
        # junction orientations (-r1 at t=0, r1 at t=1) reproduce the printed radius exactly
        patch = symmetric_blend(pinched_cubic(-1), 0, pinched_cubic(), 1, HALF_TURN_Y, 1)
        assert patch.radius == target and patch.radius_bezier.degree == 2
        # the opposite assignment yields the same surface with reversed orientation
        flipped = symmetric_blend(pinched_cubic(), 0, pinched_cubic(-1), 1, HALF_TURN_Y, 1)
        assert flipped.radius == -target


def test_criterion_07_radius_parity():
    with criterion(7, "radius parity: 200 sequences per parity, n <= 6; pattern holds iff r^2(t) = r^2(1-t)"):
        rng = random.Random(7)
        modes = ["pattern", "flipped", "random"]
        checked = {0: 0, 1: 0}
        for parity in (0, 1):
            degrees = [n for n in range(7) if n % 2 == parity]
            for k in range(200):
                n = degrees[k % len(degrees)]
                a = radius_sequence(rng, n, modes[k % 3])
                identity = square_is_symmetric(a)
                assert parity_pattern_holds(a) == identity
                r = symmetric_radius_coeffs(n, a) if modes[k % 3] == "pattern" else None
                if r is not None:
                    r2 = r.to_ratfunc() * r.to_ratfunc()
                    assert identity and r2 == r2.compose(rf((1, -1)))
                checked[parity] += 1
        assert checked == {0: 200, 1: 200}


def test_criterion_08_invariants():
    with criterion(8, "invariants: u-t divides R_ii; symmetries verified and orthogonal; Frenet and normal transport; covariance"):
        rng = random.Random(8)
        surfaces = [crunode_surface(), negative_control(), pinched_cubic()]
        radii = [S.radius for S in surfaces] + [r for kind, p in (("II", dict(a=5, b=4, f=3, c=-1)), ("III", dict(g=1, c=0))) for _, r in DupinCyclide.canonical(kind, **p).pairs]
        for r in radii:
            _, rem = bipoly_divmod(radius_condition_poly(r, r), BiPoly.u() - BiPoly.t())
            assert rem.is_zero()
        for S in surfaces:
            for sym in sym_canal(S).symmetries:
                Q = sym.isometry.Q
                assert all(sum(Q[i][k] * Q[j][k] for k in range(3)) == (i == j) for i in range(3) for j in range(3))
                assert verify_conjugation(sym.isometry, S.spine, S.spine, sym.moebius)
        for kind, params in (("II", dict(a=5, b=4, f=3, c=0)), ("III", dict(g=1, c=0))):
            d = DupinCyclide.canonical(kind, **params)
            (c1, _), (c2, _) = d.pairs
            for sym in dupin_symmetries(d).symmetries:
                dst1, dst2 = (c2, c1) if sym.swaps_spines else (c1, c2)
                assert verify_conjugation(sym.isometry, c1, dst1, sym.moebius)
                assert verify_conjugation(sym.isometry, c2, dst2, sym.moebius2)
        # Frenet transport along the symmetries of the crunode surface
        S = crunode_surface()
        samples = [(rng.uniform(-3, 3), rng.uniform(-4, 4)) for _ in range(20)]
        for sym in sym_canal(S).symmetries:
            Q, det = floats(sym.isometry.Q), sym.isometry.det_sign
            for t, _ in samples:
                u = float(sym.moebius.eval_mp(t))
                sign = np.sign(float(sym.moebius.derivative_at(t)[0]))
                try:
                    tc, nc, bc = frenet_frame(S.spine, t)
                except FrameDegenerate:
                    continue
                tu, nu, bu = frenet_frame(S.spine, u)
                assert np.allclose(sign * Q @ tc, tu, atol=1e-9)
                assert np.allclose(Q @ nc, nu, atol=1e-9)
                assert np.allclose(sign * det * Q @ bc, bu, atol=1e-9)
        # normal transport under isometries of the ambient space
        for g in random_isometries(80, 3):
            moved = CanalSurface(apply_isometry(g, S.spine), S.radius)
            Q = floats(g.Q)
            for t, s in samples:
                assert np.allclose(Q @ normals(S, t, s), normals(moved, t, g.det_sign * s), atol=1e-9)
        # curvature and torsion are covariant under reparametrization
        c = crunode()
        k2, tau = kappa_sq(c), torsion(c)
        maps = 0
        while maps < 20:
            a, b, cc, dd = (rng.randint(-4, 4) for _ in range(4))
            if a * dd - b * cc == 0:
                continue
            phi = Moebius(a, b, cc, dd)
            cp = compose_curve(c, phi)
            assert kappa_sq(cp) == k2.compose(phi.as_ratfunc())
            assert torsion(cp) == tau.compose(phi.as_ratfunc())
            maps += 1


def test_criterion_09_equivariance():
    with criterion(9, "equivariance: conjugating the input by an exact isometry conjugates the symmetry set exactly"):
        for g in random_isometries(9, 4):
            conj = lambda fs: {g.compose(f).compose(g.inverse()) for f in fs}
            for S in (crunode_surface(), pinched_cubic(), negative_control()):
                base = sym_canal(S).isometries
                moved = sym_canal(CanalSurface(apply_isometry(g, S.spine), S.radius)).isometries
                assert len(moved) == len(base) and set(moved) == conj(base)
            for kind, params in (("II", dict(a=5, b=4, f=3, c=0)), ("III", dict(g=1, c=0)), ("III", dict(g=2, c=Fraction(1, 3)))):
                d = DupinCyclide.canonical(kind, **params)
                base = dupin_symmetries(d).isometries
                moved = dupin_symmetries(d.transformed(g)).isometries
                assert len(moved) == len(base) and set(moved) == conj(base)
            fam = dupin_symmetries(DupinCyclide.canonical("I", a=2, c=1).transformed(g)).continuous_family
            assert fam.axis_point == g((0, 0, 0))
            assert fam.axis_direction in (g.linear((0, 0, 1)), g.linear((0, 0, -1)))


def test_criterion_10_negative_control():
    with criterion(10, "negative control: asymmetric radius on the crunode spine leaves only the identity"):
        S = negative_control()
        rep = sym_canal(S)
        assert len(rep) == 1 and rep.symmetries[0].isometry == IDENTITY
        # independent search over the bilinear factors of R found by sympy
        R = sym_bipoly(radius_condition_poly(S.radius, S.radius))
        bilinear = []
        for factor, _ in sp.factor_list(R, T, U)[1]:
            poly = sp.Poly(factor, T, U)
            if poly.degree(T) == 1 and poly.degree(U) == 1 and poly.total_degree() <= 2:
                # factor = u (g t + d) - (a t + b)
                coeffs = {m: poly.coeff_monomial(m) for m in (T * U, U, T, 1)}
                g_, d_ = coeffs[T * U], coeffs[U]
                a_, b_ = -coeffs[T], -coeffs[1]
                if a_ * d_ - b_ * g_ != 0:
                    bilinear.append(Moebius(*(Fraction(int(sp.fraction(x)[0]), int(sp.fraction(x)[1])) for x in (a_, b_, g_, d_))))
        assert Moebius.identity() in bilinear
        survivors = []
        for phi in bilinear:
            f = isometry_from_moebius(S.spine, S.spine, phi)
            if f is not None and verify_conjugation(f, S.spine, S.spine, phi):
                survivors.append(phi)
        assert survivors == [Moebius.identity()]
