"""Floating-point surface evaluation, tessellation and OBJ export.

Points are ``c(t) + r(t) N(t, s)`` where ``N`` is built from the Frenet frame
of the spine and ``s`` runs over the rational circle chart.  Nothing in the
exact kernel depends on this module.
"""

from dataclasses import dataclass
import io
import math

import numpy as np

from .curves import derivative, frenet_frame
from .errors import DegenerateCircle, PoleInWindow
from .ratpoly import real_roots


def _circle_point(s):
    """``((1 - s^2)/(1 + s^2), 2s/(1 + s^2))``, with ``s = inf`` giving ``(-1, 0)``."""
    if math.isinf(s):
        return -1.0, 0.0
    d = 1.0 + s * s
    return (1.0 - s * s) / d, 2.0 * s / d


def _normal_from_frame(frame, ratio, cs):
    tangent, normal, binormal = frame
    rest = 1.0 - ratio * ratio
    if rest < -1e-12:
        raise DegenerateCircle("sphere family has no real envelope here")
    root = math.sqrt(max(rest, 0.0))
    return -ratio * tangent + root * (cs[0] * normal + cs[1] * binormal)


def _speed_and_slope(S, t):
    d1 = np.array([float(comp.eval_mp(t)) for comp in derivative(S.spine, 1)])
    dr = float(S.radius.derivative().eval_mp(t))
    return np.linalg.norm(d1), dr


def normals(S, t, s):
    """Unit surface normal ``N(t, s)``, satisfying ``<N, c'> = -r'``."""
    frame = frenet_frame(S.spine, t)
    speed, dr = _speed_and_slope(S, t)
    return _normal_from_frame(frame, dr / speed, _circle_point(float(s)))


def surface_point(S, t, s):
    c = np.array([float(comp.eval_mp(t)) for comp in S.spine.components])
    return c + float(S.radius.eval_mp(t)) * normals(S, t, s)


@dataclass
class TriMesh:
    vertices: np.ndarray
    normals: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.normals = np.asarray(self.normals, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        self.validate()

    def validate(self):
        if len(self.normals) != len(self.vertices):
            raise ValueError("normals and vertices differ in length")
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ValueError("face index out of range")
        if len(self.normals) and np.max(np.abs(np.linalg.norm(self.normals, axis=1) - 1)) > 1e-9:
            raise ValueError("normals must be unit vectors")

    @classmethod
    def empty(cls):
        return cls(np.zeros((0, 3)), np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64))


def _check_window(S, lo, hi):
    dens = [comp.den for comp in S.spine.components] + [S.radius.den]
    for den in dens:
        if den.degree <= 0:
            continue
        for root in real_roots(den):
            if root.hi >= lo and root.lo <= hi:
                raise PoleInWindow(f"pole near t = {float(root.midpoint)} inside [{lo}, {hi}]")


def sample_surface(S, nt, ns, window=(-1.0, 1.0)):
    """Grid mesh over ``t`` in the window and a full turn of ``s``.

    The ``s`` samples are ``tan(theta/2)`` for ``theta`` evenly spaced from
    ``-pi``, so the antipodal point ``s = inf`` is included and the tube
    closes.  Vertex order is (t index, s index).
    """
    if nt < 2 or ns < 2:
        raise ValueError("grid needs at least 2 samples in each direction")
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError("window must satisfy t_lo < t_hi")
    _check_window(S, lo, hi)
    thetas = [-math.pi + 2 * math.pi * j / ns for j in range(ns)]
    chart = [(math.cos(th), math.sin(th)) for th in thetas]
    verts, norms = [], []
    for t in np.linspace(lo, hi, nt):
        frame = frenet_frame(S.spine, float(t))
        speed, dr = _speed_and_slope(S, float(t))
        c = np.array([float(comp.eval_mp(float(t))) for comp in S.spine.components])
        r = float(S.radius.eval_mp(float(t)))
        for cs in chart:
            n = _normal_from_frame(frame, dr / speed, cs)
            verts.append(c + r * n)
            norms.append(n / np.linalg.norm(n))
    faces = []
    for i in range(nt - 1):
        for j in range(ns):
            a, b = i * ns + j, i * ns + (j + 1) % ns
            c_, d = a + ns, b + ns
            faces.append((a, b, d))
            faces.append((a, d, c_))
    return TriMesh(np.array(verts), np.array(norms), np.array(faces, dtype=np.int64))


def _write(m, out):
    out.write("# canal surface mesh\n")
    for v in m.vertices:
        out.write("v {:.17g} {:.17g} {:.17g}\n".format(*v))
    for n in m.normals:
        out.write("vn {:.17g} {:.17g} {:.17g}\n".format(*n))
    for f in m.faces:
        a, b, c = (int(i) + 1 for i in f)
        out.write(f"f {a}//{a} {b}//{b} {c}//{c}\n")


def export_obj(m, sink):
    """Write ``m`` as Wavefront OBJ to a path or a text stream."""
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        with open(sink, "w", newline="\n") as fh:
            _write(m, fh)
    else:
        _write(m, sink)


def load_obj(source):
    """Read ``v``, ``vn`` and triangular ``f`` records."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source) as fh:
            text = fh.read()
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        text = source.read()
    verts, norms, faces = [], [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "vn":
            norms.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
    return TriMesh(np.array(verts), np.array(norms), np.array(faces, dtype=np.int64))
