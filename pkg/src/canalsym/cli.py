"""Command-line front end.

Surface descriptions are JSON documents.  Rationals are strings ``"p/q"`` (or
integers), polynomials are ascending coefficient arrays, and a rational
function is ``{"num": [...], "den": [...]}`` (a bare array means den = 1).  A
curve is a list of three rational functions.

    {"kind": "canal", "spine": [f, g, h], "radius": r}
    {"kind": "dupin", "pair1": {"spine": ..., "radius": ...}, "pair2": {...}}
    {"kind": "dupin", "canonical": {"type": "III", "g": "1", "c": "0"}}
    {"kind": "blend", "surface1": {...}, "t1": "0", "surface2": {...}, "t2": "1",
     "N": 1, "symmetry": {"Q": [[...], [...], [...]], "b": [...]}}

Exit codes: 0 success, 2 malformed input, 3 kernel precondition failure.
"""

import argparse
import json
import sys

import mpmath

from .blend import hermite_blend, symmetric_blend
from .canal import CanalSurface, sym_canal, verify_conjugation
from .curves import Isometry, SpaceCurve
from .dupin import DupinCyclide, dupin_symmetries, is_super_symmetric
from .errors import CanalSymError
from .mesh import export_obj, sample_surface
from .moebius import Moebius
from .ratpoly import RatFunc, UniPoly, format_rat, is_exact, parse_rat

EXIT_OK, EXIT_SPEC, EXIT_KERNEL = 0, 2, 3


class SpecError(Exception):
    """Malformed input; ``field`` is a dotted path to the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


# --------------------------------------------------------------------------
# parsing


def _rat(value, where):
    try:
        return parse_rat(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(where, f"not a rational number ({exc})") from None


def _poly(value, where):
    if not isinstance(value, list) or not value:
        raise SpecError(where, "expected a non-empty coefficient array")
    return UniPoly([_rat(c, f"{where}[{i}]") for i, c in enumerate(value)])


def parse_ratfunc(value, where="radius"):
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        return RatFunc.constant(_rat(value, where))
    if isinstance(value, list):
        return RatFunc(_poly(value, where))
    if isinstance(value, dict):
        if "num" not in value:
            raise SpecError(f"{where}.num", "missing")
        num = _poly(value["num"], f"{where}.num")
        den = _poly(value.get("den", [1]), f"{where}.den")
        if den.is_zero():
            raise SpecError(f"{where}.den", "zero denominator")
        return RatFunc(num, den)
    raise SpecError(where, "expected a rational, an array or {num, den}")


def parse_curve(value, where="spine"):
    if not isinstance(value, list) or len(value) != 3:
        raise SpecError(where, "expected three component functions")
    comps = [parse_ratfunc(v, f"{where}[{i}]") for i, v in enumerate(value)]
    try:
        return SpaceCurve(*comps)
    except CanalSymError as exc:
        raise SpecError(where, str(exc)) from None


def _field(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise SpecError(f"{where}.{key}" if where else key, "missing")
    return doc[key]


def parse_canal(doc, where=""):
    prefix = f"{where}." if where else ""
    spine = parse_curve(_field(doc, "spine", where), f"{prefix}spine")
    radius = parse_ratfunc(_field(doc, "radius", where), f"{prefix}radius")
    return CanalSurface(spine, radius)


def parse_isometry(doc, where="symmetry"):
    Q = _field(doc, "Q", where)
    if not isinstance(Q, list) or len(Q) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in Q):
        raise SpecError(f"{where}.Q", "expected a 3x3 array")
    Q = [[_rat(x, f"{where}.Q[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(Q)]
    b = doc.get("b", [0, 0, 0])
    if not isinstance(b, list) or len(b) != 3:
        raise SpecError(f"{where}.b", "expected three entries")
    b = [_rat(x, f"{where}.b[{i}]") for i, x in enumerate(b)]
    try:
        return Isometry(Q, b)
    except CanalSymError as exc:
        raise SpecError(f"{where}.Q", str(exc)) from None


def parse_dupin(doc):
    if "canonical" in doc:
        can = doc["canonical"]
        kind = _field(can, "type", "canonical")
        if kind not in ("I", "II", "III"):
            raise SpecError("canonical.type", "expected I, II or III")
        params = {k: _rat(v, f"canonical.{k}") for k, v in can.items() if k != "type"}
        try:
            return DupinCyclide.canonical(kind, **params)
        except CanalSymError as exc:
            raise SpecError("canonical", str(exc)) from None
    pairs = []
    for name in ("pair1", "pair2"):
        S = parse_canal(_field(doc, name, ""), name)
        pairs.append((S.spine, S.radius))
    return DupinCyclide(*pairs)


def load_spec(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecError("<file>", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise SpecError("<file>", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SpecError("<root>", "expected a JSON object")
    kind = doc.get("kind")
    if kind not in ("canal", "dupin", "blend"):
        raise SpecError("kind", "expected canal, dupin or blend")
    return doc


# --------------------------------------------------------------------------
# output helpers


def _scalar(x):
    return format_rat(x) if is_exact(x) else mpmath.nstr(x, 40)


def poly_json(p):
    return [format_rat(c) for c in p.coeffs] or ["0"]


def ratfunc_json(r):
    return {"num": poly_json(r.num), "den": poly_json(r.den)}


def curve_json(c):
    return [ratfunc_json(comp) for comp in c.components]


def symmetry_json(s):
    out = {"isometry": s.isometry.to_json(), "moebius": s.moebius.to_json(), "certainty": s.certainty}
    if s.residual is not None:
        out["residual"] = float(s.residual)
    if s.label:
        out["label"] = s.label
    if s.moebius2 is not None:
        out["moebius2"] = s.moebius2.to_json()
        out["swaps_spines"] = s.swaps_spines
    return out


def _symmetry_lines(symmetries):
    lines = []
    for i, s in enumerate(symmetries, 1):
        f = s.isometry
        tag = f" ({s.label})" if s.label else ""
        phi = str(s.moebius) if s.moebius2 is None else f"{s.moebius}; {s.moebius2}"
        lines.append(f"  [{i}]{tag} {f.kind()}: Q = {f.matrix_str()}, b = {f.vector_str()}, phi = {phi}")
        if s.certainty != "exact":
            lines.append(f"       numeric, residual {float(s.residual or 0):.2e}")
    return lines


# --------------------------------------------------------------------------
# subcommands


def cmd_symmetries(doc, args, out):
    if doc["kind"] != "canal":
        raise SpecError("kind", "symmetries expects a canal spec")
    S = parse_canal(doc)
    report = sym_canal(S)
    if args.json:
        payload = {
            "kind": "canal",
            "surface": {"spine": curve_json(S.spine), "radius": ratfunc_json(S.radius)},
            "group": report.group_label,
            "closed": report.closed,
            "factors": [
                {"moebius": f.moebius.to_json(), "certainty": f.certainty} for f in report.factors
            ],
            "symmetries": [symmetry_json(s) for s in report.symmetries],
        }
        if report.continuous_family is not None:
            payload["continuous_family"] = True
        json.dump(payload, out, indent=2)
        out.write("\n")
        return
    out.write(f"{len(report)} symmetries, group {report.group_label}\n")
    if report.factors:
        out.write("Moebius-like factors: " + ", ".join(str(f.moebius) for f in report.factors) + "\n")
    if report.continuous_family is not None:
        out.write("constant curvature and torsion: continuous symmetry family\n")
    out.write("\n".join(_symmetry_lines(report.symmetries)) + "\n")


def cmd_dupin(doc, args, out):
    if doc["kind"] != "dupin":
        raise SpecError("kind", "dupin expects a dupin spec")
    d = parse_dupin(doc)
    frame = d.frame
    report = dupin_symmetries(d)
    sup = is_super_symmetric(d)
    params = {k: _scalar(v) for k, v in frame.params.items()}
    if args.json:
        payload = {
            "kind": "dupin",
            "type": frame.cyclide_type,
            "super_symmetric": sup,
            "group": report.group_label,
            "params": params,
            "center": [_scalar(x) for x in frame.O],
            "pairs": [
                {"spine": curve_json(c), "radius": ratfunc_json(r)} for c, r in d.pairs
            ],
            "symmetries": [symmetry_json(s) for s in report.symmetries],
        }
        if report.continuous_family is not None:
            fam = report.continuous_family
            payload["continuous_family"] = {
                "axis_point": [_scalar(x) for x in fam.axis_point],
                "axis_direction": [_scalar(x) for x in fam.axis_direction],
                "mirror_plane": {"normal": [_scalar(x) for x in fam.mirror_plane.normal],
                                 "offset": _scalar(fam.mirror_plane.offset)},
            }
        json.dump(payload, out, indent=2)
        out.write("\n")
        return
    flag = "super-symmetric" if sup else "not super-symmetric"
    count = f"{len(report)} symmetries" if report.continuous_family is None else "continuous family"
    out.write(f"Type {frame.cyclide_type}, {flag}, group {report.group_label}, {count}\n")
    out.write("parameters: " + ", ".join(f"{k} = {v}" for k, v in params.items()) + "\n")
    if report.continuous_family is not None:
        fam = report.continuous_family
        out.write(f"axis through {tuple(_scalar(x) for x in fam.axis_point)} along "
                  f"{tuple(_scalar(x) for x in fam.axis_direction)}\n")
    out.write("\n".join(_symmetry_lines(report.symmetries)) + "\n")


def _blend_from_doc(doc, N):
    S1 = parse_canal(_field(doc, "surface1", ""), "surface1")
    S2 = parse_canal(_field(doc, "surface2", ""), "surface2")
    t1 = _rat(_field(doc, "t1", ""), "t1")
    t2 = _rat(_field(doc, "t2", ""), "t2")
    if N is None:
        N = doc.get("N", 1)
    if not isinstance(N, int) or isinstance(N, bool) or not 0 <= N <= 3:
        raise SpecError("N", "expected an integer between 0 and 3")
    if "symmetry" in doc:
        f = parse_isometry(doc["symmetry"])
        return symmetric_blend(S1, t1, S2, t2, f, N), N
    return hermite_blend(S1, t1, S2, t2, N), N


def cmd_blend(doc, args, out):
    if doc["kind"] != "blend":
        raise SpecError("kind", "blend expects a blend spec")
    B, N = _blend_from_doc(doc, args.continuity)
    payload = {
        "kind": "canal",
        "spine": curve_json(B.spine),
        "radius": ratfunc_json(B.radius),
        "window": ["0", "1"],
        "continuity": N,
        "control_points": [[format_rat(x) for x in p] for p in B.spine_bezier.control_points],
        "radius_bernstein": [format_rat(a) for a in B.radius_bezier.coefficients],
    }
    if B.radius_bezier.sign is not None:
        payload["radius_sign"] = B.radius_bezier.sign
    if B.moebius is not None:
        payload["parameter_map"] = B.moebius.to_json()
    text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        out.write(f"blend written to {args.output}: r(t) = {B.radius}\n")
    else:
        out.write(text)


def cmd_mesh(doc, args, out):
    window = args.window
    if doc["kind"] == "canal":
        S = parse_canal(doc)
        if window is None and "window" in doc:
            window = [float(_rat(x, f"window[{i}]")) for i, x in enumerate(doc["window"])]
    elif doc["kind"] == "blend":
        S, _ = _blend_from_doc(doc, args.continuity)
        window = window or (0.0, 1.0)
    else:
        c, r = parse_dupin(doc).pair1
        S = CanalSurface(c, r)
    window = window or (-1.0, 1.0)
    nt, ns = args.grid
    m = sample_surface(S, nt, ns, window)
    if not args.output:
        raise SpecError("-o", "mesh needs an output path")
    export_obj(m, args.output)
    out.write(f"{len(m.vertices)} vertices, {len(m.faces)} faces written to {args.output}\n")


def build_parser():
    p = argparse.ArgumentParser(prog="canalsym", description="Symmetries and blends of rational canal surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("spec", help="JSON surface description")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("-o", "--output", help="output path")
        sp.add_argument("--window", nargs=2, type=float, metavar=("T_LO", "T_HI"))
        sp.add_argument("--grid", nargs=2, type=int, default=(40, 24), metavar=("NT", "NS"))
        sp.add_argument("--continuity", type=int, metavar="N")
        return sp

    add("symmetries", "symmetries of a canal surface with one spine")
    add("dupin", "type and symmetry group of a Dupin cyclide")
    add("blend", "Hermite or symmetric blend between two canal surfaces")
    add("mesh", "triangulate a surface and write OBJ")
    return p


COMMANDS = {"symmetries": cmd_symmetries, "dupin": cmd_dupin, "blend": cmd_blend, "mesh": cmd_mesh}


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        doc = load_spec(args.spec)
        COMMANDS[args.command](doc, args, out)
    except SpecError as exc:
        err.write(f"error in spec: {exc}\n")
        return EXIT_SPEC
    except (CanalSymError, ValueError, ZeroDivisionError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_KERNEL
    return EXIT_OK


def main():
    sys.exit(run())


# for tests: turn a JSON report back into kernel objects
def parse_report_symmetry(entry):
    f = parse_isometry(entry["isometry"], "isometry")
    phi = Moebius(*(_rat(c, "moebius") for c in entry["moebius"]))
    return f, phi


def reverify_report(payload):
    """Re-check every symmetry of a ``symmetries --json`` report exactly."""
    S = parse_canal(payload["surface"], "surface")
    results = []
    for entry in payload["symmetries"]:
        if entry["certainty"] != "exact":
            results.append(None)
            continue
        f, phi = parse_report_symmetry(entry)
        results.append(verify_conjugation(f, S.spine, S.spine, phi))
    return results
