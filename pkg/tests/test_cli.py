import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from canalsym.canal import verify_conjugation
from canalsym.cli import parse_canal, parse_ratfunc, parse_report_symmetry, reverify_report, run
from canalsym.moebius import Moebius

from conftest import rf

SPECS = Path(__file__).resolve().parent.parent / "specs"


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def write_spec(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return path


class TestSymmetriesCommand:
    def test_text_report(self):
        code, out, _ = invoke("symmetries", SPECS / "crunode.json")
        assert code == 0
        assert out.splitlines()[0] == "4 symmetries, group Z2^2"
        assert "Q = [[0, 0, -1], [0, 1, 0], [-1, 0, 0]]" in out
        assert "half-turn" in out

    def test_json_round_trip(self):
        code, out, _ = invoke("symmetries", SPECS / "crunode.json", "--json")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["symmetries"]) == 4
        assert reverify_report(payload) == [True] * 4
        assert {tuple(f["moebius"]) for f in payload["factors"]} == {
            tuple(m.to_json()) for m in (Moebius(1, 0, 0, 1), Moebius(-1, 0, 0, 1), Moebius(0, 1, 1, 0), Moebius(0, -1, 1, 0))
        }

    def test_round_trip_detects_tampering(self):
        _, out, _ = invoke("symmetries", SPECS / "crunode.json", "--json")
        payload = json.loads(out)
        payload["symmetries"][1]["moebius"] = Moebius.identity().to_json()
        assert reverify_report(payload)[1] is False

    def test_negative_control(self):
        code, out, _ = invoke("symmetries", SPECS / "negative_control.json")
        assert code == 0 and out.startswith("1 symmetries, group trivial")

    def test_linear_spine_is_kernel_error(self, tmp_path):
        spec = write_spec(tmp_path, {"kind": "canal", "spine": [["0"], ["0"], ["1", "-2"]], "radius": "1/2"})
        code, _, err = invoke("symmetries", spec)
        assert code == 3 and "LinearSpine" in err

    def test_wrong_kind(self):
        code, _, err = invoke("symmetries", SPECS / "typeIII_c0.json")
        assert code == 2 and "kind" in err


class TestDupinCommand:
    def test_type_iii(self):
        code, out, _ = invoke("dupin", SPECS / "typeIII_c0.json")
        assert code == 0
        assert out.splitlines()[0] == "Type III, super-symmetric, group D4, 8 symmetries"

    def test_type_ii(self):
        code, out, _ = invoke("dupin", SPECS / "typeII_c0.json")
        assert out.splitlines()[0] == "Type II, super-symmetric, group Z2^3, 8 symmetries"

    def test_torus(self):
        code, out, _ = invoke("dupin", SPECS / "torus.json", "--json")
        payload = json.loads(out)
        assert payload["group"] == "Z2^2 x S1"
        assert payload["continuous_family"]["axis_direction"] in (["0", "0", "1"], ["0", "0", "-1"])

    def test_json_reverifies_on_both_spines(self):
        _, out, _ = invoke("dupin", SPECS / "typeIII_c0.json", "--json")
        payload = json.loads(out)
        pairs = [parse_canal(p, "pair") for p in payload["pairs"]]
        for entry in payload["symmetries"]:
            f, phi1 = parse_report_symmetry(entry)
            _, phi2 = parse_report_symmetry({"isometry": entry["isometry"], "moebius": entry["moebius2"]})
            first, second = (pairs[1], pairs[0]) if entry["swaps_spines"] else (pairs[0], pairs[1])
            assert verify_conjugation(f, pairs[0].spine, first.spine, phi1)
            assert verify_conjugation(f, pairs[1].spine, second.spine, phi2)

    def test_invalid_params(self, tmp_path):
        spec = write_spec(tmp_path, {"kind": "dupin", "canonical": {"type": "III", "g": "0", "c": "1"}})
        code, _, err = invoke("dupin", spec)
        assert code == 2 and "canonical" in err

    def test_non_cyclide_pair(self, tmp_path):
        curve = [["-1", "2"], ["1", "-4", "4"], ["-1", "6", "-12", "8"]]
        spec = write_spec(tmp_path, {"kind": "dupin", "pair1": {"spine": curve, "radius": "1"}, "pair2": {"spine": curve, "radius": "1"}})
        code, _, err = invoke("dupin", spec)
        assert code == 3


class TestBlendCommand:
    def test_cylinders(self, tmp_path):
        target = tmp_path / "blend.json"
        code, out, _ = invoke("blend", SPECS / "cylinders.json", "-o", target)
        assert code == 0
        doc = json.loads(target.read_text())
        r = parse_ratfunc(doc["radius"])
        assert r == rf((Fraction(1, 2), 0, Fraction(-3, 4), Fraction(1, 2)))
        assert doc["control_points"] == [["0", "0", "1"], ["0", "0", "1/3"], ["0", "1/3", "0"], ["0", "1", "0"]]

    def test_output_is_a_canal_spec(self, tmp_path):
        target = tmp_path / "patch.json"
        assert invoke("blend", SPECS / "twisted_cubic_patch.json", "-o", target)[0] == 0
        code, out, _ = invoke("symmetries", target)
        assert code == 0 and out.startswith("2 symmetries")

    def test_planar_patch_keeps_plane_reflection(self, tmp_path):
        target = tmp_path / "patch.json"
        assert invoke("blend", SPECS / "cylinders.json", "-o", target)[0] == 0
        code, out, _ = invoke("symmetries", target)
        assert code == 0 and out.startswith("2 symmetries, group Z2")
        assert "Q = [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]" in out

    def test_continuity_flag(self):
        code, out, _ = invoke("blend", SPECS / "cylinders.json", "--continuity", "2")
        doc = json.loads(out)
        assert doc["continuity"] == 2 and len(doc["control_points"]) == 6

    def test_incompatible_symmetry(self, tmp_path):
        doc = json.loads((SPECS / "twisted_cubic_patch.json").read_text())
        doc["symmetry"]["Q"] = [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]]
        code, _, err = invoke("blend", write_spec(tmp_path, doc))
        assert code == 3 and "SymmetryIncompatible" in err

    def test_bad_continuity(self, tmp_path):
        doc = json.loads((SPECS / "cylinders.json").read_text())
        doc["N"] = 7
        code, _, err = invoke("blend", write_spec(tmp_path, doc))
        assert code == 2 and "N" in err


class TestMeshCommand:
    def test_writes_obj(self, tmp_path):
        target = tmp_path / "crunode.obj"
        code, out, _ = invoke("mesh", SPECS / "crunode.json", "-o", target, "--grid", 6, 5, "--window", -2, 2)
        assert code == 0
        lines = target.read_text().splitlines()
        assert sum(l.startswith("v ") for l in lines) == 30
        assert sum(l.startswith("f ") for l in lines) == 2 * 5 * 5

    def test_needs_output(self):
        code, _, err = invoke("mesh", SPECS / "crunode.json", "--grid", 3, 3)
        assert code == 2 and "-o" in err

    def test_pole_in_window(self, tmp_path):
        spec = write_spec(tmp_path, {"kind": "canal", "spine": [{"num": ["1"], "den": ["0", "1"]}, ["0", "1"], ["0", "0", "1"]], "radius": "1"})
        code, _, err = invoke("mesh", spec, "-o", tmp_path / "x.obj")
        assert code == 3 and "PoleInWindow" in err

    def test_dupin_and_blend_inputs(self, tmp_path):
        assert invoke("mesh", SPECS / "typeII_c0.json", "-o", tmp_path / "a.obj", "--grid", 4, 4)[0] == 0
        assert invoke("mesh", SPECS / "cylinders.json", "-o", tmp_path / "b.obj", "--grid", 4, 4)[0] == 0


class TestDiagnostics:
    @pytest.mark.parametrize(
        "doc, field",
        [
            ({"kind": "canal", "radius": "1"}, "spine"),
            ({"kind": "canal", "spine": [["0", "1"], ["0"]], "radius": "1"}, "spine"),
            ({"kind": "canal", "spine": [["0", "1"], ["0", "x"], ["1"]], "radius": "1"}, "spine[1][1]"),
            ({"kind": "canal", "spine": [["0", "1"], ["0", "0", "1"], ["1"]], "radius": {"num": ["1"], "den": ["0"]}}, "radius.den"),
            ({"kind": "torus"}, "kind"),
            ({"kind": "blend", "surface1": {"spine": [["0"], ["0"], ["1", "1"]], "radius": "1"}, "t1": "0"}, "surface2"),
        ],
    )
    def test_field_named(self, tmp_path, doc, field):
        code, _, err = invoke("symmetries" if doc.get("kind") != "blend" else "blend", write_spec(tmp_path, doc))
        assert code == 2
        assert field in err

    def test_invalid_json(self, tmp_path):
        code, _, err = invoke("symmetries", write_spec(tmp_path, "{not json"))
        assert code == 2 and "JSON" in err

    def test_missing_file(self, tmp_path):
        code, _, err = invoke("symmetries", tmp_path / "absent.json")
        assert code == 2

    def test_non_orthogonal_symmetry(self, tmp_path):
        doc = json.loads((SPECS / "twisted_cubic_patch.json").read_text())
        doc["symmetry"]["Q"] = [["2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
        code, _, err = invoke("blend", write_spec(tmp_path, doc))
        assert code == 2 and "symmetry.Q" in err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "canalsym", "dupin", str(SPECS / "typeIII_c0.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("Type III, super-symmetric, group D4, 8 symmetries")
