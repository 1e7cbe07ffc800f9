import json
import shutil
import subprocess
from pathlib import Path

import pytest

from matcat.cli import main
from matcat.io import builtin_workspace, dumps, sequence_to_json
from matcat.algebra import type_A
from matcat.modules import almost_split_sequence, direct_sum, simple

DEMOS = Path(__file__).resolve().parent.parent / "demos"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def a2(tmp_path):
    p = tmp_path / "a2.json"
    p.write_text(dumps(builtin_workspace("a2")))
    return str(p)


def test_tau_of_S1(capsys, a2):
    code, out, _ = run(capsys, "tau", "-w", a2, "-m", "S1")
    assert code == 0
    assert out.strip() == "tau(S1): dims {1: 0, 2: 1}"
    code, out, _ = run(capsys, "tau", "-w", a2, "-m", "S1", "--json")
    assert json.loads(out)["module"]["dims"] == {"1": 0, "2": 1}


def test_maps_algebra_counts(capsys, a2):
    code, out, _ = run(capsys, "maps-algebra", "-w", a2)
    assert code == 0
    data = json.loads(out)
    assert len(data["quiver"]["vertices"]) == 4
    assert len(data["quiver"]["arrows"]) == 5
    assert len(data["relations"]) == 2


def test_maps_algebra_output_reparses(capsys, a2, tmp_path):
    _, out, _ = run(capsys, "maps-algebra", "-w", a2)
    p = tmp_path / "lam.json"
    p.write_text(out)
    code, out2, _ = run(capsys, "maps-algebra", "-w", str(p))
    assert code == 0
    assert len(json.loads(out2)["quiver"]["vertices"]) == 8


def test_verify_ar_split_sequence(capsys, a2, tmp_path):
    A = type_A(2)
    S, inc, pr = direct_sum([simple(A, "2"), simple(A, "1")])
    seq = tmp_path / "split.json"
    seq.write_text(dumps(sequence_to_json(inc[0], pr[1])))
    code, out, _ = run(capsys, "verify-ar", "-w", a2, "--seq", str(seq))
    assert code == 1
    assert "section found" in out


def test_verify_ar_good_sequence(capsys, a2, tmp_path):
    ses = almost_split_sequence(simple(type_A(2), "1"))
    seq = tmp_path / "ar.json"
    seq.write_text(dumps(sequence_to_json(ses.j, ses.p)))
    code, out, _ = run(capsys, "verify-ar", "-w", a2, "--seq", str(seq), "--json")
    assert code == 0 and json.loads(out)["verified"] is True


def test_malformed_json_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "quiver": [\n}')
    code, _, err = run(capsys, "tau", "-w", str(p), "-m", "S1")
    assert code == 2
    assert "line 3, column 1" in err


def test_unknown_reference_exit_2(capsys, a2):
    code, _, err = run(capsys, "tau", "-w", a2, "-m", "S7")
    assert code == 2 and "S7" in err


def test_missing_workspace_file(capsys, tmp_path):
    code, _, err = run(capsys, "tau", "-w", str(tmp_path / "none.json"), "-m", "S1")
    assert code == 2 and "cannot read" in err


def test_bad_subcommand_exit_2(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    ("hom", "-w", "builtin:a3", "-m", "S1", "--to", "S1", "--json"),
    ("tau", "-w", "builtin:a3", "-m", "S2", "--json"),
    ("ar-seq", "-w", "builtin:a3", "-m", "S1", "--variant", "1i", "--json"),
    ("recollement-check", "-w", "builtin:a3", "--objects", "2", "--json"),
])
def test_output_deterministic_and_json(capsys, argv):
    c1, o1, _ = run(capsys, *argv)
    c2, o2, _ = run(capsys, *argv)
    assert c1 == c2 == 0
    assert o1 == o2
    assert dumps(json.loads(o1)) + "\n" == o1


def test_ar_seq_variants_verify(capsys):
    for v in ("1i", "1ii", "2i", "2ii"):
        code, out, _ = run(capsys, "ar-seq", "-w", "builtin:a2", "-m", "S1", "--variant", v, "--verify")
        assert code == 0 and "almost split: verified" in out


def test_maps_tau(capsys):
    code, out, _ = run(capsys, "maps-tau", "-w", str(DEMOS / "a2.json"), "-m", "P1_onto_S1", "--json")
    assert code == 0
    assert "maps_object" in json.loads(out)


def test_recollement_corruption_exit_1(capsys):
    code, out, _ = run(capsys, "recollement-check", "-w", "builtin:a2", "--objects", "2", "--corrupt", "(i^*, i_*)")
    assert code == 1 and "FAIL" in out
    code, _, err = run(capsys, "recollement-check", "-w", "builtin:a2", "--objects", "9")
    assert code == 2 and "'9'" in err


def test_approx_commands(capsys):
    ws = str(DEMOS / "a2.json")
    assert run(capsys, "approx", "-w", ws, "-m", "S1", "--gens", "projectives")[0] == 0
    assert run(capsys, "approx", "-w", ws, "-m", "zero_to_S1", "--kind", "epi", "--direction", "left")[0] == 0
    code, out, _ = run(capsys, "approx", "-w", ws, "-m", "S1", "--kind", "comma", "--direction", "left",
                       "--over", "S1", "--gens", "projectives", "--x-gens", "injectives", "--json")
    assert code == 0 and json.loads(out)["certified"]


def test_field_flag(capsys):
    code, out, _ = run(capsys, "tau", "-w", "builtin:a3", "-m", "S1", "--field", "Fp:3")
    assert code == 0 and "{1: 0, 2: 1, 3: 0}" in out


def test_selftest_corrupted_names_failures(capsys):
    code, out, _ = run(capsys, "selftest", "--corrupt", "--only", "9,10", "--json")
    assert code == 1
    data = json.loads(out)
    assert [c["criterion"] for c in data["criteria"] if not c["passed"]] == [9, 10]
    assert all(c["detail"] for c in data["criteria"])


def test_selftest_subset_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1,5")
    assert code == 0
    assert "criterion  1 PASS" in out and "criterion  5 PASS" in out


@pytest.mark.skipif(shutil.which("matcat") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["matcat", "tau", "-w", "builtin:a2", "-m", "S1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "tau(S1): dims {1: 0, 2: 1}"
