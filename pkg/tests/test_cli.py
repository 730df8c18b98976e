import json
import subprocess
import sys

import pytest

from fvoa import checks
from fvoa.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_single_check(capsys):
    code, out, err = run(capsys, "verify", "--filter", "codes.lid")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1
    assert rep["passed"] == 1 and rep["failed"] == 0
    (rec,) = rep["records"]
    assert rec["id"] == "codes.lid" and rec["status"] == "pass" and rec["computed"] == 37
    assert set(rec) == {"id", "paper_anchor", "status", "computed", "expected"}
    assert "PASS codes.lid" in err


def test_verify_count(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "lie.count56")
    rec = json.loads(out)["records"][0]
    assert code == 0 and rec["computed"] == 56


def test_verify_writes_file_and_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["verify", "--filter", "quad", "--out", str(p)]) == 0
    capsys.readouterr()
    a, b = (json.loads(p.read_text()) for p in paths)
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b
    ids = [r["id"] for r in a["records"]]
    assert ids == sorted(ids)


def test_report_order_independent_of_threads():
    one = checks.run_checks("lattice", threads=1)
    many = checks.run_checks("lattice", threads=4)
    assert [r.to_dict() for r in one] == [r.to_dict() for r in many]


def test_registry_is_enumerable():
    ids = checks.check_ids()
    assert len(ids) == len(set(ids)) >= 60
    assert all(i.split(".")[0] in {"codes", "quad", "mod", "lattice", "lie"} for i in ids)


def test_failing_check_sets_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(checks.REGISTRY, "zz.fail", checks.Check("zz.fail", "always fails", lambda: (1, 2)))
    code, out, _ = run(capsys, "verify", "--filter", "zz.")
    assert code == 1 and json.loads(out)["failed"] == 1


def test_crashing_check_is_a_failure():
    def boom():
        raise RuntimeError("no")

    rec = checks.Check("x", "", boom).run()
    assert rec.status == "fail" and "RuntimeError" in rec.computed


def test_unknown_filter_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--filter", "nothing.here")
    assert code == 2 and "no check id" in err


@pytest.mark.parametrize("name,needle", [
    ("Dex", "length 48, dim 9"),
    ("S(5,2,0)", "dim 15, maximal True"),
    ("A15D9", "weight1_dim 408"),
    ("V[1,0,0,0,0,0,0,0]+", "weight dims (0, 1/2, 1) [0, 0, 8]"),
    ("C8F4^2", "dim 240"),
])
def test_describe(capsys, name, needle):
    code, out, _ = run(capsys, "describe", name)
    assert code == 0 and needle in out


def test_describe_triply_even_and_cond2(capsys):
    _, out, _ = run(capsys, "describe", "Dex")
    assert "triply even True" in out
    _, out, _ = run(capsys, "describe", "S(5,2,0)")
    assert "condition (2) False" in out


def test_describe_unknown(capsys):
    code, _, err = run(capsys, "describe", "Nonsense")
    assert code == 2 and "Codes:" in err and "Lattices:" in err


def test_bad_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv,key,value", [
    (["code", "qd", "Dex"], "dim_qd", 37),
    (["code", "uniqueness", "D[8]"], "satisfied", True),
    (["code", "predicates", "RM14"], "is_triply_even", True),
    (["qspace", "profile", "T540"], "epsilon", "minus"),
    (["qspace", "cond2", "Flag"], "holds", True),
    (["modspace", "dims", "V[0,0,0,0,0,0,0,0]-"], "q", 0),
])
def test_module_commands(capsys, argv, key, value):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)[key] == value


def test_code_enum_and_show(capsys):
    _, out, _ = run(capsys, "code", "enum", "RM14")
    assert json.loads(out) == {"0": 1, "8": 30, "16": 1}
    _, out, _ = run(capsys, "code", "show", "RM14")
    assert out.startswith("code n=16 dim=5 name=RM14")


def test_qspace_list(capsys):
    code, out, _ = run(capsys, "qspace", "list")
    assert code == 0 and len(out.split()) == 15 and "S(5,3,0,-)" in out.split()


@pytest.mark.parametrize("argv", [
    ["lattice", "verify", "A15D9"], ["lattice", "verify", "A7A7D5D5"], ["lattice", "weyl-d5"], ["lattice", "disc-action"],
])
def test_lattice_records(capsys, argv):
    code, out, _ = run(capsys, *argv)
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "pass"


def test_lattice_unknown(capsys):
    code, _, _ = run(capsys, "lattice", "verify", "A24")
    assert code == 2


def test_lie_commands(capsys):
    code, out, _ = run(capsys, "lie", "dim", "C_{8,1}")
    assert code == 0 and out.strip() == "136"
    code, out, _ = run(capsys, "lie", "checks")
    rows = json.loads(out)
    assert code == 0 and all(r["status"] == "pass" for r in rows)
    code, _, _ = run(capsys, "lie", "dim", "Q7")
    assert code == 2


def test_modspace_appendix(capsys):
    code, out, _ = run(capsys, "modspace", "appendix")
    reps = json.loads(out)
    assert code == 0 and [r["total"] for r in reps] == [41, 41]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "fvoa", "verify", "--filter", "lie.dim.C8"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["passed"] >= 1
