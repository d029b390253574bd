import json

from arcalg.cli import main
from arcalg.arc_algebra import StructureTable, structure_table
from arcalg.diagrams import Shape


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--k", "2")
    assert code == 0
    assert out.splitlines() == ["^^vv", "^v^v", "v^^v", "^vv^", "v^v^", "vv^^"]


def test_enumerate_standard(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "5", "--k", "2", "--standard")
    assert code == 0
    assert len(out.splitlines()) == 5


def test_fixedpoints_count(capsys):
    code, out, _ = run(capsys, "fixedpoints", "--n", "4", "--k", "2",
                       "--a", "v^v^", "--b", "vv^^")
    assert code == 0
    assert out.splitlines()[0] == "count 2"


def test_multiply_paper_example(capsys):
    code, out, _ = run(capsys, "multiply", "--alpha", "-1",
                       "--left", "vv^^,v^v^", "--right", "v^v^,vv^^")
    assert code == 0
    assert "x-form: x1 - x2" in out


def test_multiply_json(capsys):
    code, out, _ = run(capsys, "multiply", "--format", "json",
                       "--left", "vv^^,v^v^", "--right", "v^v^,vv^^")
    data = json.loads(out)
    assert data["x_form"] == "x1 + x2"
    assert all(t["src"] == "vv^^" and t["tgt"] == "vv^^" for t in data["terms"])


def test_cup_and_glue(capsys):
    code, out, _ = run(capsys, "cup", "--weight", "vv^^")
    assert code == 0 and "m(vv^^):" in out
    code, out, _ = run(capsys, "glue", "--a", "^v^v", "--b", "vv^^",
                       "--format", "json")
    data = json.loads(out)
    assert data["circles"] == 1


def test_cohomology_pair(capsys):
    code, out, _ = run(capsys, "cohomology", "--a", "v^v^", "--b", "vv^^",
                       "--format", "json")
    data = json.loads(out)
    assert data["generators"] == [1] and data["dim"] == 2
    code, out, _ = run(capsys, "cohomology", "--a", "^^vv", "--b", "v^^v")
    assert "EMPTY" in out


def test_validation_error_exit_code(capsys):
    code, _, err = run(capsys, "fixedpoints", "--n", "4", "--k", "2",
                       "--a", "vxv^", "--b", "vv^^")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "multiply", "--left", "v^,^v", "--right", "v^,^v")
    assert code == 1  # shape mismatch in composition


def test_check_failure_exit_code(capsys):
    code, out, _ = run(capsys, "check", "--n", "4", "--k", "2",
                       "--alpha", "-1", "--which", "assoc")
    assert code == 2
    assert "FAIL" in out and "witness" in out


def test_check_pass(capsys):
    code, out, _ = run(capsys, "check", "--n", "2", "--k", "1", "--which", "all")
    assert code == 0
    assert out.count("PASS") == 4


def test_k0_csv(capsys):
    code, out, _ = run(capsys, "k0", "--n", "2", "--k", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == ",^v,v^"


def test_table_json_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--n", "4", "--k", "2", "--format", "json")
    assert code == 0
    again = StructureTable.from_json(out)
    direct = structure_table(Shape(4, 2), alpha=1)
    assert again.basis == direct.basis
    assert again.products == direct.products


def test_deterministic_output(capsys, tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    for f in (f1, f2):
        code = main(["table", "--n", "4", "--k", "2", "--alpha", "-1",
                     "--format", "json", "--out", str(f)])
        assert code == 0
    assert f1.read_bytes() == f2.read_bytes()
