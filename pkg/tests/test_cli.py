import json

import pytest

from quiverorbits.cli import main, poly_from_json
from quiverorbits.laurent import LaurentPoly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_orbits_a2(capsys):
    code, out, _ = run(capsys, "orbits", "--type", "A", "--rank", "2", "--arrows", "1>2", "--dim", "1,1")
    assert code == 0
    rep = json.loads(out)
    assert len(rep["orbits"]) == 2
    assert all(o["smooth"] for o in rep["orbits"])
    assert sorted(o["chi"] for o in rep["orbits"]) == ["0/1", "1/1"]


def test_orbits_a3_one_non_smooth(capsys):
    code, out, _ = run(capsys, "orbits", "--type", "A", "--rank", "3", "--arrows", "1>2,2>3",
                       "--dim", "1,2,1")
    rep = json.loads(out)
    assert code == 0
    assert [o["c"] for o in rep["orbits"] if not o["smooth"]] == [[0, 1, 0, 0, 1, 0]]


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "orbits", "--type", "A", "--rank", "3", "--dim", "1,2,1")
    rep = json.loads(out)
    assert json.loads(json.dumps(rep)) == rep
    polys = [poly_from_json(o["point_count"]) for o in rep["orbits"]]
    assert LaurentPoly({3: 1, 2: 1, 1: 1, 0: 1}) in polys
    for o, p in zip(rep["orbits"], polys):
        assert [[k, c] for k, c in p.to_pairs()] == o["point_count"]


def test_empty_dimension_vector(capsys):
    _, out, _ = run(capsys, "orbits", "--type", "A", "--rank", "2", "--dim", "0,0")
    assert len(json.loads(out)["orbits"]) == 1


def test_poset_dot(capsys):
    code, out, _ = run(capsys, "poset", "--type", "A", "--rank", "3", "--dim", "1,1,1")
    assert code == 0
    assert out.count("[label=") == 4 and out.count("->") == 4
    _, again, _ = run(capsys, "poset", "--type", "A", "--rank", "3", "--dim", "1,1,1")
    assert out == again
    _, out, _ = run(capsys, "poset", "--type", "A", "--rank", "2", "--dim", "1,1")
    assert out.count("[label=") == 2 and out.count("->") == 1
    assert '"0,1,0 | 1 | smooth"' in out
    _, out, _ = run(capsys, "poset", "--type", "A", "--rank", "1", "--dim", "2")
    assert out.count("[label=") == 1 and out.count("->") == 0


def test_verify_main_a2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "main", "--type", "A", "--rank", "2", "--dim", "1,1")
    assert code == 0
    rep = json.loads(out)
    checks = rep["suites"][0]["checks"]
    assert len(checks) == 1 and checks[0]["D"] == "-2/1"


def test_verify_geometric_and_vacuous(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "geometric", "--type", "A", "--rank", "3",
                       "--dim", "1,1,1")
    assert code == 0 and json.loads(out)["passed"]
    code, _, _ = run(capsys, "verify", "--suite", "all", "--type", "A", "--rank", "1", "--dim", "3")
    assert code == 0


def test_verify_all_d4(capsys):
    code, out, _ = run(capsys, "verify", "--type", "D", "--rank", "4", "--dim", "1,1,1,1",
                       "--format", "table")
    assert code == 0
    assert "0 failed" in out


def test_guard_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "main", "--type", "A", "--rank", "2",
                       "--dim", "1,1", "--max-dim", "1")
    assert code == 3
    assert json.loads(out)["suites"][0]["checks"][0]["status"] == "guard"


@pytest.mark.parametrize("argv,needle", [
    (["orbits", "--type", "A", "--rank", "3", "--arrows", "1>2,2>x"], "token 2"),
    (["orbits", "--type", "A", "--rank", "3", "--dim", "1,,1"], "position 2"),
    (["orbits", "--type", "Z", "--rank", "3"], ""),
    (["orbits", "--type", "A", "--rank", "3", "--dim", "1,1"], "entries"),
    (["orbits", "--type", "A", "--rank", "2", "--format", "dot"], "poset"),
    (["orbits", "--type", "A", "--rank", "2", "--primes", "2,3,5"], "primes"),
])
def test_usage_errors(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert needle in err


def test_omega_and_ops(capsys):
    code, out, _ = run(capsys, "omega", "--type", "A", "--rank", "2", "--dim", "1,1",
                       "--cprime", "1,0,1", "--c", "0,1,0")
    rep = json.loads(out)
    assert code == 0 and rep["dv_at_1"] == "-2/1" and rep["value_at_1"] == "0/1"
    code, out, _ = run(capsys, "ops", "--type", "D", "--rank", "4")
    vals = {o["e_value"] for o in json.loads(out)["ops"]}
    assert vals == {"1/1", "-1/1"}


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "job.ini"
    cfg.write_text("[job]\ntype = A\nrank = 3\narrows = 1>2,2>3\ndim = 1,2,1\nformat = table\n")
    code, out, _ = run(capsys, "orbits", "--config", str(cfg))
    assert code == 0 and "orbits = 5" in out
    # command-line flags override the file
    code, out, _ = run(capsys, "orbits", "--config", str(cfg), "--dim", "1,1,1")
    assert "orbits = 4" in out
    bad = tmp_path / "bad.ini"
    bad.write_text("[job]\ncolour = blue\n")
    code, _, err = run(capsys, "orbits", "--config", str(bad))
    assert code == 2 and "colour" in err
