import pytest

from gatsp.bench import read_csv
from gatsp.cli import main
from gatsp.tsp import berlin52_path

SQUARE = """NAME: square
DIMENSION: 4
EDGE_WEIGHT_TYPE: EUC_2D
NODE_COORD_SECTION
1 0 0
2 0 1
3 1 1
4 1 0
EOF
"""


@pytest.fixture
def square_file(tmp_path):
    p = tmp_path / "square.tsp"
    p.write_text(SQUARE)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exact_square(capsys, square_file):
    code, out, _ = run(capsys, "exact", "--instance", square_file)
    assert code == 0
    assert "cost: 4\n" in out
    code, out, _ = run(capsys, "exact", "--instance", square_file, "--method", "held-karp")
    assert code == 0 and "cost: 4\n" in out


def test_exact_too_large(capsys):
    code, _, err = run(capsys, "exact", "--instance", str(berlin52_path()))
    assert code == 1 and "n=52" in err


def test_info_berlin52(capsys):
    code, out, _ = run(capsys, "info", "--instance", str(berlin52_path()))
    assert code == 0
    assert "n=52" in out
    assert "tour_space_size" not in out


def test_info_small(capsys, square_file):
    code, out, _ = run(capsys, "info", "--instance", square_file)
    assert code == 0 and "tour_space_size: 3" in out


def test_solve_deterministic(capsys, square_file):
    argv = ("solve", "--instance", "berlin52", "--generations", "20", "--pop-size", "20",
            "--seed", "7")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first == second
    assert "best_cost: " in first[1]
    tour = first[1].split("tour: ")[1].split()
    assert sorted(map(int, tour)) == list(range(1, 53))


def test_solve_with_config_file(capsys, tmp_path, square_file):
    cfg = tmp_path / "ga.cfg"
    cfg.write_text("pop_size=6\ngenerations=3\nmutation=cim\n")
    code, out, _ = run(capsys, "solve", "--instance", square_file, "--config", str(cfg),
                       "--metric", "real")
    assert code == 0
    assert "mutation=cim" in out and "pop_size=6" in out
    assert "best_cost: 4.000000" in out


def test_usage_errors(capsys, square_file):
    code, _, err = run(capsys, "solve", "--instance", square_file, "--bogus")
    assert code == 1 and "usage" in err
    assert run(capsys)[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_config_errors(capsys, square_file):
    assert run(capsys, "solve", "--instance", square_file, "--px", "2")[0] == 1
    assert run(capsys, "solve", "--instance", square_file, "--pop-size", "1")[0] == 1


def test_io_and_parse_errors(capsys, tmp_path):
    assert run(capsys, "info", "--instance", str(tmp_path / "nope.tsp"))[0] == 2
    bad = tmp_path / "bad.tsp"
    bad.write_text("NAME: b\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n")
    code, _, err = run(capsys, "info", "--instance", str(bad))
    assert code == 2 and "line" in err


def test_sweep_writes_csv(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    argv = ("sweep", "--instance", "berlin52", "--mutations", "rsm,twors", "--px-list", "0.9",
            "--pm-list", "0.1,0.2", "--runs", "2", "--seed", "3", "--pop-size", "10",
            "--generations", "5", "--out", str(out))
    code, stdout, _ = run(capsys, *argv)
    assert code == 0
    stats = read_csv(out)
    assert len(stats) == 4 and all(s.runs == 2 and s.best >= 7542 for s in stats)
    first = out.read_bytes()
    run(capsys, *argv)
    assert out.read_bytes() == first


def test_sweep_spec_file(capsys, tmp_path):
    spec = tmp_path / "spec.txt"
    spec.write_text(f"instance={berlin52_path()}\nmutations=psm\nruns=2\npop_size=8\n"
                    "generations=2\n")
    out = tmp_path / "o.csv"
    code, _, _ = run(capsys, "sweep", "--spec", str(spec), "--out", str(out))
    assert code == 0
    assert [s.operator for s in read_csv(out)] == ["psm"]


def test_sweep_empty_operators(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--instance", "berlin52", "--mutations", ",",
                       "--out", str(tmp_path / "x.csv"))
    assert code == 1
