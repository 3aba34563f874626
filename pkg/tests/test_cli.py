import os
from pathlib import Path

import pytest

from zombies import graph as gc
from zombies.cli import main

GOLDEN = Path(__file__).parent / "golden" / "cli"
REGEN = os.environ.get("ZOMBIES_REGEN_GOLDEN") == "1"

CASES = {
    "gen_cycle3": ["gen", "--family", "cycle", "--n", "3"],
    "gen_petal1": ["gen", "--family", "petal", "--k", "1"],
    "gen_pendant": ["gen", "--family", "pendant", "--base", "c3", "--attach", "0,1"],
    "gen_subdivide": ["gen", "--family", "subdivide-keep", "--base", "c3", "--k", "1"],
    "export_c4": ["export", "c4"],
    "info_q3": ["info", "q3"],
    "info_petal2": ["info", "petal2"],
    "solve_q3_min": ["solve", "q3", "--min"],
    "solve_c4_cop": ["solve", "c4", "--pursuer", "cop", "--min"],
    "solve_petal2_k1": ["solve", "petal2", "--k", "1"],
    "solve_c5_tsv": ["solve", "c5", "--k", "2", "--tsv"],
    "solve_late": ["solve", "c6", "--min", "--turn-order", "survivor_first"],
    "verify_thm1": ["verify", "--thm1", "c3", "c3"],
    "verify_thm2": ["verify", "--thm2", "2"],
    "verify_thm2_offset1": ["verify", "--thm2", "2", "--start-offset", "1"],
    "simulate_c5": ["simulate", "c5", "--k", "2"],
    "simulate_petal2": ["simulate", "petal2", "--k", "1", "--survivor", "petal", "--max-rounds", "20"],
}

EXIT = {"verify_thm2_offset1": 1}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code = main(CASES[name])
    out = capsys.readouterr().out
    path = GOLDEN / f"{name}.txt"
    if REGEN:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(out)
    assert code == EXIT.get(name, 0)
    assert out == path.read_text()


def test_header_and_timing(capsys):
    main(["solve", "q3", "--min"])
    cap = capsys.readouterr()
    assert cap.out.startswith("# zombies solve q3 --min\n")
    assert "z = 2" in cap.out
    assert cap.err.startswith("time: ")


def test_threads_do_not_change_output(capsys):
    main(["solve", "c6", "--min"])
    one = capsys.readouterr().out
    main(["solve", "c6", "--min", "--threads", "8"])
    eight = capsys.readouterr().out
    assert one.splitlines()[1:] == eight.splitlines()[1:]


def test_gen_petal2_vertex_count(capsys):
    main(["gen", "--family", "petal", "--k", "2"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "33 36"


def test_product_file_round_trip(tmp_path, capsys):
    p2 = tmp_path / "p2.el"
    assert main(["gen", "--family", "path", "--n", "2", "-o", str(p2)]) == 0
    out = tmp_path / "c4.el"
    assert main(["product", str(p2), str(p2), "-o", str(out)]) == 0
    c4 = gc.from_edge_list(out.read_text())
    assert c4.n == 4 and all(c4.degree(v) == 2 for v in range(4))
    capsys.readouterr()
    assert main(["solve", str(out), "--pursuer", "cop", "--min"]) == 0
    assert "c = 2" in capsys.readouterr().out


def test_simulate_output_replays(tmp_path):
    from zombies.strategies import replay, trace_from_text
    path = tmp_path / "t.txt"
    assert main(["simulate", "q3", "--k", "2", "-o", str(path)]) == 0
    text = "".join(l for l in path.read_text().splitlines(keepends=True) if not l.startswith("# zombies"))
    assert replay(trace_from_text(text), gc.hypercube(3))


@pytest.mark.parametrize("argv", [
    ["solve", "nosuch", "--k", "1"],
    ["solve", "c3"],
    ["solve", "c3", "--k", "1", "--min"],
    ["gen", "--family", "cycle", "--n", "2"],
    ["gen", "--family", "hypercube", "--n", "0"],
    ["verify", "--thm2", "0"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_bad_edge_list_file(tmp_path, capsys):
    bad = tmp_path / "bad.el"
    bad.write_text("3 1\n0 7\n")
    assert main(["info", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_budget_exit_code(capsys):
    assert main(["solve", "q4", "--k", "3", "--budget", "10"]) == 3
    assert "budget" in capsys.readouterr().err


def test_budget_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ZP_MEM_BUDGET", "100")
    assert main(["solve", "q3", "--min"]) == 3
