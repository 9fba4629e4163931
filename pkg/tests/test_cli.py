"""CLI surface: golden outputs, exit codes, json mode."""

import json

import pytest

from linkgame.cli import main
from linkgame.construct import whitehead_shadow
from linkgame.diagram import render_pd

DECOMP_WORD = "(1,4,2,1,3,5,3,2,1,2,0,5,2,6,4)"
DECOMP_STARRED = "(1,4,2,1,3*,5,3,2*,1,2,0,5,2*,6,4*)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_word_analyze_decomposition_golden(capsys):
    code, out, _ = run(capsys, "word", "analyze", DECOMP_WORD)
    assert code == 0
    assert DECOMP_STARRED in out


def test_word_analyze_zero(capsys):
    code, out, _ = run(capsys, "word", "analyze", "(0)")
    assert code == 0
    assert "fraction: inf" in out
    assert "splittability: splittable" in out
    assert "crossings: 0" in out


def test_word_analyze_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "word", "analyze", "(2,-3,-2,1)")
    assert code == 0
    data = json.loads(out)
    assert data["fraction"] == "7/12"
    assert data["nsi_count"] == 4 and data["si_count"] == 4
    assert data["splittability"] == "unsplittable"


def test_word_reduce(capsys):
    code, out, _ = run(capsys, "word", "reduce", "(0,4,0,6)")
    assert code == 0
    assert "-> (0)" in out


def test_word_syntax_error_exit_code(capsys):
    code, _, err = run(capsys, "word", "analyze", "(1,,2)")
    assert code == 2
    assert "error:" in err


def test_solve_word_thm2(capsys):
    code, out, _ = run(capsys, "solve", "--word", "(1,1)",
                       "--closure", "numerator", "--first", "unlinker")
    assert code == 0
    assert "second mover (Linker) wins" in out


def test_solve_preset_whitehead_linker_first(capsys):
    code, out, _ = run(capsys, "--format", "json", "solve",
                       "--preset", "whitehead", "--first", "linker")
    assert code == 0
    data = json.loads(out)
    assert data["winning_role"] == "linker"
    assert data["winner"] == "first"


def test_shadow_analyze(tmp_path, capsys):
    pd_file = tmp_path / "whitehead.pd"
    pd_file.write_text(render_pd(whitehead_shadow()))
    code, out, _ = run(capsys, "--format", "json", "shadow", "analyze",
                       "--pd", str(pd_file))
    assert code == 0
    data = json.loads(out)
    assert data["components"] == 2
    assert len(data["nsi"]) == 4 and len(data["si"]) == 1
    assert sorted(len(r) for r in data["twist_regions"]) == [1, 2, 2]


def test_game_replay_worked_game(tmp_path, capsys):
    log = tmp_path / "game.log"
    log.write_text("first unlinker\nm 2 /\nm 0 /\nm 1 \\\nm 3 /\nm 4 \\\n")
    code, out, _ = run(capsys, "game", "replay", "--log", str(log),
                       "--preset", "whitehead")
    assert code == 0
    assert "winner: unlinker" in out


def test_verify_strategy(capsys):
    code, out, _ = run(capsys, "verify", "--word", "(3,1)",
                       "--strategy", "Thm2-second", "--first", "unlinker")
    assert code == 0
    assert "[OK]" in out and "0 losses" in out


def test_verify_all_applicable(capsys):
    code, out, _ = run(capsys, "verify", "--word", "(2,2)",
                       "--first", "linker")
    assert code == 0
    assert "[OK]" in out


def test_sweep_subset(capsys):
    code, out, _ = run(capsys, "sweep", "--only", "1,2")
    assert code == 0
    assert "C01 PASS" in out and "C02 PASS" in out
    assert "SWEEP PASS" in out


def test_missing_input_is_usage_error(capsys):
    code, _, err = run(capsys, "solve")
    assert code == 2
    assert "error" in err
