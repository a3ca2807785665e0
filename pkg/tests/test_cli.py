from __future__ import annotations

import io
import json
import math
import random

import pytest

from robotgame.cli import main
from robotgame.model import RobotGame, description_from_json, game_from_json, member
from robotgame.play import ScriptedAdversary, ScriptedReacher, run_match
from robotgame.reductions import countdown_to_json, CountdownGame, solve_one_player
from robotgame.solver import decide


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_decide_examples(sample_game_file):
    assert run(["decide", sample_game_file, "-3"])[:2] == (0, "WIN\n")
    assert run(["decide", sample_game_file, "-1"])[:2] == (1, "LOSE\n")
    assert run(["decide", sample_game_file, "-1", "--sharp-bound"])[0] == 1


def test_solve_json_round_trip(sample_game_file, sample_game):
    code, out, _ = run(["solve", sample_game_file, "--json"])
    assert code == 0
    desc = description_from_json(out)
    rng = random.Random(1)
    for x in rng.sample(range(-500, 500), 100):
        assert member(desc, x) == (decide(sample_game, x).value == "WIN")


def test_solve_text_and_trace(sample_game_file):
    code, out, _ = run(["solve", sample_game_file, "--trace"])
    assert code == 0
    assert out.splitlines()[0] == "HalfLine(sign=-1, d=1, bound=-1, finite_part={0})"
    assert "step1[0] d'=3 I=[-15, 0] picked=-2" in out
    code, out, _ = run(["solve", sample_game_file, "--trace", "--sharp-bound"])
    assert "step2 half_line Restr^-1_1" in out


def test_solve_plot(sample_game_file, tmp_path):
    png = tmp_path / "win.png"
    code, _, _ = run(["solve", sample_game_file, "--plot", str(png), "--window=-10:10"])
    assert code == 0 and png.read_bytes()[:4] == b"\x89PNG"


def test_oracle(sample_game_file):
    assert run(["oracle", sample_game_file, "-3", "--rounds", "1"])[:2] == (0, "WIN within 1 rounds\n")
    assert run(["oracle", sample_game_file, "-1", "--rounds", "10"])[0] == 1
    assert run(["oracle", sample_game_file, "0", "--rounds", "0", "--reacher-first"])[0] == 0


def test_certify(sample_game_file):
    code, out, _ = run(["certify", sample_game_file, "--samples", "6", "--trials", "3", "--seed", "4"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 7 and lines[-1].startswith("certified")


def test_frobenius():
    code, out, _ = run(["frobenius", "6,10,15"])
    assert code == 0
    rows = dict(line.split("\t", 1) for line in out.strip().splitlines())
    assert rows["gcd"] == "1" and rows["F~"] == "225" and rows["sharp"] == "119"
    p, q = (int(t) for t in rows["pair"].split("\t")[:2])
    assert math.gcd(p, q) == 1
    code, out, _ = run(["frobenius", "3,-5"])
    assert code == 0 and "n/a" in out


def test_gen_subsetsum():
    code, out, _ = run(["gen-subsetsum", "--set", "1,2", "--target", "3"])
    assert code == 0
    data = json.loads(out)
    game, x0 = game_from_json(data)
    assert data["V"] == ["0"] and x0 == 91
    assert solve_one_player(game, x0)


def test_gen_countdown_encoding(tmp_path):
    path = tmp_path / "cd.json"
    path.write_text(json.dumps(countdown_to_json(CountdownGame(2, ((0, 1, 1), (1, 1, 0)), 2))))
    code, out, _ = run(["gen-countdown-encoding", str(path)])
    assert code == 0
    data = json.loads(out)
    game, x0 = game_from_json(data)
    assert data["convention"] == "reacher_first" and x0 > 0
    assert all(v > 0 for v in game.V) and all(u < 0 for u in game.U)


def test_growth(tmp_path):
    code, out, _ = run(["growth", "--magnitudes", "2,4", "--games", "3", "--out-dir",
                        str(tmp_path)])
    assert code == 0
    rows = (tmp_path / "growth.csv").read_text().strip().splitlines()
    assert rows[0].startswith("magnitude,game,U,V") and len(rows) == 7
    assert (tmp_path / "growth.png").read_bytes()[:4] == b"\x89PNG"


@pytest.mark.parametrize("argv", [["decide", "missing.json", "0"], ["solve"],
                                  ["decide", "FILE", "zero"], ["frobenius", "0"],
                                  ["bogus"], ["solve", "FILE", "--nope"]])
def test_errors_exit_2(argv, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"U": [], "V": ["1"]}')
    argv = [str(bad) if a == "FILE" else a for a in argv]
    code, out, err = run(argv)
    assert code == 2 and err


@pytest.mark.parametrize("text", ['{"U": [], "V": ["1"]}', "{oops", '{"U": ["a"], "V": ["1"]}'])
def test_bad_game_files(tmp_path, text):
    bad = tmp_path / "bad.json"
    bad.write_text(text)
    code, _, err = run(["decide", str(bad), "0"])
    assert code == 2 and err.startswith("robotgame")


def _transcript(out):
    body = out.split("transcript (mover, move, counter):\n", 1)[1]
    rows = [line.split("\t") for line in body.splitlines() if line.count("\t") == 2]
    return [(who, int(m), int(c)) for who, m, c in rows]


def test_play_as_opponent_rejects_illegal_moves_and_replays(sample_game_file, sample_game):
    code, out, _ = run(["play", sample_game_file, "-5"], stdin="7\nabc\n3\n-1\n3\n3\n3\n3\n")
    assert code == 0
    assert "illegal move 7" in out and "not an integer" in out
    assert "outcome ReacherWin" in out
    tr = _transcript(out)
    opp = [m for who, m, _ in tr if who == "opponent"]
    rea = [m for who, m, _ in tr if who == "reacher"]
    replay = run_match(sample_game, -5, ScriptedReacher(rea), ScriptedAdversary(opp), len(opp))
    assert replay.transcript == tr and replay.reacher_won


def test_play_as_reacher(sample_game_file, sample_game):
    code, out, _ = run(["play", sample_game_file, "-1", "--as", "reacher", "--max-rounds", "3"],
                       stdin="0\n-1\n-1\n")
    assert code == 0 and "outcome Timeout" in out
    tr = _transcript(out)
    replay = run_match(sample_game, -1, ScriptedReacher([m for w, m, _ in tr if w == "reacher"]),
                       ScriptedAdversary([m for w, m, _ in tr if w == "opponent"]), 3)
    assert replay.transcript == tr


def test_play_reacher_first(sample_game_file):
    code, out, _ = run(["play", sample_game_file, "1", "--as", "reacher", "--reacher-first"],
                       stdin="-1\n")
    assert code == 0 and "outcome ReacherWin(1)" in out


def test_play_end_of_input(sample_game_file):
    code, out, _ = run(["play", sample_game_file, "-5"], stdin="")
    assert code == 0 and "session ended" in out
