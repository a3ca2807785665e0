from __future__ import annotations

import itertools
import random

import pytest

from robotgame.errors import CertificationFailed
from robotgame.model import Interval, RobotGame, half_line, member
from robotgame.play import (COUNTER_ESCAPED, REACHER_WIN, TIMEOUT, ForwardSearch, GreedyAdversary,
                            GreedyReacher, IteratedPre, Oracle, RandomAdversary, ScriptedAdversary,
                            ScriptedReacher, SparsePre, StrategyPlan, SynthesizedReacher, certify,
                            certify_composition, exhaustive_worst_case, oracle_winset_window,
                            run_match, win_within)
from robotgame.solver import solve


# ---------------------------------------------------------------- oracle

def test_oracle_examples(sample_game):
    assert win_within(sample_game, -3, 1)
    assert win_within(sample_game, 0, 0)
    assert not any(win_within(sample_game, -1, k) for k in range(21))
    assert not win_within(sample_game, -2, 1) and win_within(sample_game, -2, 2)


def test_oracle_window(sample_game):
    assert oracle_winset_window(sample_game, Interval(-6, 6), 8) == [-6, -5, -4, -3, -2, 0]
    assert oracle_winset_window(sample_game, Interval(-6, 6), 0) == [0]
    assert oracle_winset_window(sample_game, Interval(1, 9), 8) == []


def _games(limit=3):
    vals = range(-limit, limit + 1)
    sets = [c for r in (1, 2) for c in itertools.combinations(vals, r)]
    return [RobotGame(U, V) for U in sets for V in sets]


@pytest.mark.parametrize("reacher_first", [False, True])
def test_backends_agree(reacher_first):
    for g in _games()[::3]:
        it, fw = IteratedPre(g), ForwardSearch(g)
        for x in range(-12, 13):
            for k in (0, 1, 3, 9):
                a = any(it.contains(x + u, k) for u in g.U) if reacher_first else it.contains(x, k)
                b = fw.reacher_first(x, k) if reacher_first else fw.opponent_first(x, k)
                assert a == b, (g, x, k)


def test_sparse_backend_on_drifting_games():
    rng = random.Random(5)
    for _ in range(60):
        U = tuple(rng.sample(range(-9, 0), rng.randint(1, 3)))
        V = tuple(rng.sample(range(0, 6), rng.randint(1, 3)))
        g = RobotGame(U, V)
        if max(U) + max(V) >= 0:
            continue
        it = IteratedPre(g)
        sp = SparsePre(g, -1, 60)
        for x in range(0, 61):
            for k in (0, 2, 5, 20):
                assert sp.contains(x, k) == it.contains(x, k), (g, x, k)


def test_oracle_falls_back_for_huge_counters():
    g = RobotGame((-7, -3), (1, 2))
    orc = Oracle(g)
    x = 10**9
    # counter drifts down by at least 1 per round: cannot hit 0 in fewer rounds
    assert not orc.win_within(x, 5)
    assert orc.win_within(4, 1) == IteratedPre(g).contains(4, 1)


# ---------------------------------------------------------------- strategies

def test_synthesized_reacher_answers(sample_game):
    plan = StrategyPlan(solve(sample_game)[1])
    r = SynthesizedReacher(plan)
    r.start(-3)
    assert r.move(-3 + 3, 3) == 0
    r = SynthesizedReacher(plan)
    r.start(-3)
    assert r.move(-3 - 1, -1) == 4
    # from -2: answer -1 with 0, then play 3 - v in the next round
    r = SynthesizedReacher(plan)
    r.start(-2)
    assert r.move(-3, -1) == 0
    for v in sample_game.V:
        rr = r.clone()
        assert rr.move(-3 + v, v) == 3 - v


def test_run_match_examples(sample_game):
    desc, wit = solve(sample_game)
    plan = StrategyPlan(wit)
    out = run_match(sample_game, 0, SynthesizedReacher(plan), GreedyAdversary(sample_game, desc), 10)
    assert out.kind == REACHER_WIN and out.rounds == 0
    out = run_match(sample_game, -1, GreedyReacher(sample_game, desc), GreedyAdversary(sample_game, desc), 30)
    assert out.kind == TIMEOUT
    for seed in range(10):
        out = run_match(sample_game, -5, SynthesizedReacher(plan), RandomAdversary(sample_game, seed),
                        plan.budget(-5))
        assert out.kind == REACHER_WIN and out.rounds <= plan.budget(-5)


def test_run_match_escape_and_scripts(sample_game):
    out = run_match(sample_game, 1, ScriptedReacher([0, 0, 0]), ScriptedAdversary([3, 3, 3]), 3,
                    escape_bound=5)
    assert out.kind == COUNTER_ESCAPED
    out = run_match(sample_game, 1, ScriptedReacher([-1]), ScriptedAdversary([3]), 1, reacher_first=True)
    assert out.kind == REACHER_WIN and out.transcript == [("reacher", -1, 0)]


def test_long_play_from_far_value(sample_game):
    desc, wit = solve(sample_game)
    plan = StrategyPlan(wit)
    x = -1000
    budget = plan.budget(x)
    out = run_match(sample_game, x, SynthesizedReacher(plan), GreedyAdversary(sample_game, desc), budget)
    assert out.reacher_won and out.rounds <= budget


def test_exhaustive_worst_case(sample_game):
    plan = StrategyPlan(solve(sample_game)[1])
    for x in (-2, -3, -5, -9):
        worst = exhaustive_worst_case(plan, x, plan.budget(x))
        assert worst is not None and worst <= plan.budget(x)


# ---------------------------------------------------------------- certification

def test_certify_examples(sample_game):
    report = certify(sample_game, solve(sample_game), [-1, -2, -3, 0, 4], trials=5)
    assert sorted(report.wins) == [-3, -2, 0]
    assert sorted(report.losses) == [-1, 4]
    assert all(e.certified for e in report.entries)
    assert certify(sample_game, solve(sample_game), []).entries == []
    g = RobotGame((-1, 1), (0,))
    assert sorted(certify(g, solve(g), [7, -7], trials=3).wins) == [-7, 7]


def test_certify_detects_wrong_losing_claim(sample_game):
    desc, wit = solve(sample_game)
    wrong = half_line(-1, 1, -3, {0, -3})   # claims -2 is losing
    with pytest.raises(CertificationFailed) as exc:
        certify(sample_game, (wrong, wit), [-2, -9], trials=2, losing_budget=5)
    assert exc.value.x == -2


def test_certify_report_lines(sample_game):
    report = certify(sample_game, solve(sample_game), [-4], trials=2, seed=7)
    (line,) = report.lines()
    assert line.startswith("x=-4\tverdict=WIN\tcertified") and "seed=7" in line


def test_composition(sample_game):
    plan = StrategyPlan(solve(sample_game)[1])
    for x, y in [(-2, -3), (-3, -3), (-4, -6), (0, -5)]:
        used, budget = certify_composition(plan, x, y)
        assert used <= budget == plan.budget(x) + plan.budget(y)


def test_pump_game_certifies():
    g = RobotGame((-4, -3, -1), (2, 3))
    desc, wit = solve(g)
    report = certify(g, (desc, wit), range(-12, 13), trials=5)
    assert sorted(report.wins) == list(range(-12, 13))
