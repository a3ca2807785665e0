from __future__ import annotations

import itertools

import pytest

from robotgame.model import Interval, RobotGame, Verdict, half_line, lattice, member, mirror, negate
from robotgame.numtheory import reachable
from robotgame.play import Oracle
from robotgame.solver import (BOUND_SHARP, amplitude, amplitude_k, decide, nontrivial_check, pre,
                              pre_lattice_window, quick_sign_checks, regularity_interval, solve)

from conftest import SAMPLE_GAME


def test_amplitude(sample_game):
    assert amplitude(sample_game) == Interval(-2, 7)
    assert amplitude_k(sample_game, 3) == Interval(-5, 10)
    assert amplitude_k(RobotGame((0,), (0,)), 0) == Interval(0, 0)


def test_pre(sample_game):
    assert pre(sample_game, {0}) == {-3}
    assert pre(sample_game, set()) == frozenset()


def test_pre_matches_definition(sample_game):
    X = {-3, -2, 0, 5}
    expected = {x for x in range(-40, 40)
                if all(any(x + v + u in X for u in sample_game.U) for v in sample_game.V)}
    assert pre(sample_game, X) == expected


def test_pre_lattice_window(sample_game):
    assert -2 in pre_lattice_window(sample_game, Interval(-15, 0), 3)
    assert pre_lattice_window(sample_game, Interval(1, 2), 3) == frozenset()


def test_regularity_interval(sample_game):
    assert regularity_interval(sample_game, {-3}) == Interval(-15, 0)
    assert regularity_interval(sample_game, {-3, 2}) == amplitude_k(sample_game, 1)
    I = regularity_interval(RobotGame((0,), (0,)), {4})
    assert I == Interval(0, 8)


def test_quick_sign_checks(sample_game):
    assert quick_sign_checks(sample_game).positive_losing
    assert quick_sign_checks(RobotGame((5,), (-1,))).pump_up
    f = quick_sign_checks(RobotGame((-1, 1), (-1, 1)))
    assert f.positive_losing and f.negative_losing


def test_nontrivial_check(sample_game):
    assert nontrivial_check(sample_game) == -3
    assert nontrivial_check(RobotGame((0,), (1, -1))) is None
    assert nontrivial_check(RobotGame((-1, 1), (0,))) in (-1, 1)


def test_solve_worked_example(sample_game):
    desc, wit = solve(sample_game)
    assert desc == half_line(-1, 1, -1, {0})
    assert wit.generator_values == (-3, -2)
    assert [x for x in range(-10, 11) if member(desc, x)] == \
        [x for x in range(-10, 1) if x != -1]


def test_solve_reacher_stuck_but_opponent_drifts():
    # U={0}, V={1}: the opponent must raise the counter, so every x <= 0 wins.
    desc, _ = solve(RobotGame((0,), (1,)))
    assert desc == half_line(-1, 1, 0, {0})
    assert all(member(desc, x) == (x <= 0) for x in range(-20, 21))


def test_solve_trivial_zero():
    desc, wit = solve(RobotGame((0,), (1, -1)))
    assert desc.kind == "trivial_zero" and wit.trace.branch == "trivial"


def test_solve_lattice():
    desc, wit = solve(RobotGame((-1, 1), (0,)))
    assert desc == lattice(1) and wit.trace.branch == "lattice_mixed"
    orc = Oracle(RobotGame((-1, 1), (0,)))
    assert all(orc.win_within(x, abs(x)) for x in range(-12, 13))


def test_solve_lattice_with_pump():
    g = RobotGame((-4, -3, -1), (2, 3))
    desc, wit = solve(g)
    assert desc == lattice(1) and wit.trace.branch == "lattice_pump"
    assert set(wit.step2_pump) == set(g.V)
    assert all(u in g.U for u in wit.step2_pump.values())


def test_decide(sample_game):
    assert decide(sample_game, -3) is Verdict.WIN
    assert decide(sample_game, -1) is Verdict.LOSE
    assert decide(RobotGame((3,), (5,)), 0) is Verdict.WIN


def _small_games(limit=3):
    vals = range(-limit, limit + 1)
    sets = [c for r in (1, 2) for c in itertools.combinations(vals, r)]
    return [RobotGame(U, V) for U in sets for V in sets]


def test_generator_witnesses():
    for g in _small_games():
        desc, wit = solve(g)
        earlier = []
        for gen in wit.generators:
            assert member(desc, gen.value)
            assert set(gen.witness) == set(g.V)
            for v, (u, landing) in gen.witness.items():
                assert u in g.U and gen.value + v + u == landing
                assert landing == 0 or reachable(earlier, landing)
            earlier.append(gen.value)


def test_solver_agrees_with_oracle_exhaustively_on_small_games():
    for g in _small_games():
        desc, _ = solve(g)
        orc = Oracle(g)
        for x in range(-15, 16):
            assert member(desc, x) == orc.win_within(x, 40), (g, x, desc)


def test_sharp_bound_gives_same_description():
    for g in _small_games():
        assert solve(g)[0] == solve(g, BOUND_SHARP)[0]


def test_mirror_symmetry():
    for g in _small_games():
        assert negate(solve(mirror(g))[0]) == solve(g)[0]


def test_big_integer_moves():
    big = 10**20
    g = RobotGame((-big, big), (0,))
    desc, _ = solve(g)
    assert desc == lattice(big)
    assert decide(g, 7 * big) is Verdict.WIN and decide(g, big + 1) is Verdict.LOSE
