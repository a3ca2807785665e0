from __future__ import annotations

import json

import pytest

from robotgame.errors import EmptyMoveSet, RobotGameError
from robotgame.model import (Interval, RobotGame, description_from_json, description_to_json,
                             distance_to_set, game_from_json, game_to_json, half_line, lattice,
                             load_game, member, mirror, negate, trivial_zero, validate)


def test_validate_and_normalize():
    g = validate([-1, 0, 4], [-1, 3])
    assert g.U == (-1, 0, 4) and g.V == (-1, 3)
    assert validate([2, 2], [0]).U == (2,)


@pytest.mark.parametrize("U, V, side", [([], [1], "U"), ([1], [], "V")])
def test_empty_move_sets(U, V, side):
    with pytest.raises(EmptyMoveSet) as exc:
        validate(U, V)
    assert exc.value.side == side


def test_mirror(sample_game):
    m = mirror(sample_game)
    assert m.U == (-4, 0, 1) and m.V == (-3, 1)
    assert mirror(m) == sample_game


def test_interval_helpers():
    I = Interval(-2, 7)
    assert len(I) == 10 and -2 in I and 8 not in I
    assert I.shift(3) == Interval(1, 10)
    assert I.widen(3) == Interval(-5, 10)
    assert list(Interval(-5, 5).multiples(3)) == [-3, 0, 3]


def test_member_examples():
    assert not member(half_line(-1, 1, -1, {0}), -1)
    assert member(half_line(-1, 1, -1, {0}), -2)
    assert member(lattice(3), -6) and not member(lattice(3), 4)
    assert member(trivial_zero(), 0) and not member(trivial_zero(), 5)


def test_half_line_validation():
    with pytest.raises(ValueError):
        half_line(1, 1, 5, {1})          # must contain 0
    with pytest.raises(ValueError):
        half_line(1, 1, 5, {0, 9})       # outside [0, bound]
    with pytest.raises(ValueError):
        half_line(2, 1, 5, {0})


def test_negate_and_distance():
    h = half_line(1, 2, 6, {0, 4})
    n = negate(h)
    assert all(member(h, x) == member(n, -x) for x in range(-30, 31))
    for desc in (h, n, lattice(5), trivial_zero()):
        for x in range(-25, 26):
            dist = distance_to_set(desc, x)
            assert member(desc, x - dist) or member(desc, x + dist)
            assert not any(member(desc, x + e) for e in range(-dist + 1, dist))


def test_json_round_trip(tmp_path):
    g = RobotGame((-(10**30), 7), (1,))
    data = game_to_json(g, x0=10**25)
    assert data["U"] == [str(-(10**30)), "7"]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(data))
    assert load_game(str(path)) == (g, 10**25)
    for desc in (trivial_zero(), lattice(4), half_line(-1, 1, -1, {0})):
        assert description_from_json(json.dumps(description_to_json(desc))) == desc


@pytest.mark.parametrize("text", ['[1, 2]', '{"U": ["1"]}', '{"U": "1", "V": ["2"]}',
                                  '{"U": ["x"], "V": ["2"]}', '{"U": [true], "V": ["2"]}',
                                  '{"U": [], "V": ["2"]}'])
def test_malformed_game_json(text):
    with pytest.raises(RobotGameError):
        game_from_json(text)


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(RobotGameError):
        load_game(str(path))
