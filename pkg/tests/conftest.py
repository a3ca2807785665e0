"""Shared fixtures and helpers for the test suite."""
from __future__ import annotations

import random

import pytest

from robotgame.model import RobotGame

SAMPLE_GAME = RobotGame((-1, 0, 4), (-1, 3))


def reachable_table(W, limit):
    """Brute-force DP: ``table[x]`` for 0 <= x <= limit, W positive."""
    table = [False] * (limit + 1)
    table[0] = True
    for x in range(1, limit + 1):
        table[x] = any(x >= w and table[x - w] for w in W)
    return table


def criterion_games(n=200, seed=2024, magnitude=8, max_size=4):
    """Seeded random games with |U|, |V| <= max_size and moves in [-magnitude, magnitude]."""
    rng = random.Random(seed)
    games = []
    for _ in range(n):
        U = {rng.randint(-magnitude, magnitude) for _ in range(rng.randint(1, max_size))}
        V = {rng.randint(-magnitude, magnitude) for _ in range(rng.randint(1, max_size))}
        games.append(RobotGame(tuple(U), tuple(V)))
    return games


@pytest.fixture
def sample_game():
    return SAMPLE_GAME


@pytest.fixture
def sample_game_file(tmp_path):
    path = tmp_path / "sample_game.json"
    path.write_text('{"U": ["-1", "0", "4"], "V": ["-1", "3"]}', encoding="utf-8")
    return str(path)


# Acceptance lines are collected here and echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
