"""Figures and delimited tables: runtime growth and winning-set strips."""
from __future__ import annotations

import csv
import random
import time
from dataclasses import dataclass
from typing import List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .model import RobotGame, WinSetDescription, member  # noqa: E402
from .solver import solve  # noqa: E402

GROWTH_FIELDS = ["magnitude", "game", "U", "V", "kind", "d", "bound", "arena_vertices",
                 "generators", "seconds"]


@dataclass
class GrowthRow:
    magnitude: int
    game: int
    U: str
    V: str
    kind: str
    d: int
    bound: int
    arena_vertices: int
    generators: int
    seconds: float

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in GROWTH_FIELDS}


def random_game(rng: random.Random, magnitude: int, max_size: int = 4) -> RobotGame:
    U = {rng.randint(-magnitude, magnitude) for _ in range(rng.randint(1, max_size))}
    V = {rng.randint(-magnitude, magnitude) for _ in range(rng.randint(1, max_size))}
    return RobotGame(tuple(U), tuple(V))


def growth_table(magnitudes: Sequence[int], games_per_size: int = 10, seed: int = 0,
                 max_size: int = 4) -> List[GrowthRow]:
    """Solve seeded random games at each move magnitude and time them.

    The numbers are recorded, never asserted: they only illustrate how the
    restricted arena (and hence the running time) grows with the moves.
    """
    rows = []
    for m in magnitudes:
        rng = random.Random(f"{seed}:{m}")
        for i in range(games_per_size):
            game = random_game(rng, m, max_size)
            t0 = time.perf_counter()
            desc, wit = solve(game)
            dt = time.perf_counter() - t0
            verts = wit.arena_strategy.arena.num_vertices if wit.arena_strategy else 0
            rows.append(GrowthRow(m, i, " ".join(map(str, game.U)), " ".join(map(str, game.V)),
                                  desc.kind, desc.d, desc.bound, verts, len(wit.generators), dt))
    return rows


def write_growth_csv(rows: Sequence[GrowthRow], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=GROWTH_FIELDS)
        writer.writeheader()
        for r in rows:
            writer.writerow(r.as_dict())


def plot_growth(rows: Sequence[GrowthRow], path) -> None:
    mags = sorted({r.magnitude for r in rows})
    worst = [max(r.seconds for r in rows if r.magnitude == m) for m in mags]
    mean = [sum(r.seconds for r in rows if r.magnitude == m) /
            sum(1 for r in rows if r.magnitude == m) for m in mags]
    verts = [max(r.arena_vertices for r in rows if r.magnitude == m) for m in mags]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.semilogy(mags, worst, "o-", label="max")
    ax1.semilogy(mags, mean, "s--", label="mean")
    ax1.set_xlabel("move magnitude")
    ax1.set_ylabel("solve time [s]")
    ax1.legend(frameon=False)
    ax2.plot(mags, [max(v, 1) for v in verts], "o-")
    ax2.set_yscale("log")
    ax2.set_xlabel("move magnitude")
    ax2.set_ylabel("largest arena (vertices)")
    for ax in (ax1, ax2):
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_winning_set(game: RobotGame, desc: WinSetDescription, lo: int, hi: int, path) -> None:
    xs = list(range(lo, hi + 1))
    win = [member(desc, x) for x in xs]
    fig, ax = plt.subplots(figsize=(max(4, 0.12 * len(xs)), 1.6))
    ax.scatter([x for x, w in zip(xs, win) if w], [0] * sum(win), marker="s", color="tab:green",
               label="winning")
    ax.scatter([x for x, w in zip(xs, win) if not w], [0] * (len(xs) - sum(win)), marker="x",
               color="tab:red", label="losing")
    ax.set_yticks([])
    ax.set_xlabel("counter value")
    ax.set_title(f"{game}: {desc}", fontsize=8)
    ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.55), ncol=2, frameon=False, fontsize=8)
    for side in ("top", "right", "left"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
