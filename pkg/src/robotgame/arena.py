"""The bounded arena Restr^b_d and a worklist attractor over it.

Vertices are plain integer ids computed from a counter value and a side:

* opponent vertex (box, x) for x in [0, b]        -> id x
* reacher vertex (circle, y) for y in [min V, b + max V] -> id b + 1 + (y - min V)
* the three sinks take the last three ids.

For a negative bound the arena is built on the mirrored game and every
value crossing the API is negated back.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, List, Tuple

from .errors import InvalidBound
from .model import RobotGame, mirror

SINK_NEG_LOSE = "sink_neg_lose"
SINK_HIGH_WIN = "sink_high_win"
SINK_HIGH_LOSE = "sink_high_lose"
OPPONENT = "opponent"
REACHER = "reacher"


class FiniteArena:
    """Restr^b_d(U, V) with ``b >= 0`` in its own (possibly mirrored) coordinates."""

    def __init__(self, U, V, b: int, d: int, sign: int = 1):
        if d <= 0:
            raise InvalidBound(f"lattice step d={d} must be positive")
        if b < 0:
            raise InvalidBound(f"arena bound {b} must be nonnegative (mirror first)")
        self.U = tuple(sorted(U))
        self.V = tuple(sorted(V))
        self.b = b
        self.d = d
        self.sign = sign  # -1 when this arena encodes Restr^{-b}_d of the original game
        self.reach_lo = self.V[0]
        self.reach_hi = b + self.V[-1]
        if self.reach_lo > self.reach_hi:
            raise InvalidBound(f"reacher range [{self.reach_lo}, {self.reach_hi}] is empty")
        self.n_opp = b + 1
        self.n_reach = self.reach_hi - self.reach_lo + 1
        base = self.n_opp + self.n_reach
        self.sink_ids = {SINK_NEG_LOSE: base, SINK_HIGH_WIN: base + 1, SINK_HIGH_LOSE: base + 2}
        self._sink_names = {v: k for k, v in self.sink_ids.items()}
        self.num_vertices = base + 3
        self._sink_preds = self._compute_sink_preds()

    # -- ids
    def opp_id(self, x: int) -> int:
        return x

    def reach_id(self, y: int) -> int:
        return self.n_opp + (y - self.reach_lo)

    def label(self, vid: int) -> Tuple[str, object]:
        if vid < self.n_opp:
            return OPPONENT, vid
        if vid < self.n_opp + self.n_reach:
            return REACHER, vid - self.n_opp + self.reach_lo
        return "sink", self._sink_names[vid]

    def is_reacher(self, vid: int) -> bool:
        return self.n_opp <= vid < self.n_opp + self.n_reach

    # -- edges
    def _reacher_targets(self, y: int):
        """Yield (u, successor id) for every reacher move from (circle, y)."""
        b, d = self.b, self.d
        for u in self.U:
            z = y + u
            if z < 0:
                yield u, self.sink_ids[SINK_NEG_LOSE]
            elif z > b:
                yield u, self.sink_ids[SINK_HIGH_WIN if z % d == 0 else SINK_HIGH_LOSE]
            else:
                yield u, z

    def successors(self, vid: int) -> List[int]:
        kind, val = self.label(vid)
        if kind == OPPONENT:
            return [self.reach_id(val + v) for v in self.V]
        if kind == REACHER:
            return sorted({s for _, s in self._reacher_targets(val)})
        if val == SINK_HIGH_WIN:
            return [self.opp_id(0)]
        return [vid]

    def out_degree(self, vid: int) -> int:
        return len(self.V) if vid < self.n_opp else 1

    def _compute_sink_preds(self) -> Dict[int, List[int]]:
        preds: Dict[int, List[int]] = {sid: [] for sid in self.sink_ids.values()}
        for y in range(self.reach_lo, self.reach_hi + 1):
            rid = self.reach_id(y)
            for sid in {s for _, s in self._reacher_targets(y) if s >= self.n_opp}:
                preds[sid].append(rid)
        preds[self.sink_ids[SINK_NEG_LOSE]].append(self.sink_ids[SINK_NEG_LOSE])
        preds[self.sink_ids[SINK_HIGH_LOSE]].append(self.sink_ids[SINK_HIGH_LOSE])
        return preds

    def predecessors(self, vid: int) -> List[int]:
        if vid < self.n_opp:
            x = vid
            out = [self.reach_id(x - u) for u in self.U if self.reach_lo <= x - u <= self.reach_hi]
            if x == 0:
                out.append(self.sink_ids[SINK_HIGH_WIN])
            return out
        if vid < self.n_opp + self.n_reach:
            y = vid - self.n_opp + self.reach_lo
            return [y - v for v in self.V if 0 <= y - v <= self.b]
        return self._sink_preds[vid]

    def dump(self) -> str:
        """Adjacency lists, one ``vertex TAB side TAB successors...`` line per vertex."""
        lines = []
        for vid in range(self.num_vertices):
            kind, val = self.label(vid)
            succ = []
            for s in self.successors(vid):
                sk, sv = self.label(s)
                succ.append(str(sv) if sk != "sink" else sv)
            name = str(val) if kind != "sink" else val
            side = kind if kind != "sink" else OPPONENT
            lines.append("\t".join([name, side] + succ))
        return "\n".join(lines) + "\n"


def build_restricted_arena(game: RobotGame, b: int, d: int) -> FiniteArena:
    """Restr^b_d of ``game``; a negative ``b`` builds Restr^{-b}_d on the mirror."""
    if b < 0:
        m = mirror(game)
        return FiniteArena(m.U, m.V, -b, d, sign=-1)
    return FiniteArena(game.U, game.V, b, d, sign=1)


class StrategyTable:
    """Attractor result: winning vertices, ranks and a memoryless reacher choice.

    Ranks count arena steps to the target; following ``choice`` from a
    winning reacher vertex strictly decreases the rank.
    """

    def __init__(self, arena: FiniteArena, win: bytearray, rank: List[int], choice: Dict[int, int]):
        self.arena = arena
        self.win = win
        self.rank = rank
        self.choice = choice  # reacher id -> move u in arena coordinates

    @property
    def sign(self) -> int:
        return self.arena.sign

    def winning_values(self) -> FrozenSet[int]:
        """Counter values x (original coordinates) with (box, x) winning."""
        s = self.arena.sign
        return frozenset(s * x for x in range(self.arena.n_opp) if self.win[x])

    def opponent_wins(self, x: int) -> bool:
        x *= self.arena.sign
        return 0 <= x <= self.arena.b and bool(self.win[x])

    def opponent_rank(self, x: int) -> int:
        return self.rank[self.arena.sign * x]

    def reacher_move(self, y: int):
        """Move in original coordinates from reacher vertex (circle, y), or None."""
        a = self.arena
        ya = a.sign * y
        if not a.reach_lo <= ya <= a.reach_hi:
            return None
        u = self.choice.get(a.reach_id(ya))
        return None if u is None else a.sign * u


def attractor(arena: FiniteArena, target: int = 0) -> Tuple[bytearray, StrategyTable]:
    """Least fixed point of the one-step attractor, by a backward worklist.

    Opponent vertices carry a counter of successors not yet known winning;
    BFS order makes the first winning successor of a reacher vertex a
    rank-minimal one.
    """
    n = arena.num_vertices
    win = bytearray(n)
    rank = [-1] * n
    remaining = [arena.out_degree(v) if not arena.is_reacher(v) else 0 for v in range(n)]
    choice_succ: Dict[int, int] = {}
    win[target] = 1
    rank[target] = 0
    queue = deque([target])
    while queue:
        w = queue.popleft()
        for p in arena.predecessors(w):
            if win[p]:
                continue
            if arena.is_reacher(p):
                win[p] = 1
                rank[p] = rank[w] + 1
                choice_succ[p] = w
                queue.append(p)
            else:
                remaining[p] -= 1
                if remaining[p] == 0:
                    win[p] = 1
                    rank[p] = rank[w] + 1
                    queue.append(p)
    choice: Dict[int, int] = {}
    for rid, succ in choice_succ.items():
        _, y = arena.label(rid)
        for u, s in arena._reacher_targets(y):
            if s == succ:
                choice[rid] = u
                break
    return win, StrategyTable(arena, win, rank, choice)


def restr_attr(game: RobotGame, b: int, d: int) -> FrozenSet[int]:
    """Values x with (box, x) in the attractor of (box, 0) on Restr^b_d."""
    arena = build_restricted_arena(game, b, d)
    _, table = attractor(arena, arena.opp_id(0))
    return table.winning_values()


def solve_arena(game: RobotGame, b: int, d: int) -> StrategyTable:
    arena = build_restricted_arena(game, b, d)
    return attractor(arena, arena.opp_id(0))[1]
