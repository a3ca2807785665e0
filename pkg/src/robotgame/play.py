"""Verification machinery: bounded-round oracle, play engine, strategy
realization from solver witnesses, adversaries and certification.
"""
from __future__ import annotations

import heapq
import random
import sys
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import CertificationFailed, StrategyExhausted
from .model import (HALF_LINE, LATTICE, Interval, PlayState, RobotGame, Turn,
                    WinSetDescription, distance_to_set, member)
from .numtheory import decompose, sign_class
from .solver import WitnessData, amplitude, solve

# ------------------------------------------------------------------ oracle

#: Above this many window bits the iterated-Pre oracle hands over to the
#: memoized forward search.
BITSET_LIMIT = 1 << 22


class IteratedPre:
    """The sets X_0 = {0}, X_{i+1} = X_i ∪ Pre(X_i), as bitsets over one window."""

    def __init__(self, game: RobotGame):
        self.game = game
        amp = amplitude(game)
        self._up = max(0, amp.hi)      # how far below 0 a new member can appear per round
        self._down = max(0, -amp.lo)   # how far above 0
        self._sets: Dict[int, int] = {}  # k -> X_k as a bitset over [-k*up, k*down]

    def _build(self, k: int) -> None:
        lo = -k * self._up
        hi = k * self._down
        width = hi - lo + 1
        mask = (1 << width) - 1
        shifts = {v: sorted({-(v + u) for u in self.game.U}) for v in self.game.V}

        def shifted(s: int, t: int) -> int:
            return (s << t) & mask if t >= 0 else s >> -t

        cur = 1 << (0 - lo)
        for _ in range(k):
            acc = mask
            for v in self.game.V:
                union = 0
                for t in shifts[v]:
                    union |= shifted(cur, t)
                acc &= union
                if not acc:
                    break
            nxt = cur | acc
            if nxt == cur:
                break  # fixed point: every later set is equal
            cur = nxt
        self._sets[k] = cur

    def window_size(self, k: int) -> int:
        return k * (self._up + self._down) + 1

    def contains(self, x: int, k: int) -> bool:
        if k not in self._sets:
            self._build(k)
        lo = -k * self._up
        if not lo <= x <= k * self._down:
            return False
        return bool(self._sets[k] >> (x - lo) & 1)

    def members(self, k: int, window: Interval) -> List[int]:
        return [x for x in window if self.contains(x, k)]


class ForwardSearch:
    """Memoized AND-OR search over bounded plays from a given counter.

    The generic fallback for huge counters; also an independent cross-check
    of the set-based backends on small games.  When every round moves
    the counter strictly in one direction, the round budget is capped by the
    distance to 0, which lets the memo key ignore non-binding budgets.
    """

    def __init__(self, game: RobotGame):
        self.game = game
        amp = amplitude(game)
        self.U = sorted(game.U, key=abs)
        self.V = game.V
        if amp.hi < 0:
            self.drift, self.step = -1, -amp.hi
        elif amp.lo > 0:
            self.drift, self.step = 1, amp.lo
        else:
            self.drift, self.step = 0, 0
        self._memo: Dict[Tuple[int, int], bool] = {}

    def _cap(self, x: int, r: int) -> Optional[int]:
        if self.drift == 0:
            return r
        if x * self.drift > 0:
            return None  # moving away from 0 forever
        return min(r, abs(x) // self.step)

    def opponent_first(self, x: int, r: int) -> bool:
        if x == 0:
            return True
        cap = self._cap(x, r)
        if cap is None or cap <= 0:
            return False
        key = (x, cap)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        result = True
        for v in self.V:
            if not any(self.opponent_first(x + v + u, cap - 1) for u in self.U):
                result = False
                break
        self._memo[key] = result
        return result

    def reacher_first(self, x: int, r: int) -> bool:
        return any(self.opponent_first(x + u, r) for u in self.U)


class SparsePre:
    """Iterated Pre as explicit sets, for games whose counter drifts one way.

    When every round moves the counter strictly toward -infinity, a value
    can only win through smaller values, so X_k restricted to [0, bound]
    depends only on X_{k-1} restricted to [0, bound] (mirrored for upward
    drift).  The explicit sets stay small on the base-4 reduction
    instances, whose counters are far too large for a bitset window.
    """

    def __init__(self, game: RobotGame, drift: int, bound: int):
        self.game = game
        self.drift = drift
        self.bound = bound
        self.rank: Dict[int, int] = {0: 0}
        self._done = 0
        self._fixed = False

    def _in_range(self, x: int) -> bool:
        if self.drift < 0:
            return 0 < x <= self.bound
        return self.bound <= x < 0

    def _extend(self, k: int) -> None:
        # Semi-naive evaluation: S = X - U holds the values from which the
        # reacher's move can land in X; c joins X once c + v is in S for
        # every v, which can only change when S gained c + v for some v.
        U, V = self.game.U, self.game.V
        rank = self.rank
        if self._done == 0 and not hasattr(self, "_S"):
            self._S = set()
            self._fresh = [0]
        S = self._S
        while self._done < k and not self._fixed:
            grown = []
            for x in self._fresh:
                for u in U:
                    y = x - u
                    if y not in S:
                        S.add(y)
                        grown.append(y)
            new = []
            for c in {y - v for y in grown for v in V}:
                if c in rank or not self._in_range(c):
                    continue
                if all((c + v) in S for v in V):
                    new.append(c)
            self._done += 1
            if not new:
                self._fixed = True
            for c in new:
                rank[c] = self._done
            self._fresh = new

    def contains(self, x: int, k: int) -> bool:
        if x != 0 and not self._in_range(x):
            return False
        self._extend(k)
        r = self.rank.get(x)
        return r is not None and r <= k


class Oracle:
    """Caching front end choosing among the backends."""

    def __init__(self, game: RobotGame):
        self.game = game
        self.iterated = IteratedPre(game)
        self.forward = ForwardSearch(game)
        self._sparse: Optional[SparsePre] = None

    def _sparse_for(self, x0: int, reacher_first: bool) -> SparsePre:
        drift = self.forward.drift
        far = x0 + (max(self.game.U) if drift < 0 else min(self.game.U)) if reacher_first else x0
        bound = max(x0, far) if drift < 0 else min(x0, far)
        sp = self._sparse
        if sp is None or (drift < 0 and bound > sp.bound) or (drift > 0 and bound < sp.bound):
            sp = self._sparse = SparsePre(self.game, drift, bound)
        return sp

    def win_within(self, x0: int, k: int, reacher_first: bool = False) -> bool:
        if k < 0:
            raise ValueError("round budget must be nonnegative")
        if self.iterated.window_size(k) <= BITSET_LIMIT:
            if reacher_first:
                return any(self.iterated.contains(x0 + u, k) for u in self.game.U)
            return self.iterated.contains(x0, k)
        if self.forward.drift != 0:
            sp = self._sparse_for(x0, reacher_first)
            if reacher_first:
                return any(sp.contains(x0 + u, k) for u in self.game.U)
            return sp.contains(x0, k)
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * k + 1000))
        try:
            if reacher_first:
                return self.forward.reacher_first(x0, k)
            return self.forward.opponent_first(x0, k)
        finally:
            sys.setrecursionlimit(limit)


def win_within(game: RobotGame, x0: int, k: int, reacher_first: bool = False) -> bool:
    """Can the reacher force 0 within ``k`` rounds?"""
    return Oracle(game).win_within(x0, k, reacher_first)


def oracle_winset_window(game: RobotGame, window: Interval, k: int) -> List[int]:
    it = IteratedPre(game)
    return it.members(k, window)


# ------------------------------------------------------------------ decompositions

#: Largest value window the shortest-path planner will allocate.
PLANNER_LIMIT = 2_000_000
INF = float("inf")


class _Planner:
    """Cheapest ways of writing values as sums of generators.

    A single-source shortest-path run from 0 over a value window, with
    generator ``g`` costing ``costs[g]`` rounds.  For same-sign generators
    partial sums are monotone; for mixed signs some ordering keeps them
    within max|g| of the segment [0, r], so a window padded by max|g| is
    exact.
    """

    def __init__(self, gens: Iterable[int], costs: Dict[int, int]):
        self.gens = sorted({g for g in gens if g != 0})
        self.costs = {g: costs[g] for g in self.gens}
        self.sign = sign_class(self.gens) if self.gens else 1
        self.G = max((abs(g) for g in self.gens), default=0)
        self.lo = self.hi = 0
        self.dist: List[float] = [0]
        self.pred: List[int] = [0]

    def _need(self, r: int) -> Tuple[int, int]:
        if self.sign > 0:
            return 0, max(0, r)
        if self.sign < 0:
            return min(0, r), 0
        return min(0, r) - self.G, max(0, r) + self.G

    def _run(self, lo: int, hi: int) -> None:
        n = hi - lo + 1
        dist = [INF] * n
        pred = [0] * n
        dist[-lo] = 0
        heap = [(0, 0)]
        gens = [(g, self.costs[g]) for g in self.gens]
        while heap:
            dcur, x = heapq.heappop(heap)
            if dcur > dist[x - lo]:
                continue
            for g, c in gens:
                y = x + g
                if lo <= y <= hi:
                    nd = dcur + c
                    if nd < dist[y - lo]:
                        dist[y - lo] = nd
                        pred[y - lo] = g
                        heapq.heappush(heap, (nd, y))
        self.lo, self.hi, self.dist, self.pred = lo, hi, dist, pred

    def _ensure(self, r: int) -> bool:
        need_lo, need_hi = self._need(r)
        if self.lo <= need_lo and need_hi <= self.hi:
            return True
        lo = min(need_lo, 2 * self.lo - self.G)
        hi = max(need_hi, 2 * self.hi + self.G)
        if self.sign > 0:
            lo = 0
        elif self.sign < 0:
            hi = 0
        if hi - lo + 1 > PLANNER_LIMIT:
            if need_hi - need_lo + 1 > PLANNER_LIMIT:
                return False
            lo, hi = need_lo, need_hi
        self._run(lo, hi)
        return True

    def path(self, r: int) -> Optional[List[int]]:
        """Generators (with repetition) summing to ``r`` at minimum cost, or None."""
        if r == 0:
            return []
        if not self.gens or r * self.sign < 0:
            return None
        if not self._ensure(r):
            dec = decompose(self.gens, r)
            if dec is None:
                return None
            return [g for g, c in sorted(dec.items()) for _ in range(c)]
        if self.dist[r - self.lo] == INF:
            return None
        out = []
        x = r
        while x != 0:
            g = self.pred[x - self.lo]
            out.append(g)
            x -= g
        return out

    def cost(self, r: int) -> float:
        p = self.path(r)
        if p is None:
            return INF
        return sum(self.costs[g] for g in p)


# ------------------------------------------------------------------ strategies

PLAN = "plan"
GEN = "gen"
ARENA = "arena"
PUMP = "pump"


@dataclass(frozen=True)
class Waypoint:
    """Reach ``target``; ``mode`` says how, ``gen`` is the generator for GEN steps."""

    target: int
    mode: str = PLAN
    gen: int = 0
    pumped: int = 0


@dataclass
class WaypointStack:
    """Pending waypoints, innermost last; the bottom one targets 0."""

    entries: List[Waypoint] = field(default_factory=list)

    def copy(self) -> "WaypointStack":
        return WaypointStack(list(self.entries))

    def key(self) -> Tuple[Waypoint, ...]:
        return tuple(self.entries)

    def targets(self) -> List[int]:
        return [w.target for w in reversed(self.entries)]

    def __len__(self):
        return len(self.entries)


class StrategyPlan:
    """Everything needed to play and budget the reacher's winning strategy.

    Costs are round bounds: a generator costs one round plus the cheapest
    decomposition of its worst landing over strictly earlier generators.
    """

    def __init__(self, witness: WitnessData):
        self.witness = witness
        self.game = witness.game
        self.desc = witness.description
        self.d = witness.d
        self.gen_by_value = {g.value: g for g in witness.generators}
        self.cost: Dict[int, int] = {}
        self.landing_paths: Dict[Tuple[int, int], List[int]] = {}
        earlier: List[int] = []
        planner: Optional[_Planner] = None
        for g in witness.generators:
            worst = 0
            for v, (u, landing) in g.witness.items():
                if landing == 0:
                    path = []
                else:
                    if planner is None or planner.gens != sorted(set(earlier)):
                        planner = _Planner(earlier, self.cost)
                    path = planner.path(landing)
                    if path is None:
                        dec = g.landing_decomposition[v]
                        path = [h for h, c in sorted(dec.items()) for _ in range(c)]
                self.landing_paths[(g.value, v)] = path
                worst = max(worst, sum(self.cost[h] for h in path))
            self.cost[g.value] = 1 + worst
            earlier.append(g.value)
        self.planner = _Planner(earlier, self.cost)
        self.table = witness.arena_strategy
        self.sign = self.desc.sign if self.desc.kind == HALF_LINE else 0
        if witness.step2_pump is not None:
            self.sign = 1 if witness.pump_origin < 0 else -1
        self._exit_cost: Optional[float] = None
        self._pump_exit_cost: Optional[float] = None

    # -- classification
    def in_arena(self, r: int) -> bool:
        if self.table is None:
            return False
        b = self.witness.arena_bound
        return 0 <= r <= b if b >= 0 else b <= r <= 0

    def is_pump(self) -> bool:
        return self.witness.step2_pump is not None

    def pump_done(self, r: int, pumped: int) -> bool:
        return pumped % self.d == 0 and self.sign * r > self.sign * self.witness.reach_bound

    # -- budgets
    def exit_cost(self) -> float:
        """Worst decomposition cost on leaving the arena past its bound."""
        if self._exit_cost is None:
            amp = amplitude(self.game)
            b = self.witness.arena_bound
            if b >= 0:
                span = Interval(b + 1, max(b + 1, b + amp.hi))
            else:
                span = Interval(min(b - 1, b + amp.lo), b - 1)
            self._exit_cost = max((self.planner.cost(z) for z in span.multiples(self.d)), default=0)
        return self._exit_cost

    def pump_exit_cost(self) -> float:
        if self._pump_exit_cost is None:
            amp = amplitude(self.game)
            origin = abs(self.witness.pump_origin)
            rb = self.witness.reach_bound
            reach = self.d * ((amp.hi if self.sign > 0 else -amp.lo) + origin)
            if self.sign > 0:
                span = Interval(rb + 1, rb + reach)
            else:
                span = Interval(rb - reach, rb - 1)
            self._pump_exit_cost = max((self.planner.cost(z) for z in span.multiples(self.d)),
                                       default=0)
        return self._pump_exit_cost

    def pump_rounds(self, r: int) -> int:
        origin = abs(self.witness.pump_origin)
        gap = self.sign * self.witness.reach_bound + 1 - self.sign * r
        if gap <= 0:
            return 0
        step = self.d * origin
        return self.d * (-(-gap // step))

    def budget(self, r: int) -> int:
        """Round bound for winning from relative value ``r``; raises if ``r`` is losing."""
        if r == 0:
            return 0
        if not member(self.desc, r):
            raise StrategyExhausted(f"{r} is not winning")
        if self.in_arena(r):
            return (self.table.opponent_rank(r) + 1) // 2 + int(self.exit_cost())
        c = self.planner.cost(r)
        if c != INF:
            return int(c)
        if self.is_pump():
            return self.pump_rounds(r) + int(self.pump_exit_cost())
        raise StrategyExhausted(f"no decomposition for {r}")

    # -- stack manipulation
    def _gen_entries(self, path: Sequence[int], start: int, target: int) -> List[Waypoint]:
        steps = []
        x = start
        for g in path:
            x -= g
            steps.append(Waypoint(x, GEN, g))
        assert x == target
        return list(reversed(steps))

    def _expand(self, r: int, target: int) -> List[Waypoint]:
        if not member(self.desc, r):
            raise StrategyExhausted(f"relative value {r} is not winning")
        if self.in_arena(r):
            return [Waypoint(target, ARENA)]
        path = self.planner.path(r)
        if path is not None:
            return self._gen_entries(path, target + r, target)
        if self.is_pump():
            return [Waypoint(target, PUMP)]
        raise StrategyExhausted(f"no decomposition for {r}")

    def normalize(self, x: int, stack: WaypointStack) -> None:
        """Pop reached waypoints and expand plans until the top is actionable."""
        entries = stack.entries
        while entries:
            top = entries[-1]
            r = x - top.target
            if top.mode == GEN:
                if r != top.gen:
                    raise StrategyExhausted(f"off course: relative {r}, expected {top.gen}")
                return
            if r == 0:
                entries.pop()
                continue
            if top.mode == PLAN:
                entries.pop()
                entries.extend(self._expand(r, top.target))
                continue
            if top.mode == ARENA:
                if self.in_arena(r):
                    return
                entries.pop()
                path = self.planner.path(r)
                if path is None:
                    raise StrategyExhausted(f"arena exit {r} not decomposable")
                entries.extend(self._gen_entries(path, x, top.target))
                continue
            if top.mode == PUMP:
                if self.pump_done(r, top.pumped):
                    entries.pop()
                    path = self.planner.path(r)
                    if path is None:
                        raise StrategyExhausted(f"pumped value {r} not decomposable")
                    entries.extend(self._gen_entries(path, x, top.target))
                    continue
                return
            raise StrategyExhausted(f"unknown waypoint mode {top.mode!r}")
        raise StrategyExhausted(f"no waypoint left at counter {x}")


def reacher_strategy(plan: StrategyPlan, state: PlayState, stack: WaypointStack,
                     v: int) -> Tuple[int, WaypointStack]:
    """One reacher move.  ``state.counter`` is the value after the opponent's ``v``."""
    x = state.counter - v
    plan.normalize(x, stack)
    top = stack.entries[-1]
    r = x - top.target
    if top.mode == GEN:
        gen = plan.gen_by_value[top.gen]
        if v not in gen.witness:
            raise StrategyExhausted(f"opponent move {v} not in V")
        u, landing = gen.witness[v]
        stack.entries.pop()
        path = plan.landing_paths[(top.gen, v)]
        stack.entries.extend(plan._gen_entries(path, top.target + landing, top.target))
        return u, stack
    if top.mode == ARENA:
        u = plan.table.reacher_move(r + v)
        if u is None:
            raise StrategyExhausted(f"arena has no winning move at {r + v}")
        return u, stack
    if top.mode == PUMP:
        stack.entries[-1] = replace(top, pumped=top.pumped + 1)
        return plan.witness.step2_pump[v], stack
    raise StrategyExhausted(f"cannot act on waypoint {top}")


# ------------------------------------------------------------------ players

class ReacherPolicy:
    def start(self, x0: int) -> None:
        pass

    def move(self, counter: int, last_v: Optional[int]) -> int:
        raise NotImplementedError


class SynthesizedReacher(ReacherPolicy):
    """The certified strategy; ``via`` lists intermediate targets (composition)."""

    def __init__(self, plan: StrategyPlan, via: Sequence[int] = ()):
        self.plan = plan
        self.via = tuple(via)
        self.stack = WaypointStack()

    def start(self, x0: int) -> None:
        self.stack = WaypointStack([Waypoint(0)] + [Waypoint(t) for t in reversed(self.via)])

    def clone(self) -> "SynthesizedReacher":
        other = SynthesizedReacher(self.plan, self.via)
        other.stack = self.stack.copy()
        return other

    def first_move(self, x0: int) -> int:
        """Opening move under the reacher-first convention."""
        best = None
        for u in self.plan.game.U:
            y = x0 + u
            if member(self.plan.desc, y):
                b = 0 if y == 0 else self.plan.budget(y)
                if best is None or b < best[0]:
                    best = (b, u)
        if best is None:
            raise StrategyExhausted(f"no opening move from {x0} lands on a winning value")
        return best[1]

    def move(self, counter: int, last_v: Optional[int]) -> int:
        if last_v is None:
            return self.first_move(counter)
        u, self.stack = reacher_strategy(self.plan, PlayState(counter, Turn.REACHER), self.stack,
                                         last_v)
        return u


class GreedyReacher(ReacherPolicy):
    """Heuristic for losing positions: move as close as possible to the winning set."""

    def __init__(self, game: RobotGame, desc: WinSetDescription):
        self.game, self.desc = game, desc

    def move(self, counter, last_v):
        return min(self.game.U, key=lambda u: (distance_to_set(self.desc, counter + u),
                                               abs(counter + u), u))


class ScriptedReacher(ReacherPolicy):
    def __init__(self, moves: Sequence[int]):
        self.moves = list(moves)
        self.i = 0

    def start(self, x0):
        self.i = 0

    def move(self, counter, last_v):
        if self.i >= len(self.moves):
            raise StrategyExhausted("scripted reacher ran out of moves")
        self.i += 1
        return self.moves[self.i - 1]


class Adversary:
    name = "adversary"

    def start(self, x0: int) -> None:
        pass

    def move(self, counter: int) -> int:
        raise NotImplementedError


class RandomAdversary(Adversary):
    name = "random"

    def __init__(self, game: RobotGame, seed=0):
        self.V = game.V
        self.seed = seed
        self.rng = random.Random(seed)

    def start(self, x0):
        self.rng = random.Random(self.seed)

    def move(self, counter):
        return self.rng.choice(self.V)


class GreedyAdversary(Adversary):
    """Pushes away from the winning set, assuming the reacher's best reply."""

    name = "greedy"

    def __init__(self, game: RobotGame, desc: WinSetDescription):
        self.game, self.desc = game, desc

    def move(self, counter):
        def score(v):
            y = counter + v
            near = min(distance_to_set(self.desc, y + u) for u in self.game.U)
            return (near, abs(y), v)
        return max(self.game.V, key=score)


class ScriptedAdversary(Adversary):
    name = "scripted"

    def __init__(self, moves: Sequence[int]):
        self.moves = list(moves)
        self.i = 0

    def start(self, x0):
        self.i = 0

    def move(self, counter):
        if self.i >= len(self.moves):
            raise StrategyExhausted("scripted opponent ran out of moves")
        self.i += 1
        return self.moves[self.i - 1]


# ------------------------------------------------------------------ matches

REACHER_WIN = "reacher_win"
TIMEOUT = "timeout"
COUNTER_ESCAPED = "counter_escaped"


@dataclass
class MatchOutcome:
    kind: str
    rounds: int
    transcript: List[Tuple[str, int, int]] = field(default_factory=list)

    @property
    def reacher_won(self) -> bool:
        return self.kind == REACHER_WIN

    def __str__(self):
        if self.kind == REACHER_WIN:
            return f"ReacherWin({self.rounds})"
        return "Timeout" if self.kind == TIMEOUT else "CounterEscaped"


def run_match(game: RobotGame, x0: int, reacher: ReacherPolicy, adversary: Adversary,
              max_rounds: int, reacher_first: bool = False,
              escape_bound: Optional[int] = None) -> MatchOutcome:
    """Play up to ``max_rounds`` rounds; the reacher wins on 0 after his move."""
    reacher.start(x0)
    adversary.start(x0)
    x = x0
    transcript: List[Tuple[str, int, int]] = []
    if x == 0 and not reacher_first:
        return MatchOutcome(REACHER_WIN, 0, transcript)

    def reacher_turn(last_v):
        nonlocal x
        u = reacher.move(x, last_v)
        if u not in game.U:
            raise StrategyExhausted(f"reacher produced illegal move {u}")
        x += u
        transcript.append(("reacher", u, x))

    for rnd in range(1, max_rounds + 1):
        if reacher_first:
            reacher_turn(None if rnd == 1 else transcript[-1][1])
            if x == 0:
                return MatchOutcome(REACHER_WIN, rnd, transcript)
        v = adversary.move(x)
        if v not in game.V:
            raise ValueError(f"adversary produced illegal move {v}")
        x += v
        transcript.append(("opponent", v, x))
        if not reacher_first:
            reacher_turn(v)
            if x == 0:
                return MatchOutcome(REACHER_WIN, rnd, transcript)
        if escape_bound is not None and abs(x) > escape_bound:
            return MatchOutcome(COUNTER_ESCAPED, rnd, transcript)
    return MatchOutcome(TIMEOUT, max_rounds, transcript)


def exhaustive_worst_case(plan: StrategyPlan, x0: int, budget: int, via: Sequence[int] = (),
                          node_cap: int = 20000) -> Optional[int]:
    """Worst-case rounds of the synthesized strategy over every opponent play.

    Returns None when the exploration exceeds ``node_cap`` states; raises
    StrategyExhausted if some opponent play escapes the budget.
    """
    if x0 == 0:
        return 0
    root = SynthesizedReacher(plan, via)
    root.start(x0)
    memo: Dict[tuple, int] = {}
    on_path = set()
    nodes = 0

    def worst(x: int, player: SynthesizedReacher, depth: int) -> int:
        nonlocal nodes
        key = (x, player.stack.key())
        if key in memo:
            return memo[key]
        if key in on_path or depth >= budget:
            raise StrategyExhausted(f"opponent play from {x0} exceeds budget {budget}")
        nodes += 1
        if nodes > node_cap:
            raise _CapReached
        on_path.add(key)
        result = 0
        for v in plan.game.V:
            p = player.clone()
            u = p.move(x + v, v)
            y = x + v + u
            result = max(result, 1 if y == 0 else 1 + worst(y, p, depth + 1))
        on_path.discard(key)
        memo[key] = result
        return result

    try:
        return worst(x0, root, 0)
    except _CapReached:
        return None


class _CapReached(Exception):
    pass


# ------------------------------------------------------------------ certification

@dataclass
class CertEntry:
    x: int
    verdict: str
    certified: bool
    rounds: int
    budget: int
    seed: object
    exhaustive: Optional[int] = None

    def line(self) -> str:
        status = "certified" if self.verdict == "WIN" else "unrefuted"
        ex = "skipped" if self.exhaustive is None else str(self.exhaustive)
        return (f"x={self.x}\tverdict={self.verdict}\t{status}\trounds={self.rounds}"
                f"\tbudget={self.budget}\texhaustive={ex}\tseed={self.seed}")


@dataclass
class CertifyReport:
    entries: List[CertEntry] = field(default_factory=list)

    @property
    def wins(self) -> List[int]:
        return [e.x for e in self.entries if e.verdict == "WIN"]

    @property
    def losses(self) -> List[int]:
        return [e.x for e in self.entries if e.verdict == "LOSE"]

    def lines(self) -> List[str]:
        return [e.line() for e in self.entries]


def trial_seed(seed, x: int, i: int) -> str:
    return f"{seed}:{x}:{i}"


def certify(game: RobotGame, solve_output=None, sample: Iterable[int] = (), trials: int = 20,
            seed=0, exhaustive: bool = True, losing_budget: Optional[int] = None,
            plan: Optional[StrategyPlan] = None, oracle: Optional[Oracle] = None) -> CertifyReport:
    """Play the synthesized strategy from every sampled winning value and
    refute every sampled losing value within the round budget."""
    if solve_output is None:
        solve_output = solve(game)
    desc, witness = solve_output
    plan = plan or StrategyPlan(witness)
    report = CertifyReport()
    sample = sorted(set(sample), key=lambda t: (abs(t), -t))
    budgets = {x: plan.budget(x) for x in sample if member(desc, x)}
    if losing_budget is None:
        losing_budget = max(budgets.values(), default=0)
        losing_budget = max(losing_budget, 1)
    oracle = oracle or Oracle(game)
    for x in sample:
        if x not in budgets:
            if oracle.win_within(x, losing_budget):
                raise CertificationFailed(x, "oracle", seed,
                                          reason=f"losing value wins within {losing_budget} rounds")
            report.entries.append(CertEntry(x, "LOSE", True, losing_budget, losing_budget, seed))
            continue
        budget = budgets[x]
        used = 0
        adversaries = [(RandomAdversary(game, trial_seed(seed, x, i)), trial_seed(seed, x, i))
                       for i in range(trials)]
        adversaries.append((GreedyAdversary(game, desc), seed))
        for adv, s in adversaries:
            out = _checked_match(game, x, SynthesizedReacher(plan), adv, budget, s)
            used = max(used, out.rounds)
        ex = None
        if exhaustive:
            try:
                ex = exhaustive_worst_case(plan, x, budget)
            except StrategyExhausted as exc:
                raise CertificationFailed(x, "exhaustive", seed, reason=str(exc)) from None
        report.entries.append(CertEntry(x, "WIN", True, used, budget, seed, ex))
    return report


def _checked_match(game, x, reacher, adv, budget, seed) -> MatchOutcome:
    try:
        out = run_match(game, x, reacher, adv, budget)
    except StrategyExhausted as exc:
        raise CertificationFailed(x, adv.name, seed, reason=str(exc)) from None
    if not out.reacher_won:
        raise CertificationFailed(x, adv.name, seed, trace=out.transcript,
                                  reason=f"{out} within budget {budget}")
    return out


def certify_composition(plan: StrategyPlan, x: int, y: int, trials: int = 5,
                        seed=0) -> Tuple[int, int]:
    """Certify x + y by first reaching y then 0; returns (max rounds, r_x + r_y)."""
    game = plan.game
    budget = plan.budget(x) + plan.budget(y)
    used = 0
    advs = [RandomAdversary(game, trial_seed(seed, x + y, i)) for i in range(trials)]
    advs.append(GreedyAdversary(game, plan.desc))
    for adv in advs:
        out = _checked_match(game, x + y, SynthesizedReacher(plan, via=(y,)), adv, budget, seed)
        used = max(used, out.rounds)
    return used, budget
