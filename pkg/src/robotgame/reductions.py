"""Hardness constructions and their source-problem solvers.

* One-player robot games (opponent stuck on 0) are numerical-semigroup
  membership, and Subset-Sum reduces to them.
* Countdown games reduce to restricted countdown games (a sink location
  and durations unique to their source), which in turn are encoded as
  robot games with base-4 move codes, the reacher moving first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvariantViolation, RobotGameError
from .model import RobotGame, _parse_int
from .numtheory import reachable

# ------------------------------------------------------------------ one-player games


def solve_one_player(U, x0: int) -> bool:
    """Does the reacher win (U, {0}) from ``x0``?  Exactly when -x0 is U-reachable.

    ``U`` may also be a one-player RobotGame.
    """
    U = tuple(U.U if isinstance(U, RobotGame) else U)
    if x0 == 0:
        return True
    if not U:
        return False
    return reachable(U, -x0)


def gen_subset_sum(X: Iterable[int], s: int) -> Tuple[Tuple[int, ...], int]:
    """One-player game winnable iff some subset of ``X`` sums to ``s``.

    Each element gets a pair of moves that both clear a private bit
    2^(k+i) and one unit of the counting block 2^(k+n); only one of them
    also subtracts the element.  The high blocks force every pair to be
    used exactly once.
    """
    xs = sorted(X)
    if not xs or any(x <= 0 for x in xs):
        raise RobotGameError("X must be a nonempty set of positive integers")
    if s < 1:
        raise RobotGameError("target must be positive")
    n = len(xs)
    b = xs[-1]
    k = max(n * b, s).bit_length()
    U = []
    for i, x in enumerate(xs):
        base = -(1 << (k + i)) - (1 << (k + n))
        U.extend([base - x, base])
    x0 = s + sum(1 << i for i in range(k, k + n)) + n * (1 << (k + n))
    return tuple(sorted(U)), x0


def subset_sum_brute(X: Iterable[int], s: int) -> bool:
    xs = list(X)
    return any(sum(c) == s for r in range(len(xs) + 1) for c in combinations(xs, r))


# ------------------------------------------------------------------ countdown games

Transition = Tuple[int, int, int]


@dataclass(frozen=True)
class CountdownGame:
    """Locations are 0..locations-1; configurations are (location, counter >= 0)."""

    locations: int
    transitions: Tuple[Transition, ...]
    c0: int
    s0: int = 0

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(sorted(set(map(tuple, self.transitions)))))
        for s, d, t in self.transitions:
            if d <= 0:
                raise RobotGameError(f"duration {d} must be positive")
            if not (0 <= s < self.locations and 0 <= t < self.locations):
                raise RobotGameError(f"transition {(s, d, t)} leaves the location range")
        if self.c0 <= 0:
            raise RobotGameError("c0 must be positive")

    @property
    def durations(self) -> Tuple[int, ...]:
        return tuple(sorted({d for _, d, _ in self.transitions}))

    def moves(self) -> List[Dict[int, List[int]]]:
        """Per location: duration -> targets."""
        out: List[Dict[int, List[int]]] = [dict() for _ in range(self.locations)]
        for s, d, t in self.transitions:
            out[s].setdefault(d, []).append(t)
        return out


@dataclass(frozen=True)
class RestrictedCountdownGame(CountdownGame):
    """Countdown game with sink ``sink``; player 1 wins exactly at (sink, 0)."""

    sink: int = -1

    def __post_init__(self):
        super().__post_init__()
        if not 0 <= self.sink < self.locations:
            raise RobotGameError("sink must be a location")
        if any(s == self.sink for s, _, _ in self.transitions):
            raise RobotGameError("the sink must have no outgoing transition")

    def duration_owner(self) -> Dict[int, int]:
        """Location s_d of every duration d; raises if a duration has two sources."""
        owner: Dict[int, int] = {}
        for s, d, _ in self.transitions:
            if owner.setdefault(d, s) != s:
                raise InvariantViolation(f"duration {d} used from locations {owner[d]} and {s}")
        return owner


def countdown_win_table(cg: CountdownGame, cmax: int) -> List[bytearray]:
    """``table[s][c]`` is 1 iff player 1 wins from (s, c), for 0 <= c <= cmax."""
    restricted = isinstance(cg, RestrictedCountdownGame)
    moves = [sorted(m.items()) for m in cg.moves()]
    table = [bytearray(cmax + 1) for _ in range(cg.locations)]
    for c in range(cmax + 1):
        for s in range(cg.locations):
            blocked = True
            win = False
            for d, targets in moves[s]:
                if d > c:
                    break
                blocked = False
                if all(table[t][c - d] for t in targets):
                    win = True
                    break
            if blocked:
                win = (c == 0) and (not restricted or s == cg.sink)
            table[s][c] = win
    return table


def solve_countdown(cg: CountdownGame) -> Dict[Tuple[int, int], bool]:
    """Winner (True = player 1) of every configuration with counter in [0, c0]."""
    table = countdown_win_table(cg, cg.c0)
    return {(s, c): bool(table[s][c]) for s in range(cg.locations) for c in range(cg.c0 + 1)}


def countdown_winner(cg: CountdownGame) -> bool:
    return bool(countdown_win_table(cg, cg.c0)[cg.s0][cg.c0])


def restrict_countdown(cg: CountdownGame) -> RestrictedCountdownGame:
    """Sink-and-split construction preserving the winner.

    Stage one adds a sink reachable from everywhere with the least unused
    duration d' (initial counter c0 + d').  Stage two gives every location
    s_i other than s0 a primed copy: (s_i, i, s_i') then (s_i', 2Nd - i, t),
    while s0 keeps direct transitions (s0, 2Nd, t); counters scale by 2N
    with N the number of locations including the sink.
    """
    m = cg.locations
    # Renumber so that s0 is location 0.
    perm = [cg.s0] + [s for s in range(m) if s != cg.s0]
    index = {s: i for i, s in enumerate(perm)}
    base = [(index[s], d, index[t]) for s, d, t in cg.transitions]
    used = {d for _, d, _ in base}
    d_new = next(d for d in range(1, len(used) + 2) if d not in used)
    sink_stage1 = m
    stage1 = base + [(s, d_new, sink_stage1) for s in range(m)]
    N = m + 1
    # Layout: s0, s1..s_{m-1}, s1'..s_{m-1}', sink.
    sink = 2 * m - 1

    def loc(t: int) -> int:
        return sink if t == sink_stage1 else t

    def primed(i: int) -> int:
        return m - 1 + i

    out: List[Transition] = []
    for s, d, t in stage1:
        if s == 0:
            out.append((0, 2 * N * d, loc(t)))
        else:
            out.append((s, s, primed(s)))
            out.append((primed(s), 2 * N * d - s, loc(t)))
    rcg = RestrictedCountdownGame(2 * m, tuple(out), 2 * N * (cg.c0 + d_new), 0, sink)
    rcg.duration_owner()
    return rcg


def countdown_to_json(cg: CountdownGame) -> dict:
    out = {"locations": cg.locations, "s0": cg.s0,
           "transitions": [list(t) for t in cg.transitions], "c0": str(cg.c0)}
    if isinstance(cg, RestrictedCountdownGame):
        out["sink"] = cg.sink
    return out


def countdown_from_json(data) -> CountdownGame:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["locations"])
        s0 = int(data.get("s0", 0))
        trans = tuple((int(a), int(b), int(c)) for a, b, c in data["transitions"])
        c0 = _parse_int(data["c0"], "c0")
    except (KeyError, TypeError, ValueError) as exc:
        raise RobotGameError(f"malformed countdown game: {exc}") from None
    if "sink" in data and data["sink"] is not None:
        return RestrictedCountdownGame(n, trans, c0, s0, int(data["sink"]))
    return CountdownGame(n, trans, c0, s0)


# ------------------------------------------------------------------ base-4 encoding

def base4_digits(x: int) -> int:
    """Number of base-4 digits of a positive integer."""
    if x <= 0:
        raise ValueError("need a positive integer")
    return (x.bit_length() + 1) // 2


@dataclass(frozen=True)
class EncodingLayout:
    durations: Tuple[int, ...]   # d_0 < ... < d_{h-1}
    n: int
    k: int
    kp: int
    c0: int

    @property
    def h(self) -> int:
        return len(self.durations)

    @property
    def loc_off(self) -> int:
        return self.h

    @property
    def val_off(self) -> int:
        return self.h + self.n

    @property
    def ctl_off(self) -> int:
        return self.h + self.n + self.k

    @property
    def total_digits(self) -> int:
        return self.h + self.n + self.k + self.kp + 1

    @property
    def initial(self) -> int:
        h, n, k, kp = self.h, self.n, self.k, self.kp
        return 4 ** h + self.c0 * 4 ** (h + n) + k * 4 ** (h + n + k) + 4 ** (h + n + k + kp)

    def index(self, d: int) -> int:
        return self.durations.index(d)

    def digits(self, x: int) -> List[int]:
        """Base-4 digits, least significant first, padded to ``total_digits``."""
        out = []
        for _ in range(self.total_digits):
            x, r = divmod(x, 4)
            out.append(r)
        return out

    def parts(self, x: int) -> Tuple[List[int], List[int], List[int], List[int]]:
        dg = self.digits(x)
        a, b, c = self.loc_off, self.val_off, self.ctl_off
        return dg[:a], dg[a:b], dg[b:c], dg[c:]


def layout_for(rcg: RestrictedCountdownGame) -> EncodingLayout:
    k = base4_digits(rcg.c0)
    return EncodingLayout(rcg.durations, rcg.locations, k, base4_digits(k), rcg.c0)


DURATION_GOTO = "duration_goto"
STATE_CHOOSE = "state_choose"
FINISH = "finish"
CANCEL_ERASE = "cancel_erase"
CANCEL_REMOVE = "cancel_remove"


@dataclass(frozen=True)
class MoveCode:
    kind: str
    value: int
    params: Tuple[int, ...] = ()

    def __str__(self):
        names = {DURATION_GOTO: "Duration {} Goto {}", STATE_CHOOSE: "State {} Choose {}",
                 FINISH: "Finish", CANCEL_ERASE: "Cancel ({},{}) Erase ({},{})",
                 CANCEL_REMOVE: "Cancel ({},{}) Remove {}"}
        return names[self.kind].format(*self.params)


@dataclass
class Encoding:
    rcg: RestrictedCountdownGame
    layout: EncodingLayout
    game: RobotGame
    x0: int
    codes: List[MoveCode] = field(default_factory=list)
    reacher_first: bool = True

    def opponent_codes(self) -> List[MoveCode]:
        return [c for c in self.codes if c.kind == DURATION_GOTO]

    def reacher_codes(self) -> List[MoveCode]:
        return [c for c in self.codes if c.kind != DURATION_GOTO]

    def lookup(self, value: int, reacher: bool) -> List[MoveCode]:
        return [c for c in (self.reacher_codes() if reacher else self.opponent_codes())
                if c.value == value]

    def code(self, kind: str, *params: int) -> MoveCode:
        for c in self.codes:
            if c.kind == kind and c.params == params:
                return c
        raise KeyError((kind, params))

    def round_budget(self) -> int:
        """Rounds after which the strictly decreasing counter must be negative."""
        step = -(self.game.V[-1] + self.game.U[-1])
        return self.x0 // step + 1


def canonical_locations(rcg: RestrictedCountdownGame) -> RestrictedCountdownGame:
    """Renumber so that s0 = 0 and the sink is the last location."""
    n = rcg.locations
    if rcg.s0 == 0 and rcg.sink == n - 1:
        return rcg
    if rcg.s0 == rcg.sink:
        raise InvariantViolation("s0 and the sink coincide")
    order = [rcg.s0] + [s for s in range(n) if s not in (rcg.s0, rcg.sink)] + [rcg.sink]
    idx = {s: i for i, s in enumerate(order)}
    trans = tuple((idx[s], d, idx[t]) for s, d, t in rcg.transitions)
    return RestrictedCountdownGame(n, trans, rcg.c0, 0, n - 1)


def encode_countdown_as_robot_game(rcg: RestrictedCountdownGame) -> Encoding:
    """Base-4 encoding of a restricted countdown game (reacher moves first)."""
    rcg = canonical_locations(rcg)
    owner = rcg.duration_owner()
    L = layout_for(rcg)
    h, n, k, kp = L.h, L.n, L.k, L.kp
    codes: List[MoveCode] = []

    def dg(d: int, t: int) -> int:
        return -4 ** L.index(d) + 4 ** (h + t)

    for s, d, t in rcg.transitions:
        codes.append(MoveCode(DURATION_GOTO, dg(d, t), (d, t)))
    for d in L.durations:
        s, i = owner[d], L.index(d)
        codes.append(MoveCode(STATE_CHOOSE, 4 ** i - 4 ** (h + s) - d * 4 ** (h + n), (s, d)))
    codes.append(MoveCode(FINISH, -4 ** (h + n - 1) - k * 4 ** (h + n + k) - 4 ** (h + n + k + kp)))
    for s, d, t in rcg.transitions:
        for j in range(k):
            for a in range(4):
                codes.append(MoveCode(CANCEL_ERASE, -dg(d, t) - a * 4 ** (h + n + j) - 4 ** (h + n + k),
                                      (d, t, j, a)))
    for s, d, t in rcg.transitions:
        for j, dj in enumerate(L.durations):
            if dj != d:
                codes.append(MoveCode(CANCEL_REMOVE, -dg(d, t) - 4 ** j - 4 ** (h + n + k + kp),
                                      (d, t, dj)))
    V = tuple(c.value for c in codes if c.kind == DURATION_GOTO)
    U = tuple(c.value for c in codes if c.kind != DURATION_GOTO)
    return Encoding(rcg, L, RobotGame(U, V), L.initial, codes)


def expected_code_count(rcg: RestrictedCountdownGame) -> int:
    """Labeled reacher codes: one State/Choose per duration, Finish, Erase and Remove families."""
    L = layout_for(rcg)
    T = len(rcg.transitions)
    return L.h + 1 + T * 4 * L.k + T * (L.h - 1)


# ------------------------------------------------------------------ good encodings

GOOD_PREFIX = "GoodPrefix"
GOOD = "Good"
BAD = "Bad"
NEITHER = "Neither"


@dataclass(frozen=True)
class Classification:
    kind: str
    index: Optional[int] = None

    def __str__(self):
        return f"Bad({self.index})" if self.kind == BAD else self.kind


def _can_reach_sink(rcg: RestrictedCountdownGame) -> set:
    succ: Dict[int, set] = {}
    for s, _, t in rcg.transitions:
        succ.setdefault(s, set()).add(t)
    good = {rcg.sink}
    changed = True
    while changed:
        changed = False
        for s, ts in succ.items():
            if s not in good and ts & good:
                good.add(s)
                changed = True
    return good


def good_encoding_check(enc: Encoding, moves: Sequence[int]) -> Classification:
    """Classify a reacher-first move sequence against the good-encoding rules.

    Reacher moves sit at even indices.  The first violation of the
    first, third, fourth or fifth rule is the deviating move.  A sequence
    ending in Finish after a Goto-sink move is Good; Finish elsewhere at
    the end only breaks the second rule (Neither); moves continuing after a
    Good sequence are Neither.  A sequence without Finish is a GoodPrefix
    when it can still be completed through the transition graph.
    """
    rcg = enc.rcg
    owner = rcg.duration_owner()
    location = rcg.s0
    chosen: Optional[int] = None
    for i, value in enumerate(moves):
        reacher = i % 2 == 0
        cands = enc.lookup(value, reacher)
        if not cands:
            return Classification(BAD, i)
        code = cands[0]
        if reacher:
            if code.kind in (CANCEL_ERASE, CANCEL_REMOVE):
                return Classification(BAD, i)
            if code.kind == FINISH:
                if i == 0:
                    return Classification(BAD, i)
                complete = location == rcg.sink
                if i == len(moves) - 1:
                    return Classification(GOOD if complete else NEITHER)
                return Classification(NEITHER if complete else BAD, None if complete else i)
            s, d = code.params
            if s != location:
                return Classification(BAD, i)
            chosen = d
        else:
            d, t = code.params
            if d != chosen:
                return Classification(BAD, i)
            location = t
    # No Finish yet: can the sequence still become a good encoding?
    live = _can_reach_sink(rcg)
    if len(moves) % 2 == 1:
        ok = any(t in live for s, d, t in rcg.transitions if d == chosen)
    else:
        ok = location in live
    return Classification(GOOD_PREFIX if ok else NEITHER)


def countdown_plays(rcg: RestrictedCountdownGame) -> List[List[Tuple[int, int]]]:
    """Every maximal play as a list of (duration, target) steps from (s0, c0)."""
    moves = rcg.moves()
    plays: List[List[Tuple[int, int]]] = []

    def walk(s: int, c: int, path: List[Tuple[int, int]]):
        options = [(d, t) for d, ts in sorted(moves[s].items()) if d <= c for t in ts]
        if not options:
            plays.append(list(path))
            return
        for d, t in options:
            path.append((d, t))
            walk(t, c - d, path)
            path.pop()

    walk(rcg.s0, rcg.c0, [])
    return plays


def play_to_codes(enc: Encoding, play: Sequence[Tuple[int, int]], finish: bool = True) -> List[int]:
    """Good-encoding move values tracing a countdown play."""
    owner = enc.rcg.duration_owner()
    out = []
    for d, t in play:
        out.append(enc.code(STATE_CHOOSE, owner[d], d).value)
        out.append(enc.code(DURATION_GOTO, d, t).value)
    if finish:
        out.append(enc.code(FINISH).value)
    return out


def enumerate_countdown_games(max_locations: int = 3, max_per_location: int = 2,
                              max_duration: int = 3, c0: int = 1):
    """Every countdown game with up to ``max_locations`` locations, each having at
    most ``max_per_location`` transitions with durations in [1, max_duration]."""
    for m in range(1, max_locations + 1):
        options = [(d, t) for d in range(1, max_duration + 1) for t in range(m)]
        per_loc = [c for r in range(max_per_location + 1) for c in combinations(options, r)]

        def rec(s, acc):
            if s == m:
                yield CountdownGame(m, tuple(acc), c0)
                return
            for choice in per_loc:
                yield from rec(s + 1, acc + [(s, d, t) for d, t in choice])

        yield from rec(0, [])
