"""Exact solver for one-dimensional robot games.

Step 0 seeds a set X of winning values with Pre({0}).  Step 1 grows X one
element at a time until gcd(X) equals the gcd of the winning set, using a
regularity window whose lattice points are all X-reachable.  Step 2 then
either closes the description to a full lattice or solves the remaining
bounded window on the restricted arena.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .arena import StrategyTable, solve_arena
from .errors import DegenerateX
from .model import (HALF_LINE, LATTICE, Interval, RobotGame, Verdict, WinSetDescription,
                    half_line, lattice, member, trivial_zero)
from .numtheory import (Decomposition, decompose, frobenius_bound, gcd_set,
                        sharp_frobenius_bound, sign_class)

BOUND_FTILDE = "ftilde"
BOUND_SHARP = "sharp"


def amplitude(game: RobotGame) -> Interval:
    return Interval(game.V[0] + game.U[0], game.V[-1] + game.U[-1])


def amplitude_k(game: RobotGame, k: int) -> Interval:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return amplitude(game).widen(k)


def pre(game: RobotGame, X: Iterable[int]) -> FrozenSet[int]:
    """Values from which the reacher forces the current round to end in ``X``."""
    X = frozenset(X)
    if not X:
        return frozenset()
    result = None
    for v in game.V:
        reach = {x - v - u for x in X for u in game.U}
        result = reach if result is None else result & reach
        if not result:
            break
    return frozenset(result)


def pre_lattice_window(game: RobotGame, I: Interval, d: int) -> FrozenSet[int]:
    return pre(game, I.multiples(d))


def regularity_interval(game: RobotGame, X: Iterable[int]) -> Interval:
    """Window of X-reachable-iff-divisible values used by the Step-1 loop."""
    X = frozenset(X)
    if not X or X == {0}:
        raise DegenerateX("regularity interval needs X different from {} and {0}")
    d = gcd_set(X)
    wide = amplitude_k(game, d)
    sign = sign_class(X)
    U, V = game.U, game.V
    if sign > 0:
        return wide.shift(frobenius_bound(X) - V[0] - U[0] + d)
    if sign < 0:
        return wide.shift(frobenius_bound(X) - V[-1] - U[-1] - d)
    return wide


@dataclass(frozen=True)
class SignFlags:
    positive_losing: bool
    negative_losing: bool
    pump_up: bool
    pump_down: bool


def quick_sign_checks(game: RobotGame) -> SignFlags:
    U, V = game.U, game.V
    return SignFlags(
        positive_losing=V[-1] >= -U[0],
        negative_losing=V[0] <= -U[-1],
        pump_up=U[-1] > -V[0],
        pump_down=U[0] < -V[-1],
    )


def _by_abs(values):
    return sorted(values, key=lambda t: (abs(t), -t))


def nontrivial_check(game: RobotGame) -> Optional[int]:
    """Some nonzero x with u + v = -x answerable for every v, else None."""
    cands = _by_abs(pre(game, {0}) - {0})
    return cands[0] if cands else None


@dataclass
class Generator:
    """A winning value with one recorded reacher answer per opponent move.

    ``witness[v] = (u, landing)`` with ``value + v + u == landing``;
    ``landing_decomposition[v]`` writes the landing over earlier generators.
    """

    value: int
    witness: Dict[int, Tuple[int, int]]
    landing_decomposition: Dict[int, Decomposition]
    step: int = 0


@dataclass
class SolveTrace:
    step0: FrozenSet[int] = frozenset()
    iterations: List[dict] = field(default_factory=list)
    d: Optional[int] = None
    branch: str = ""
    arena_bound: Optional[int] = None
    arena_d: Optional[int] = None
    bound_mode: str = BOUND_FTILDE

    def lines(self) -> List[str]:
        out = [f"step0 X={sorted(self.step0)}"]
        for i, it in enumerate(self.iterations):
            out.append(f"step1[{i}] d'={it['d_prime']} I={it['interval']} "
                       f"picked={it['picked']}")
        out.append(f"step1 exit d={self.d}")
        if self.arena_bound is not None:
            out.append(f"step2 {self.branch} Restr^{self.arena_bound}_{self.arena_d}")
        else:
            out.append(f"step2 {self.branch}")
        return out


@dataclass
class WitnessData:
    game: RobotGame
    description: WinSetDescription
    generators: List[Generator]
    trace: SolveTrace
    d: int = 1
    reach_bound: int = 0           # beyond this (on the sign side) lattice points are generated
    step2_pump: Optional[Dict[int, int]] = None
    pump_origin: Optional[int] = None
    arena_strategy: Optional[StrategyTable] = None
    arena_bound: Optional[int] = None

    @property
    def generator_values(self) -> Tuple[int, ...]:
        return tuple(g.value for g in self.generators)


def _canonical_half_line(sign: int, d: int, b: int, F: FrozenSet[int]) -> WinSetDescription:
    """Shrink the bound to the outermost losing lattice point of the window."""
    if sign < 0:
        inner = _canonical_half_line(1, d, -b, frozenset(-x for x in F))
        return half_line(-1, d, -inner.bound, (-x for x in inner.finite_part))
    assert all(x % d == 0 for x in F), "winning values off the lattice"
    losing = [t for t in range(b - b % d, -1, -d) if t not in F]
    top = losing[0] if losing else 0
    return half_line(1, d, top, (x for x in F if x <= top))


def _choose_landing(game: RobotGame, y: int, v: int, targets: FrozenSet[int]) -> Tuple[int, int]:
    best = None
    for u in game.U:
        z = y + v + u
        if z in targets and (best is None or (abs(z), -z) < (abs(best[1]), -best[1])):
            best = (u, z)
    assert best is not None
    return best


def solve(game: RobotGame, bound: str = BOUND_FTILDE) -> Tuple[WinSetDescription, WitnessData]:
    """Describe the full winning set and record the strategy witnesses."""
    if bound not in (BOUND_FTILDE, BOUND_SHARP):
        raise ValueError(f"unknown bound mode {bound!r}")
    U, V = game.U, game.V
    trace = SolveTrace(bound_mode=bound)
    X = set(pre(game, {0})) | {0}
    trace.step0 = frozenset(X)
    generators = [Generator(x, {v: (-x - v, 0) for v in V}, {v: {} for v in V})
                  for x in _by_abs(X - {0})]
    if X == {0}:
        trace.branch = "trivial"
        desc = trivial_zero()
        return desc, WitnessData(game, desc, generators, trace)

    # Step 1: grow X until its gcd is that of the winning set.
    while True:
        d_prime = gcd_set(X)
        I = regularity_interval(game, X)
        targets = frozenset(I.multiples(d_prime))
        Y = pre(game, targets)
        off = _by_abs(y for y in Y if y % d_prime)
        trace.iterations.append({"d_prime": d_prime, "interval": I, "Y": Y,
                                 "picked": off[0] if off else None})
        if not off:
            d = d_prime
            break
        y = off[0]
        earlier = [g for g in X if g != 0]
        witness, decomps = {}, {}
        for v in V:
            u, z = _choose_landing(game, y, v, targets)
            witness[v] = (u, z)
            dec = decompose(earlier, z)
            assert dec is not None, "regularity window point not X-reachable"
            decomps[v] = dec
        generators.append(Generator(y, witness, decomps, step=len(trace.iterations)))
        X.add(y)
    trace.d = d

    # Step 2.
    sign = sign_class(X)
    if sign == 0:
        trace.branch = "lattice_mixed"
        desc = lattice(d)
        return desc, WitnessData(game, desc, generators, trace, d=d)

    reach_bound = frobenius_bound(X)
    sharp = sharp_frobenius_bound(X)
    reach_bound = sign * min(abs(reach_bound), max(0, sign * sharp))

    amp = amplitude(game)
    if sign > 0:
        window = frozenset(t for t in amp.multiples(d) if t >= 0)
        escapes = [x for x in pre(game, window) if x < 0]
    else:
        window = frozenset(t for t in amp.multiples(d) if t <= 0)
        escapes = [x for x in pre(game, window) if x > 0]
    if escapes:
        origin = _by_abs(escapes)[0]
        phi = {}
        for v in V:
            # Pump as hard as possible toward the generated half-line.
            best = max((u for u in U if origin + v + u in window), key=lambda u: sign * u)
            phi[v] = best
        trace.branch = "lattice_pump"
        desc = lattice(d)
        return desc, WitnessData(game, desc, generators, trace, d=d, reach_bound=reach_bound,
                                 step2_pump=phi, pump_origin=origin)

    if bound == BOUND_SHARP:
        b = sign * max(0, sign * sharp)
    else:
        b = frobenius_bound(X)
    table = solve_arena(game, b, d)
    F = table.winning_values()
    trace.branch = "half_line"
    trace.arena_bound = b
    trace.arena_d = d
    desc = _canonical_half_line(sign, d, b, F)
    return desc, WitnessData(game, desc, generators, trace, d=d, reach_bound=reach_bound,
                             arena_strategy=table, arena_bound=b)


def decide(game: RobotGame, x0: int, bound: str = BOUND_FTILDE) -> Verdict:
    desc, _ = solve(game, bound)
    return Verdict.WIN if member(desc, x0) else Verdict.LOSE
