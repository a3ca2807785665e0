"""Robot game instances, winning-set descriptions and their file formats."""
from __future__ import annotations

import bisect
import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Tuple

from .errors import EmptyMoveSet, RobotGameError
from .numtheory import normalize


@dataclass(frozen=True)
class RobotGame:
    """Reacher moves ``U`` and opponent moves ``V``, both sorted and deduplicated."""

    U: Tuple[int, ...]
    V: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "U", normalize(self.U))
        object.__setattr__(self, "V", normalize(self.V))
        if not self.U:
            raise EmptyMoveSet("U")
        if not self.V:
            raise EmptyMoveSet("V")

    def __str__(self):
        fmt = lambda xs: "{" + ", ".join(map(str, xs)) + "}"
        return f"U={fmt(self.U)} V={fmt(self.V)}"


def validate(U: Iterable[int], V: Iterable[int]) -> RobotGame:
    """Build a normalized game, raising ``EmptyMoveSet`` naming the empty side."""
    return RobotGame(tuple(U), tuple(V))


def mirror(game: RobotGame) -> RobotGame:
    return RobotGame(tuple(-u for u in game.U), tuple(-v for v in game.V))


@dataclass(frozen=True)
class Interval:
    """The integer interval [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def shift(self, t: int) -> "Interval":
        return Interval(self.lo + t, self.hi + t)

    def widen(self, k: int) -> "Interval":
        return Interval(self.lo - k, self.hi + k)

    def multiples(self, d: int) -> range:
        first = -((-self.lo) // d) * d
        return range(first, self.hi + 1, d)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


class Turn(enum.Enum):
    REACHER = "reacher"
    OPPONENT = "opponent"


@dataclass
class PlayState:
    counter: int
    turn: Turn = Turn.OPPONENT
    round_count: int = 0


class Verdict(enum.Enum):
    WIN = "WIN"
    LOSE = "LOSE"


TRIVIAL_ZERO = "trivial_zero"
LATTICE = "lattice"
HALF_LINE = "half_line"


@dataclass(frozen=True)
class WinSetDescription:
    """Finite description of a winning set.

    * ``trivial_zero``: only 0 wins.
    * ``lattice``: exactly the multiples of ``d``.
    * ``half_line``: multiples of ``d`` strictly beyond ``bound`` on the
      ``sign`` side, plus ``finite_part`` (between 0 and ``bound``, holding 0).
    """

    kind: str
    d: int = 1
    sign: int = 1
    bound: int = 0
    finite_part: frozenset = field(default_factory=lambda: frozenset({0}))

    def __post_init__(self):
        if self.kind not in (TRIVIAL_ZERO, LATTICE, HALF_LINE):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.d <= 0:
            raise ValueError("d must be positive")
        if self.kind == HALF_LINE:
            if self.sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")
            if 0 not in self.finite_part:
                raise ValueError("finite_part must contain 0")
            lo, hi = sorted((0, self.bound))
            if any(not lo <= x <= hi for x in self.finite_part):
                raise ValueError("finite_part must lie between 0 and bound")
        object.__setattr__(self, "finite_part", frozenset(self.finite_part))

    def __contains__(self, x: int) -> bool:
        return member(self, x)

    def __str__(self):
        if self.kind == TRIVIAL_ZERO:
            return "TrivialZero"
        if self.kind == LATTICE:
            return f"Lattice(d={self.d})"
        fp = "{" + ", ".join(str(x) for x in sorted(self.finite_part)) + "}"
        return f"HalfLine(sign={self.sign:+d}, d={self.d}, bound={self.bound}, finite_part={fp})"


def trivial_zero() -> WinSetDescription:
    return WinSetDescription(TRIVIAL_ZERO)


def lattice(d: int) -> WinSetDescription:
    return WinSetDescription(LATTICE, d=d)


def half_line(sign: int, d: int, bound: int, finite_part: Iterable[int]) -> WinSetDescription:
    return WinSetDescription(HALF_LINE, d=d, sign=sign, bound=bound,
                             finite_part=frozenset(finite_part))


def member(desc: WinSetDescription, x: int) -> bool:
    if desc.kind == TRIVIAL_ZERO:
        return x == 0
    if desc.kind == LATTICE:
        return x % desc.d == 0
    if x in desc.finite_part:
        return True
    if x % desc.d:
        return False
    return x > desc.bound if desc.sign > 0 else x < desc.bound


def negate(desc: WinSetDescription) -> WinSetDescription:
    if desc.kind != HALF_LINE:
        return desc
    return half_line(-desc.sign, desc.d, -desc.bound, (-x for x in desc.finite_part))


def distance_to_set(desc: WinSetDescription, x: int) -> int:
    """Distance from ``x`` to the nearest member of the described set."""
    if desc.kind == TRIVIAL_ZERO:
        return abs(x)
    d = desc.d
    if desc.kind == LATTICE:
        r = x % d
        return min(r, d - r)
    if desc.sign < 0:
        return distance_to_set(negate(desc), -x)
    best = None
    pts = sorted(desc.finite_part)
    i = bisect.bisect_left(pts, x)
    for j in (i - 1, i):
        if 0 <= j < len(pts):
            dist = abs(pts[j] - x)
            best = dist if best is None else min(best, dist)
    first_tail = (desc.bound // d + 1) * d
    if x <= first_tail:
        tail = first_tail - x
    else:
        r = x % d
        tail = min(r, d - r)
    return tail if best is None else min(best, tail)


# ------------------------------------------------------------------ file formats

def _parse_int(value, what: str) -> int:
    if isinstance(value, bool):
        raise RobotGameError(f"{what}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise RobotGameError(f"{what}: expected a decimal integer string, got {value!r}")


def game_from_json(data) -> Tuple[RobotGame, Optional[int]]:
    """Parse a game object ``{"U": [...], "V": [...], "x0"?: ...}``."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "U" not in data or "V" not in data:
        raise RobotGameError('game file must be an object with keys "U" and "V"')
    for key in ("U", "V"):
        if not isinstance(data[key], list):
            raise RobotGameError(f'"{key}" must be an array')
    U = [_parse_int(u, "U") for u in data["U"]]
    V = [_parse_int(v, "V") for v in data["V"]]
    x0 = _parse_int(data["x0"], "x0") if data.get("x0") is not None else None
    return validate(U, V), x0


def game_to_json(game: RobotGame, x0: Optional[int] = None, **extra) -> dict:
    out = {"U": [str(u) for u in game.U], "V": [str(v) for v in game.V]}
    if x0 is not None:
        out["x0"] = str(x0)
    out.update(extra)
    return out


def load_game(path) -> Tuple[RobotGame, Optional[int]]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RobotGameError(f"{path}: malformed JSON ({exc})") from None
    return game_from_json(data)


def description_to_json(desc: WinSetDescription) -> dict:
    out = {"kind": desc.kind}
    if desc.kind == LATTICE:
        out["d"] = str(desc.d)
    elif desc.kind == HALF_LINE:
        out["d"] = str(desc.d)
        out["sign"] = desc.sign
        out["bound"] = str(desc.bound)
        out["finite_part"] = [str(x) for x in sorted(desc.finite_part)]
    return out


def description_from_json(data) -> WinSetDescription:
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    if kind == TRIVIAL_ZERO:
        return trivial_zero()
    if kind == LATTICE:
        return lattice(_parse_int(data["d"], "d"))
    if kind == HALF_LINE:
        return half_line(int(data["sign"]), _parse_int(data["d"], "d"),
                         _parse_int(data["bound"], "bound"),
                         (_parse_int(x, "finite_part") for x in data["finite_part"]))
    raise RobotGameError(f"unknown description kind {kind!r}")
