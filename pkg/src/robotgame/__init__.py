"""Exact solver for one-dimensional robot games.

Two players alternately add integers from finite sets to a counter: the
opponent picks from ``V``, then the reacher picks from ``U``.  The reacher
wins when the counter is 0 after his move.  :func:`solve` returns a finite
description of the full winning set together with the data needed to play
(and certify) a winning strategy.
"""
from __future__ import annotations

from .errors import (CertificationFailed, DegenerateX, EmptyMoveSet, EmptyOrZeroSet,
                     InvalidBound, InvariantViolation, MixedSigns, NotCoprime,
                     RobotGameError, StrategyExhausted)
from .model import (Interval, PlayState, RobotGame, Turn, Verdict, WinSetDescription,
                    half_line, lattice, member, mirror, trivial_zero, validate)
from .solver import (BOUND_FTILDE, BOUND_SHARP, amplitude, amplitude_k, decide, pre,
                     quick_sign_checks, regularity_interval, solve)

__all__ = [
    "CertificationFailed", "DegenerateX", "EmptyMoveSet", "EmptyOrZeroSet", "InvalidBound",
    "InvariantViolation", "MixedSigns", "NotCoprime", "RobotGameError", "StrategyExhausted",
    "Interval", "PlayState", "RobotGame", "Turn", "Verdict", "WinSetDescription",
    "half_line", "lattice", "member", "mirror", "trivial_zero", "validate",
    "BOUND_FTILDE", "BOUND_SHARP", "amplitude", "amplitude_k", "decide", "pre",
    "quick_sign_checks", "regularity_interval", "solve",
]

__version__ = "0.1.0"
