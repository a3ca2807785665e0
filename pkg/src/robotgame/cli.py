"""Command-line front end: ``robotgame <command> ...``.

Exit codes: 0 success (WIN for ``decide``), 1 LOSE / failed certification,
2 usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import List, Optional, Sequence, TextIO

from .errors import CertificationFailed, RobotGameError
from .model import RobotGame, Verdict, description_to_json, game_to_json, load_game, member
from .numtheory import (frobenius_bound, gcd_set, mutually_prime_pair, sharp_frobenius_bound,
                        sign_class)
from .play import (GreedyAdversary, GreedyReacher, Oracle, StrategyPlan, SynthesizedReacher,
                   certify, run_match)
from .reductions import (RestrictedCountdownGame, countdown_from_json,
                         encode_countdown_as_robot_game, gen_subset_sum, restrict_countdown)
from .solver import BOUND_FTILDE, BOUND_SHARP, solve


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _window(text: str):
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError("empty window")
    return lo, hi


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so that ``main`` controls streams and exit codes."""

    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="robotgame", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="print the winning-set description")
    s.add_argument("file")
    s.add_argument("--sharp-bound", action="store_true",
                   help="restrict the arena with the Sylvester-based bound")
    s.add_argument("--json", action="store_true", help="machine-readable output")
    s.add_argument("--trace", action="store_true", help="also print the solver trace")
    s.add_argument("--plot", metavar="PNG", help="render the winning set to an image")
    s.add_argument("--window", type=_window, default=(-30, 30), metavar="LO:HI",
                   help="counter range for --plot, e.g. --window=-10:10 (default -30:30)")

    s = sub.add_parser("decide", help="WIN (exit 0) or LOSE (exit 1)")
    s.add_argument("file")
    s.add_argument("x0", type=int)
    s.add_argument("--sharp-bound", action="store_true")

    s = sub.add_parser("play", help="interactive session")
    s.add_argument("file")
    s.add_argument("x0", type=int)
    s.add_argument("--as", dest="role", choices=["reacher", "opponent"], default="opponent",
                   help="which side the human plays (default: opponent)")
    s.add_argument("--reacher-first", action="store_true")
    s.add_argument("--max-rounds", type=int, default=50)

    s = sub.add_parser("oracle", help="bounded-round verdict")
    s.add_argument("file")
    s.add_argument("x0", type=int)
    s.add_argument("--rounds", type=int, required=True)
    s.add_argument("--reacher-first", action="store_true")

    s = sub.add_parser("certify", help="play the synthesized strategy against adversaries")
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--window", type=_window, default=(-30, 30), metavar="LO:HI")

    s = sub.add_parser("gen-subsetsum", help="one-player game encoding a Subset-Sum instance")
    s.add_argument("--set", type=_int_list, required=True, dest="values")
    s.add_argument("--target", type=int, required=True)

    s = sub.add_parser("gen-countdown-encoding", help="base-4 robot game from a countdown game")
    s.add_argument("file")

    s = sub.add_parser("frobenius", help="gcd, Frobenius bounds and a coprime pair")
    s.add_argument("values", type=_int_list)

    s = sub.add_parser("growth", help="record the solver runtime-growth table")
    s.add_argument("--magnitudes", type=_int_list, default=[2, 4, 8, 12, 16, 24, 32])
    s.add_argument("--games", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out-dir", default=".")
    return p


# ------------------------------------------------------------------ commands

def _bound(args) -> str:
    return BOUND_SHARP if getattr(args, "sharp_bound", False) else BOUND_FTILDE


def cmd_solve(args, out: TextIO) -> int:
    game, _ = load_game(args.file)
    desc, wit = solve(game, _bound(args))
    if args.json:
        payload = description_to_json(desc)
        if args.trace:
            payload["trace"] = wit.trace.lines()
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"{desc}\n")
        if args.trace:
            for line in wit.trace.lines():
                out.write(line + "\n")
    if args.plot:
        from .report import plot_winning_set
        plot_winning_set(game, desc, args.window[0], args.window[1], args.plot)
    return 0


def cmd_decide(args, out: TextIO) -> int:
    game, _ = load_game(args.file)
    desc, _ = solve(game, _bound(args))
    verdict = Verdict.WIN if member(desc, args.x0) else Verdict.LOSE
    out.write(verdict.value + "\n")
    return 0 if verdict is Verdict.WIN else 1


def cmd_oracle(args, out: TextIO) -> int:
    game, _ = load_game(args.file)
    if args.rounds < 0:
        raise RobotGameError("--rounds must be nonnegative")
    ok = Oracle(game).win_within(args.x0, args.rounds, args.reacher_first)
    out.write(("WIN" if ok else "NO-WIN") + f" within {args.rounds} rounds\n")
    return 0 if ok else 1


def cmd_certify(args, out: TextIO) -> int:
    game, _ = load_game(args.file)
    lo, hi = args.window
    rng = random.Random(args.seed)
    pool = list(range(lo, hi + 1))
    sample = rng.sample(pool, min(args.samples, len(pool)))
    report = certify(game, solve(game), sample, trials=args.trials, seed=args.seed)
    for line in report.lines():
        out.write(line + "\n")
    out.write(f"certified {len(report.wins)} winning and {len(report.losses)} losing values\n")
    return 0


def cmd_gen_subsetsum(args, out: TextIO) -> int:
    U, x0 = gen_subset_sum(args.values, args.target)
    out.write(json.dumps(game_to_json(RobotGame(tuple(U), (0,)), x0)) + "\n")
    return 0


def cmd_gen_countdown(args, out: TextIO) -> int:
    with open(args.file, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RobotGameError(f"{args.file}: malformed JSON ({exc})") from None
    cg = countdown_from_json(data)
    rcg = cg if isinstance(cg, RestrictedCountdownGame) else restrict_countdown(cg)
    enc = encode_countdown_as_robot_game(rcg)
    out.write(json.dumps(game_to_json(enc.game, enc.x0, convention="reacher_first")) + "\n")
    return 0


def cmd_frobenius(args, out: TextIO) -> int:
    W = args.values
    d = gcd_set(W)
    out.write(f"gcd\t{d}\n")
    if sign_class(W) == 0:
        out.write("F~\tn/a (mixed signs: every multiple of the gcd is reachable)\n")
        return 0
    out.write(f"F~\t{frobenius_bound(W)}\n")
    out.write(f"sharp\t{sharp_frobenius_bound(W)}\n")
    scaled = sorted({abs(w) // d for w in W if w})
    p, q = mutually_prime_pair(scaled)
    out.write(f"pair\t{p}\t{q}\t(of |W|/{d})\n")
    return 0


def cmd_growth(args, out: TextIO) -> int:
    from .report import growth_table, plot_growth, write_growth_csv
    rows = growth_table(args.magnitudes, args.games, args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    csv_path = os.path.join(args.out_dir, "growth.csv")
    png_path = os.path.join(args.out_dir, "growth.png")
    write_growth_csv(rows, csv_path)
    plot_growth(rows, png_path)
    out.write("magnitude\tgames\tmax_seconds\tmax_arena_vertices\n")
    for m in args.magnitudes:
        sel = [r for r in rows if r.magnitude == m]
        out.write(f"{m}\t{len(sel)}\t{max(r.seconds for r in sel):.4f}\t"
                  f"{max(r.arena_vertices for r in sel)}\n")
    out.write(f"wrote {csv_path}\nwrote {png_path}\n")
    return 0


# ------------------------------------------------------------------ interactive play

class _HumanAdversary:
    name = "human"

    def __init__(self, game, ask):
        self.game, self.ask = game, ask

    def start(self, x0):
        pass

    def move(self, counter):
        return self.ask("opponent", counter, self.game.V)


class _HumanReacher:
    def __init__(self, game, ask):
        self.game, self.ask = game, ask

    def start(self, x0):
        pass

    def move(self, counter, last_v):
        return self.ask("reacher", counter, self.game.U)


class _EndOfInput(Exception):
    pass


def cmd_play(args, out: TextIO, inp: TextIO) -> int:
    game, _ = load_game(args.file)
    desc, wit = solve(game)
    x0 = args.x0

    def ask(role, counter, legal):
        while True:
            out.write(f"counter {counter}; {role} moves {list(legal)} > ")
            out.flush()
            line = inp.readline()
            if not line:
                raise _EndOfInput
            try:
                m = int(line.strip())
            except ValueError:
                out.write(f"not an integer: {line.strip()!r}\n")
                continue
            if m in legal:
                return m
            out.write(f"illegal move {m}; choose one of {list(legal)}\n")

    winning = member(desc, x0) if not args.reacher_first else \
        any(member(desc, x0 + u) for u in game.U)
    out.write(f"game {game}; start {x0}; engine verdict: {'WIN' if winning else 'LOSE'}\n")
    if args.role == "opponent":
        human = _HumanAdversary(game, ask)
        engine = SynthesizedReacher(StrategyPlan(wit)) if winning else GreedyReacher(game, desc)
        try:
            outcome = run_match(game, x0, engine, human, args.max_rounds, args.reacher_first)
        except _EndOfInput:
            out.write("\nsession ended\n")
            return 0
    else:
        human = _HumanReacher(game, ask)
        engine = GreedyAdversary(game, desc)
        try:
            outcome = run_match(game, x0, human, engine, args.max_rounds, args.reacher_first)
        except _EndOfInput:
            out.write("\nsession ended\n")
            return 0
    out.write("\ntranscript (mover, move, counter):\n")
    for who, move, counter in outcome.transcript:
        out.write(f"{who}\t{move}\t{counter}\n")
    out.write(f"outcome {outcome}\n")
    return 0


# ------------------------------------------------------------------ entry point

COMMANDS = {
    "solve": cmd_solve, "decide": cmd_decide, "oracle": cmd_oracle, "certify": cmd_certify,
    "gen-subsetsum": cmd_gen_subsetsum, "gen-countdown-encoding": cmd_gen_countdown,
    "frobenius": cmd_frobenius, "growth": cmd_growth,
}


def main(argv: Optional[Sequence[str]] = None, stdin: Optional[TextIO] = None,
         stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.command == "play":
            return cmd_play(args, out, stdin or sys.stdin)
        return COMMANDS[args.command](args, out)
    except CertificationFailed as exc:
        err.write(f"robotgame: {exc}\n")
        return 1
    except (RobotGameError, OSError, ValueError) as exc:
        err.write(f"robotgame: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
