"""Independent structural checks for the base-4 countdown encoding.

The move codes are recomputed here from the published formulas (durations
d_0 < ... < d_{h-1}, locations 0..n-1 with s0 = 0 and the sink last) and
compared bit-exactly with the generated game.
"""
from __future__ import annotations

from robotgame.reductions import (CANCEL_ERASE, CANCEL_REMOVE, DURATION_GOTO, FINISH, GOOD,
                                  GOOD_PREFIX, STATE_CHOOSE, countdown_plays, good_encoding_check,
                                  play_to_codes)


def digits_needed(x):
    """floor(log4 x) + 1 for x >= 1."""
    k = 0
    while x:
        x //= 4
        k += 1
    return k


def expected_codes(rcg):
    """{(kind, params): value} straight from the code formulas."""
    D = sorted({d for _, d, _ in rcg.transitions})
    h, n = len(D), rcg.locations
    k = digits_needed(rcg.c0)
    kp = digits_needed(k)
    idx = {d: i for i, d in enumerate(D)}
    src = {d: s for s, d, _ in rcg.transitions}

    def goto(d, t):
        return -4 ** idx[d] + 4 ** (h + t)

    out = {}
    for _, d, t in rcg.transitions:
        out[(DURATION_GOTO, (d, t))] = goto(d, t)
    for d in D:
        s = src[d]
        out[(STATE_CHOOSE, (s, d))] = 4 ** idx[d] - 4 ** (h + s) - d * 4 ** (h + n)
    out[(FINISH, ())] = -4 ** (h + n - 1) - k * 4 ** (h + n + k) - 4 ** (h + n + k + kp)
    for _, d, t in rcg.transitions:
        for j in range(k):
            for a in range(4):
                out[(CANCEL_ERASE, (d, t, j, a))] = -goto(d, t) - a * 4 ** (h + n + j) \
                    - 4 ** (h + n + k)
        for j, dj in enumerate(D):
            if dj != d:
                out[(CANCEL_REMOVE, (d, t, dj))] = -goto(d, t) - 4 ** j - 4 ** (h + n + k + kp)
    initial = 4 ** h + rcg.c0 * 4 ** (h + n) + k * 4 ** (h + n + k) + 4 ** (h + n + k + kp)
    return out, initial, (h, n, k, kp)


def check_structure(enc):
    """Bit-exact codes, initial value and the sign structure of the moves."""
    rcg = enc.rcg
    codes, initial, (h, n, k, kp) = expected_codes(rcg)
    got = {(c.kind, c.params): c.value for c in enc.codes}
    assert got == codes, "move codes differ from the formulas"
    assert enc.x0 == initial
    L = enc.layout
    assert (L.h, L.n, L.k, L.kp) == (h, n, k, kp)
    assert set(enc.game.V) == {v for (kind, _), v in codes.items() if kind == DURATION_GOTO}
    assert set(enc.game.U) == {v for (kind, _), v in codes.items() if kind != DURATION_GOTO}
    assert all(v > 0 for v in enc.game.V)
    assert all(u < 0 for u in enc.game.U)
    assert max(enc.game.V) + max(enc.game.U) < 0


def _one_hot(ds):
    return sorted(ds) == [0] * (len(ds) - 1) + [1]


def check_good_encodings(enc, limit=None):
    """Replay every countdown play as a good encoding and check the digit
    invariants after each move plus the end-state equation after Finish.

    Returns the number of plays checked.
    """
    rcg = enc.rcg
    L = enc.layout
    h, n = L.h, L.n
    plays = countdown_plays(rcg)
    if limit is not None:
        plays = plays[:limit]
    for play in plays:
        moves = play_to_codes(enc, play, finish=False)
        x = enc.x0
        first, second, _, _ = L.parts(x)
        assert all(t == 0 for t in first) and _one_hot(second)
        for i, m in enumerate(moves):
            x += m
            first, second, _, _ = L.parts(x)
            if i % 2 == 0:   # reacher State/Choose
                assert _one_hot(first) and all(t == 0 for t in second), (play, i)
            else:            # opponent Duration/Goto
                assert all(t == 0 for t in first) and _one_hot(second), (play, i)
            assert good_encoding_check(enc, moves[:i + 1]).kind in (GOOD_PREFIX, "Neither")
        c_rem = rcg.c0 - sum(d for d, _ in play)
        last = play[-1][1] if play else rcg.s0
        final = x + enc.code(FINISH).value
        assert final == c_rem * 4 ** (h + n) + 4 ** (h + last) - 4 ** (h + n - 1)
        assert (final == 0) == (last == rcg.sink and c_rem == 0)
        if last == rcg.sink and play:
            assert good_encoding_check(enc, moves + [enc.code(FINISH).value]).kind == GOOD
    return len(plays)
