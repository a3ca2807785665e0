"""Exact integer arithmetic over finite sets of integers.

Everything here works on plain Python ints, so magnitudes are unbounded.
A *decomposition* of ``x`` over a set ``W`` is a dict ``{w: k}`` with
nonnegative ``k`` such that ``sum(k * w) == x``; an empty dict decomposes 0.
"""
from __future__ import annotations

import heapq
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Optional, Tuple

from .errors import EmptyOrZeroSet, MixedSigns, NotCoprime, RobotGameError

Decomposition = Dict[int, int]

# Largest window (in units of gcd) for which a decomposition table is built.
DP_WINDOW_LIMIT = 4_000_000


def normalize(W: Iterable[int]) -> Tuple[int, ...]:
    """Deduplicate and sort ascending."""
    return tuple(sorted({int(w) for w in W}))


def _nonzero(W: Iterable[int]) -> Tuple[int, ...]:
    return tuple(w for w in normalize(W) if w != 0)


def gcd_set(W: Iterable[int]) -> int:
    """Positive gcd of the nonzero elements of ``W``; zeros are ignored."""
    nz = _nonzero(W)
    if not nz:
        raise EmptyOrZeroSet("set has no nonzero element")
    g = 0
    for w in nz:
        g = gcd(g, w)
    return g


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout(W: Iterable[int]) -> Dict[int, int]:
    """Bezout coefficients for a finite set, folding two-integer Euclid.

    The fold runs over the elements in ascending order; zeros get
    coefficient 0.  ``sum(c * w) == gcd_set(W)`` always holds.
    """
    elems = normalize(W)
    nz = [w for w in elems if w != 0]
    if not nz:
        raise EmptyOrZeroSet("set has no nonzero element")
    coeffs = {w: 0 for w in elems}
    g = abs(nz[0])
    coeffs[nz[0]] = 1 if nz[0] > 0 else -1
    for w in nz[1:]:
        g, s, t = ext_gcd(g, w)
        for key in coeffs:
            coeffs[key] *= s
        coeffs[w] = t
    assert sum(c * w for w, c in coeffs.items()) == g
    return coeffs


def sign_class(W: Iterable[int]) -> int:
    """+1 if the nonzero part is positive, -1 if negative, 0 if mixed or empty."""
    nz = _nonzero(W)
    if not nz:
        return 0
    if nz[0] > 0:
        return 1
    if nz[-1] < 0:
        return -1
    return 0


def combination_value(decomp: Decomposition) -> int:
    return sum(w * k for w, k in decomp.items())


def _add(acc: Decomposition, other: Decomposition, times: int = 1) -> None:
    for w, k in other.items():
        if k:
            acc[w] = acc.get(w, 0) + times * k


def _clean(decomp: Decomposition) -> Decomposition:
    return {w: k for w, k in sorted(decomp.items()) if k}


# ---------------------------------------------------------------- coprime pairs

def _coprime_pair(W: Tuple[int, ...]) -> Tuple[int, int, Decomposition, Decomposition]:
    """Pair of mutually prime W-reachable integers plus their decompositions.

    ``W`` holds positive integers with gcd 1.
    """
    for i, p in enumerate(W):
        for q in W[i:]:
            if gcd(p, q) == 1:
                return p, q, {p: 1}, {q: 1}
    coeffs = [(w, a) for w, a in bezout(W).items() if a]
    pos = [(w, a) for w, a in coeffs if a > 0]
    neg = [(w, a) for w, a in coeffs if a < 0]
    if pos and neg:
        dp = {w: a for w, a in pos}
        dq = {w: -a for w, a in neg}
    else:
        # Only one sign among the coefficients: split off the first element.
        (w1, _), rest = coeffs[0], coeffs[1:]
        dp = {w1: 1}
        dq = {w: abs(a) for w, a in rest}
    p, q = combination_value(dp), combination_value(dq)
    if gcd(p, q) != 1 or p <= 0 or q <= 0:
        raise AssertionError(f"coprime pair construction failed on {W}")
    return p, q, dp, dq


def mutually_prime_pair(W: Iterable[int]) -> Tuple[int, int]:
    """Two coprime integers, both nonnegative combinations of ``W``.

    ``W`` must consist of positive integers whose gcd is 1.
    """
    elems = normalize(W)
    if not elems or elems[0] <= 0:
        raise ValueError("mutually_prime_pair needs positive integers")
    if gcd_set(elems) != 1:
        raise NotCoprime(f"gcd of {list(elems)} is not 1")
    p, q, _, _ = _coprime_pair(elems)
    return p, q


def sylvester_frobenius(p: int, q: int) -> int:
    """Greatest integer not representable by two coprime positive integers."""
    if p <= 0 or q <= 0:
        raise ValueError("sylvester_frobenius needs positive integers")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    return p * q - p - q


# ----------------------------------------------------------------- Frobenius

def _same_sign_parts(W: Iterable[int]) -> Tuple[int, int, Tuple[int, ...]]:
    """Return (sign, d, W') with W' the positive scaled-down nonzero part."""
    nz = _nonzero(W)
    if not nz:
        raise EmptyOrZeroSet("set has no nonzero element")
    sign = sign_class(nz)
    if sign == 0:
        raise MixedSigns(f"{list(nz)} has elements of both signs")
    d = gcd_set(nz)
    return sign, d, tuple(sorted(abs(w) // d for w in nz))


def frobenius_bound(W: Iterable[int]) -> int:
    """Over-approximated Frobenius bound: ``max(|W|)**2 / gcd``, 0 for singletons.

    For ``W`` inside the naturals every multiple of the gcd strictly above
    the result is W-reachable; negative sets get the mirrored statement.
    """
    sign, d, scaled = _same_sign_parts(W)
    if len(scaled) == 1:
        return 0
    top = scaled[-1] * d
    assert (top * top) % d == 0
    return sign * (top * top // d)


def _best_coprime_pair(W: Tuple[int, ...]) -> Tuple[int, int, Decomposition, Decomposition]:
    """Coprime reachable pair with the smallest Sylvester value among cheap candidates.

    Candidates are the elements, their pairwise sums and the Bezout-derived pair.
    """
    p, q, dp, dq = _coprime_pair(W)
    best = (sylvester_frobenius(p, q), p, q, dp, dq)
    if len(W) > 24:
        return best[1:]
    cands: Dict[int, Decomposition] = {w: {w: 1} for w in W}
    for i, a in enumerate(W):
        for b in W[i:]:
            dec = {a: 1}
            _add(dec, {b: 1})
            cands.setdefault(a + b, dec)
    vals = sorted(cands)
    for i, a in enumerate(vals):
        for b in vals[i:]:
            if gcd(a, b) == 1:
                f = a * b - a - b
                if f < best[0]:
                    best = (f, a, b, cands[a], cands[b])
    return best[1:]


def sharp_frobenius_bound(W: Iterable[int]) -> int:
    """Tighter bound from Sylvester's formula on a coprime reachable pair."""
    sign, d, scaled = _same_sign_parts(W)
    if len(scaled) == 1:
        return 0
    p, q, _, _ = _best_coprime_pair(scaled)
    return sign * d * sylvester_frobenius(p, q)


# ----------------------------------------------------------------- reachability

def _bitset_reachable(scaled: Tuple[int, ...], n: int) -> bool:
    mask = (1 << (n + 1)) - 1
    reach = 1
    for w in scaled:
        step = w
        while step <= n:
            reach |= (reach << step) & mask
            step *= 2
        if (reach >> n) & 1:
            return True
    return bool((reach >> n) & 1)


def _two_generator_core(p: int, q: int, n: int) -> Optional[Decomposition]:
    """Exact representation n = a*p + b*q (a, b >= 0) for coprime p, q, or None."""
    _, inv_p, _ = ext_gcd(p, q)
    a = (n * inv_p) % q
    b = (n - a * p) // q
    if b < 0:
        return None
    return _clean({p: a, q: b}) if p != q else {p: n // p}


@lru_cache(maxsize=16)
def _residue_table(scaled: Tuple[int, ...]) -> Tuple[list, list]:
    """Least reachable value in each residue class modulo the smallest generator.

    Dijkstra over the residues; ``pred[r]`` is the generator used last.
    """
    a = scaled[0]
    if a > DP_WINDOW_LIMIT:
        raise RobotGameError(f"reachability for generators as large as {a} is out of range")
    dist = [None] * a
    pred = [0] * a
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        dv, r = heapq.heappop(heap)
        if dv != dist[r]:
            continue
        for w in scaled[1:]:
            t = (r + w) % a
            nd = dv + w
            if dist[t] is None or nd < dist[t]:
                dist[t] = nd
                pred[t] = w
                heapq.heappush(heap, (nd, t))
    return dist, pred


def _residue_core(scaled: Tuple[int, ...], n: int) -> Optional[Decomposition]:
    dist, pred = _residue_table(scaled)
    a = scaled[0]
    r = n % a
    if dist[r] is None or dist[r] > n:
        return None
    out: Decomposition = {}
    m = dist[r]
    while m:
        w = pred[m % a]
        out[w] = out.get(w, 0) + 1
        m -= w
    out[a] = out.get(a, 0) + (n - dist[r]) // a
    return _clean(out)


def _exact_core(scaled: Tuple[int, ...], n: int) -> Optional[Decomposition]:
    """Decomposition of ``n`` over positive coprime ``scaled`` of any size."""
    if len(scaled) == 1:
        return {scaled[0]: n // scaled[0]} if n % scaled[0] == 0 else None
    if len(scaled) == 2:
        return _two_generator_core(scaled[0], scaled[1], n)
    if n <= DP_WINDOW_LIMIT:
        return _table_decompose(scaled, n)
    return _residue_core(scaled, n)


def reachable(W: Iterable[int], x: int) -> bool:
    """Whether ``x`` is a nonnegative integer combination of ``W``."""
    elems = normalize(W)
    if not elems:
        raise ValueError("reachable needs a nonempty set")
    if x == 0:
        return True
    nz = [w for w in elems if w != 0]
    if not nz:
        return False
    d = gcd_set(nz)
    if x % d:
        return False
    sign = sign_class(nz)
    if sign == 0:
        return True
    if (x > 0) != (sign > 0):
        return False
    _, _, scaled = _same_sign_parts(nz)
    n = abs(x) // d
    if len(scaled) == 1:
        return n % scaled[0] == 0
    if len(scaled) == 2:
        return _two_generator_core(scaled[0], scaled[1], n) is not None
    if n <= DP_WINDOW_LIMIT:
        return _bitset_reachable(scaled, n)
    p, q, _, _ = _best_coprime_pair(scaled)
    if n > sylvester_frobenius(p, q):
        return True
    return _residue_core(scaled, n) is not None


# ----------------------------------------------------------------- decomposition

@lru_cache(maxsize=64)
def _coin_table(scaled: Tuple[int, ...], size: int) -> Tuple[list, list]:
    """Fewest-terms table over ``[0, size]``: (term counts, last generator)."""
    inf = size + 1
    best = [inf] * (size + 1)
    last = [0] * (size + 1)
    best[0] = 0
    for i in range(1, size + 1):
        b, lw = inf, 0
        for w in scaled:
            if w > i:
                break
            c = best[i - w] + 1
            if c < b:
                b, lw = c, w
        best[i] = b
        last[i] = lw
    return best, last


def _table_decompose(scaled: Tuple[int, ...], n: int) -> Optional[Decomposition]:
    size = 1024
    while size < n:
        size *= 2
    best, last = _coin_table(scaled, size)
    if best[n] > size:
        return None
    out: Decomposition = {}
    while n:
        w = last[n]
        out[w] = out.get(w, 0) + 1
        n -= w
    return out


def _pair_decompose(scaled: Tuple[int, ...], n: int) -> Decomposition:
    """Decompose ``n`` above the Sylvester bound of a coprime reachable pair."""
    p, q, dp, dq = _best_coprime_pair(scaled)
    if p == q:  # p == q == 1
        return {1: n}
    _, inv_p, _ = ext_gcd(p, q)
    a = (n * inv_p) % q
    b = (n - a * p) // q
    assert b >= 0 and a * p + b * q == n
    out: Decomposition = {}
    _add(out, dp, a)
    _add(out, dq, b)
    return out


def _same_sign_decompose(nz: Tuple[int, ...], x: int) -> Optional[Decomposition]:
    sign, d, scaled = _same_sign_parts(nz)
    if x % d or (x != 0 and (x > 0) != (sign > 0)):
        return None
    n = abs(x) // d
    top = scaled[-1]
    bound = abs(frobenius_bound(nz)) // d
    if len(scaled) > 1 and bound > DP_WINDOW_LIMIT:
        p, q, _, _ = _best_coprime_pair(scaled)
        bound = min(bound, max(0, sylvester_frobenius(p, q)))
    extra = 0
    if n > bound + top:
        # Beyond the bound every value is reachable: peel off the top generator.
        extra = (n - bound - 1) // top
        n -= extra * top
    if n > DP_WINDOW_LIMIT and len(scaled) > 2 and \
            n > sylvester_frobenius(*_best_coprime_pair(scaled)[:2]):
        core = _pair_decompose(scaled, n)
    else:
        core = _exact_core(scaled, n)
    if core is None:
        return None
    if extra:
        core[top] = core.get(top, 0) + extra
    return _clean({sign * d * w: k for w, k in core.items()})


def _mixed_decompose(nz: Tuple[int, ...], x: int) -> Optional[Decomposition]:
    g = gcd_set(nz)
    if x % g:
        return None
    pos = [w for w in nz if w > 0]
    neg = [w for w in nz if w < 0]
    wp, wn = pos[0], neg[-1]
    scale = x // g
    c = {w: scale * a for w, a in bezout(nz).items()}
    # Replace each negative term a*w by |a| copies of -w, where
    # -w = (-wn - 1)*w + w*wn for w > 0 and -w = (wp - 1)*w + (-w)*wp for w < 0.
    changed = True
    while changed:
        changed = False
        for w in nz:
            a = c[w]
            if a >= 0:
                continue
            m = -a
            changed = True
            if w > 0:
                c[w] = m * (-wn - 1)
                c[wn] += m * w
            else:
                c[w] = m * (wp - 1)
                c[wp] += m * (-w)
    # Strip zero-sum blocks (|n|/g2 copies of p plus p/g2 copies of n).
    changed = True
    while changed:
        changed = False
        for p in pos:
            for n in neg:
                g2 = gcd(p, -n)
                kp, kn = -n // g2, p // g2
                t = min(c[p] // kp, c[n] // kn)
                if t > 0:
                    c[p] -= t * kp
                    c[n] -= t * kn
                    changed = True
    out = _clean(c)
    assert combination_value(out) == x
    return out


def decompose(W: Iterable[int], x: int) -> Optional[Decomposition]:
    """A nonnegative combination of ``W`` summing to ``x``, or None."""
    elems = normalize(W)
    if not elems:
        raise ValueError("decompose needs a nonempty set")
    if x == 0:
        return {}
    nz = tuple(w for w in elems if w != 0)
    if not nz:
        return None
    if sign_class(nz) == 0:
        return _mixed_decompose(nz, x)
    return _same_sign_decompose(nz, x)
