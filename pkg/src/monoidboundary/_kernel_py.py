"""Pure-Python twin of the compiled kernel (same packed-word API).

Kept import-compatible with ``_kernel_c`` so the dispatcher can select
either; this one is the fallback and the benchmark baseline.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

RULE_HEAD = (1, 1, 3, 3, 4, 5)
RULE_TARG = (6, 7, 6, 7, 6, 7)
RULE_SHIFT = (0, 1, 1, 0, 0, 0)
RULE_TAIL = (0, 0, 0, 0, 1, 1)

IS_COMPILED = False


def _unpack(w: int) -> List[int]:
    L = w >> 56
    return [(w >> (8 * i)) & 0xFF for i in range(L)]


def _pack(buf: List[int]) -> int:
    w = len(buf) << 56
    for i, b in enumerate(buf):
        w |= b << (8 * i)
    return w


def _kind(b: int) -> int:
    return b >> 5


def _idx(b: int) -> int:
    return (b & 31) - 16


def _mk(kind: int, idx: int) -> int:
    return (kind << 5) | (idx + 16)


def nf(w: int, mask: int) -> int:
    buf = _unpack(w)
    i = 0
    while True:
        hit = -1
        L = len(buf)
        start = i
        while i <= L - 3:
            for r in range(6):
                if not mask & (1 << r):
                    continue
                if (_kind(buf[i]) == RULE_HEAD[r] and _kind(buf[i + 1]) == 2
                        and _kind(buf[i + 2]) == RULE_TARG[r]
                        and (not RULE_TAIL[r] or i + 3 < L)):
                    hit = r
                    break
            if hit >= 0:
                break
            i += 1
        if hit < 0:
            if start == 0:
                return _pack(buf)
            i = 0
            continue
        n = _idx(buf[i + 2]) + RULE_SHIFT[hit]
        buf[i:i + 3] = [_mk(2, 0), _mk(RULE_TARG[hit], n)]
        i = max(i - 3, 0)


def neighbors(w: int, mask: int, maxlen: int) -> List[int]:
    buf = _unpack(w)
    L = len(buf)
    out = []
    for i in range(L - 2):
        for r in range(6):
            if not mask & (1 << r):
                continue
            if (_kind(buf[i]) == RULE_HEAD[r] and _kind(buf[i + 1]) == 2
                    and _kind(buf[i + 2]) == RULE_TARG[r]
                    and (not RULE_TAIL[r] or i + 3 < L)):
                nb = buf[:i] + [_mk(2, 0), _mk(RULE_TARG[r], _idx(buf[i + 2]) + RULE_SHIFT[r])] + buf[i + 3:]
                out.append(_pack(nb))
    if L + 1 <= maxlen:
        for i in range(L - 1):
            if _kind(buf[i]) != 2:
                continue
            for r in range(6):
                if not mask & (1 << r):
                    continue
                if _kind(buf[i + 1]) != RULE_TARG[r]:
                    continue
                if RULE_TAIL[r] and i + 2 >= L:
                    continue
                n = _idx(buf[i + 1]) - RULE_SHIFT[r]
                if not -16 <= n <= 15:
                    continue
                nb = buf[:i] + [_mk(RULE_HEAD[r], 0), _mk(2, 0), _mk(RULE_TARG[r], n)] + buf[i + 2:]
                out.append(_pack(nb))
    return out


def class_members(w: int, mask: int, maxlen: int) -> List[int]:
    """The connected component of w in the length-bounded undirected rewrite graph."""
    seen = {w}
    frontier = [w]
    pos = 0
    while pos < len(frontier):
        v = frontier[pos]
        pos += 1
        for u in neighbors(v, mask, maxlen):
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return frontier


def verify_partition(plain_codes, idx_lo, idx_hi, maxlen, mask) -> Dict:
    """See the compiled twin for the argument contract and the proof sketch."""
    if maxlen > 7:
        raise ValueError("packed words support length <= 7")
    letters = [_mk(k, 0) for k in plain_codes]
    for n in range(idx_lo, idx_hi + 1):
        letters.append(_mk(6, n))
        letters.append(_mk(7, n))

    roots = [0]
    words = [()]
    prev = [()]
    for _ in range(maxlen):
        prev = [w + (b,) for w in prev for b in letters]
        words.extend(prev)
    for w in words[1:]:
        roots.append(nf(_pack(list(w)), mask))
    n_seeds = len(words)
    roots = sorted(set(roots))

    closure_nodes = 0
    seed_members = 0
    ok = True
    counterexample = None
    plain_ok = set(plain_codes)
    for root in roots:
        if not ok:
            break
        for v in class_members(root, mask, maxlen):
            if nf(v, mask) != root:
                ok = False
                counterexample = (v, nf(v, mask), root)
                break
            closure_nodes += 1
            good = True
            for b in _unpack(v):
                k = _kind(b)
                if k >= 6:
                    if not idx_lo <= _idx(b) <= idx_hi:
                        good = False
                        break
                elif k not in plain_ok:
                    good = False
                    break
            if good:
                seed_members += 1
    return {
        "seeds": n_seeds,
        "classes": len(roots),
        "closure_nodes": closure_nodes,
        "seed_members": seed_members,
        "ok": ok and seed_members == n_seeds,
        "counterexample": counterexample,
    }
