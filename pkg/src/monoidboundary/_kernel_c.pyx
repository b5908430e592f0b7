# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels for the brute-force word-problem oracles.

Words of length <= 7 are packed into a uint64: letter i occupies bits
8i..8i+7 (3-bit kind code | 5-bit biased index), the length sits in bits
56..59.  Kind codes: a=1 b=2 c=3 d=4 f=5 x=6 y=7; index bias +16.

The six rule slots match monoidboundary._kernel.RULES; a presentation
enables a subset of them through a bitmask.
"""

from libc.stdint cimport uint64_t, uint8_t, int64_t
from libcpp.vector cimport vector
from libcpp.unordered_set cimport unordered_set
from libcpp.algorithm cimport sort as cpp_sort

cdef int[6] RULE_HEAD = [1, 1, 3, 3, 4, 5]
cdef int[6] RULE_TARG = [6, 7, 6, 7, 6, 7]
cdef int[6] RULE_SHIFT = [0, 1, 1, 0, 0, 0]
cdef int[6] RULE_TAIL = [0, 0, 0, 0, 1, 1]

IS_COMPILED = True

cdef inline int wlen(uint64_t w) nogil:
    return <int>(w >> 56)

cdef inline int unpack(uint64_t w, uint8_t* buf) nogil:
    cdef int L = wlen(w), i
    for i in range(L):
        buf[i] = <uint8_t>((w >> (8 * i)) & 0xFF)
    return L

cdef inline uint64_t pack(uint8_t* buf, int L) nogil:
    cdef uint64_t w = (<uint64_t>L) << 56
    cdef int i
    for i in range(L):
        w |= (<uint64_t>buf[i]) << (8 * i)
    return w

cdef inline int kind_of(uint8_t b) nogil:
    return b >> 5

cdef inline int idx_of(uint8_t b) nogil:
    return (b & 31) - 16

cdef inline uint8_t mk(int kind, int idx) nogil:
    return <uint8_t>((kind << 5) | (idx + 16))


cdef uint64_t c_nf(uint64_t w, int mask) nogil:
    cdef uint8_t buf[8]
    cdef int L = unpack(w, buf)
    cdef int i = 0, j, r, hit, n, start
    while True:
        hit = -1
        start = i
        while i <= L - 3:
            for r in range(6):
                if not (mask & (1 << r)):
                    continue
                if kind_of(buf[i]) == RULE_HEAD[r] and kind_of(buf[i + 1]) == 2 \
                        and kind_of(buf[i + 2]) == RULE_TARG[r]:
                    if RULE_TAIL[r] and i + 3 >= L:
                        continue
                    hit = r
                    break
            if hit >= 0:
                break
            i += 1
        if hit < 0:
            if start == 0:
                return pack(buf, L)
            i = 0
            continue
        n = idx_of(buf[i + 2]) + RULE_SHIFT[hit]
        buf[i] = mk(2, 0)
        buf[i + 1] = mk(RULE_TARG[hit], n)
        for j in range(i + 2, L - 1):
            buf[j] = buf[j + 1]
        L -= 1
        i = i - 3 if i >= 3 else 0


cdef void c_neighbors(uint64_t w, int mask, int maxlen, vector[uint64_t]* out) nogil:
    """All single-step rewrites of w, forward and backward, of length <= maxlen."""
    cdef uint8_t buf[8]
    cdef uint8_t nb[8]
    cdef int L = unpack(w, buf)
    cdef int i, j, r, n
    # forward: apply an enabled rule at position i
    for i in range(L - 2):
        for r in range(6):
            if not (mask & (1 << r)):
                continue
            if kind_of(buf[i]) == RULE_HEAD[r] and kind_of(buf[i + 1]) == 2 \
                    and kind_of(buf[i + 2]) == RULE_TARG[r] \
                    and (not RULE_TAIL[r] or i + 3 < L):
                for j in range(i):
                    nb[j] = buf[j]
                nb[i] = mk(2, 0)
                nb[i + 1] = mk(RULE_TARG[r], idx_of(buf[i + 2]) + RULE_SHIFT[r])
                for j in range(i + 3, L):
                    nb[j - 1] = buf[j]
                out.push_back(pack(nb, L - 1))
    # backward: insert a head letter in front of  b t_n  (un-applying a rule)
    if L + 1 > maxlen:
        return
    for i in range(L - 1):
        if kind_of(buf[i]) != 2:
            continue
        for r in range(6):
            if not (mask & (1 << r)):
                continue
            if kind_of(buf[i + 1]) != RULE_TARG[r]:
                continue
            if RULE_TAIL[r] and i + 2 >= L:
                continue
            n = idx_of(buf[i + 1]) - RULE_SHIFT[r]
            if n < -16 or n > 15:
                continue
            for j in range(i):
                nb[j] = buf[j]
            nb[i] = mk(RULE_HEAD[r], 0)
            nb[i + 1] = mk(2, 0)
            nb[i + 2] = mk(RULE_TARG[r], n)
            for j in range(i + 2, L):
                nb[j + 1] = buf[j]
            out.push_back(pack(nb, L + 1))


def nf(w, mask):
    return c_nf(<uint64_t>w, mask)


def neighbors(w, mask, maxlen):
    cdef vector[uint64_t] out
    c_neighbors(<uint64_t>w, mask, maxlen, &out)
    return [out[i] for i in range(out.size())]


def class_members(w, mask, maxlen):
    """The connected component of w in the length-bounded undirected rewrite graph."""
    cdef unordered_set[uint64_t] seen
    cdef vector[uint64_t] frontier, nbrs
    cdef uint64_t v, u
    cdef size_t i
    frontier.push_back(<uint64_t>w)
    seen.insert(<uint64_t>w)
    cdef size_t pos = 0
    while pos < frontier.size():
        v = frontier[pos]
        pos += 1
        nbrs.clear()
        c_neighbors(v, mask, maxlen, &nbrs)
        for i in range(nbrs.size()):
            u = nbrs[i]
            if seen.find(u) == seen.end():
                seen.insert(u)
                frontier.push_back(u)
    return [frontier[i] for i in range(frontier.size())]


cdef uint64_t c_seed_count(int n_letters, int maxlen) nogil:
    cdef uint64_t total = 1, p = 1
    cdef int L
    for L in range(1, maxlen + 1):
        p *= n_letters
        total += p
    return total


def verify_partition(plain_codes, idx_lo, idx_hi, maxlen, mask):
    """Check that normal-form equality matches length-bounded rewrite reachability.

    Seeds are all words of length <= maxlen over the given plain kinds and
    x/y indices in [idx_lo, idx_hi].  Since every rewrite changes length by
    one and reduction never lengthens, components coincide with normal-form
    classes iff every edge in the closure graph joins words with the same
    normal form; that local condition is verified on the component of every
    distinct seed normal form.
    """
    if maxlen > 7:
        raise ValueError("packed words support length <= 7")
    cdef vector[uint64_t] letters
    cdef bint[8] plain_ok
    cdef int k, n
    for k in range(8):
        plain_ok[k] = False
    for k in plain_codes:
        plain_ok[k] = True
        letters.push_back(<uint64_t>mk(k, 0))
    for n in range(idx_lo, idx_hi + 1):
        letters.push_back(<uint64_t>mk(6, n))
        letters.push_back(<uint64_t>mk(7, n))
    cdef int n_letters = <int>letters.size()
    cdef int c_maxlen = maxlen, c_mask = mask
    cdef int c_lo = idx_lo, c_hi = idx_hi

    cdef vector[uint64_t] roots
    cdef uint64_t n_seeds = c_seed_count(n_letters, c_maxlen)
    roots.reserve(<size_t>n_seeds)

    cdef int[8] odo
    cdef uint8_t buf[8]
    cdef int L, i, pos
    with nogil:
        roots.push_back(0)  # the empty word is its own normal form
        for L in range(1, c_maxlen + 1):
            for i in range(L):
                odo[i] = 0
            while True:
                for i in range(L):
                    buf[i] = <uint8_t>letters[odo[i]]
                roots.push_back(c_nf(pack(buf, L), c_mask))
                pos = L - 1
                while pos >= 0:
                    odo[pos] += 1
                    if odo[pos] < n_letters:
                        break
                    odo[pos] = 0
                    pos -= 1
                if pos < 0:
                    break
        cpp_sort(roots.begin(), roots.end())

    # unique roots in place
    cdef size_t m = 0, j
    for j in range(roots.size()):
        if m == 0 or roots[j] != roots[m - 1]:
            roots[m] = roots[j]
            m += 1
    roots.resize(m)

    cdef uint64_t closure_nodes = 0, seed_members = 0
    cdef bint ok = True
    cdef uint64_t bad_word = 0, bad_nf = 0, bad_root = 0
    cdef unordered_set[uint64_t] seen
    cdef vector[uint64_t] frontier, nbrs
    cdef uint64_t root, v, u
    cdef size_t p2, q
    cdef int kk, ii
    cdef bint allowed
    with nogil:
        for j in range(roots.size()):
            if not ok:
                break
            root = roots[j]
            seen.clear()
            frontier.clear()
            seen.insert(root)
            frontier.push_back(root)
            p2 = 0
            while p2 < frontier.size():
                v = frontier[p2]
                p2 += 1
                if c_nf(v, c_mask) != root:
                    ok = False
                    bad_word = v
                    bad_nf = c_nf(v, c_mask)
                    bad_root = root
                    break
                closure_nodes += 1
                L = unpack(v, buf)
                allowed = True
                for ii in range(L):
                    kk = kind_of(buf[ii])
                    if kk >= 6:
                        if idx_of(buf[ii]) < c_lo or idx_of(buf[ii]) > c_hi:
                            allowed = False
                            break
                    elif not plain_ok[kk]:
                        allowed = False
                        break
                if allowed:
                    seed_members += 1
                nbrs.clear()
                c_neighbors(v, c_mask, c_maxlen, &nbrs)
                for q in range(nbrs.size()):
                    u = nbrs[q]
                    if seen.find(u) == seen.end():
                        seen.insert(u)
                        frontier.push_back(u)

    return {
        "seeds": int(n_seeds),
        "classes": int(roots.size()),
        "closure_nodes": int(closure_nodes),
        "seed_members": int(seed_members),
        "ok": bool(ok) and int(seed_members) == int(n_seeds),
        "counterexample": None if ok else (int(bad_word), int(bad_nf), int(bad_root)),
    }
