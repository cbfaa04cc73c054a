# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot loops.

Must stay output-identical with ``_purepy.py``, element for element — the
backend parity tests enforce this.
"""

from cpython cimport array

import array

cdef array.array _LONG_TEMPLATE = array.array('q', [])


def build_spf(long long n):
    """Smallest-prime-factor table for 0..n (spf[0] = 0, spf[1] = 1)."""
    cdef array.array out = array.clone(_LONG_TEMPLATE, n + 1, zero=True)
    cdef long long[::1] spf = out
    cdef long long i, j
    if n >= 1:
        spf[1] = 1
    for i in range(2, n + 1):
        if spf[i] == 0:
            j = i
            while j <= n:
                if spf[j] == 0:
                    spf[j] = i
                j += i
    return out


def born_free_pairs(long long n, primes_desc, alive=None):
    """Greedy endpoint-disjoint selection of (x, p*x) pairs; see _purepy."""
    cdef bytearray occ_b = bytearray(n + 1)
    cdef unsigned char[::1] occ = occ_b
    if alive is None:
        alive = b'\x01' * (n + 1)
    cdef const unsigned char[::1] alv = alive
    cdef array.array lowers = array.clone(_LONG_TEMPLATE, n // 2 + 1, zero=False)
    cdef array.array uppers = array.clone(_LONG_TEMPLATE, n // 2 + 1, zero=False)
    cdef long long[::1] lo = lowers
    cdef long long[::1] up = uppers
    cdef Py_ssize_t cnt = 0
    cdef long long p, x, px
    for p_obj in primes_desc:
        p = p_obj
        x = n // p
        while x >= 1:
            px = p * x
            if occ[x] == 0 and occ[px] == 0 and alv[x] != 0 and alv[px] != 0:
                occ[x] = 1
                occ[px] = 1
                lo[cnt] = x
                up[cnt] = px
                cnt += 1
            x -= 1
    array.resize(lowers, cnt)
    array.resize(uppers, cnt)
    return lowers, uppers


def order_core(long long n, lowers_obj, uppers_obj, spf_obj):
    """Level-by-level FIFO ordering of matched cover pairs; see _purepy."""
    cdef long long[::1] lowers = lowers_obj
    cdef long long[::1] uppers = uppers_obj
    cdef long long[::1] spf = spf_obj
    cdef Py_ssize_t k = lowers.shape[0]
    cdef array.array picks_arr = array.clone(_LONG_TEMPLATE, k, zero=False)
    if k == 0:
        array.resize(picks_arr, 0)
        return picks_arr, True, -1
    cdef long long[::1] picks = picks_arr

    cdef array.array rank_arr = array.clone(_LONG_TEMPLATE, k, zero=True)
    cdef long long[::1] rank = rank_arr
    cdef long long maxrank = 0, v, r
    cdef Py_ssize_t i
    for i in range(k):
        v = uppers[i]
        r = 0
        while v > 1:
            v //= spf[v]
            r += 1
        rank[i] = r
        if r > maxrank:
            maxrank = r

    # stable counting sort of pair indices by rank
    cdef array.array start_arr = array.clone(_LONG_TEMPLATE, maxrank + 2, zero=True)
    cdef long long[::1] start = start_arr
    for i in range(k):
        start[rank[i] + 1] += 1
    for r in range(1, maxrank + 2):
        start[r] += start[r - 1]
    cdef array.array order_arr = array.clone(_LONG_TEMPLATE, k, zero=False)
    cdef long long[::1] order = order_arr
    cdef array.array fill_arr = array.clone(_LONG_TEMPLATE, maxrank + 1, zero=True)
    cdef long long[::1] fill = fill_arr
    for i in range(k):
        r = rank[i]
        order[start[r] + fill[r]] = i
        fill[r] += 1

    cdef array.array owner_arr = array.clone(_LONG_TEMPLATE, n + 1, zero=True)
    cdef long long[::1] owner = owner_arr          # pair index + 1, 0 = free
    cdef array.array degree_arr = array.clone(_LONG_TEMPLATE, k, zero=True)
    cdef long long[::1] degree = degree_arr
    cdef bytearray em_b = bytearray(k)
    cdef unsigned char[::1] emitted = em_b

    # 16 exceeds the max count of distinct primes of any 64-bit value's
    # divisor chain at these scales
    cdef array.array esrc_arr = array.clone(_LONG_TEMPLATE, 16 * k, zero=False)
    cdef array.array edst_arr = array.clone(_LONG_TEMPLATE, 16 * k, zero=False)
    cdef long long[::1] esrc = esrc_arr
    cdef long long[::1] edst = edst_arr
    cdef array.array rpos_arr = array.clone(_LONG_TEMPLATE, k + 1, zero=True)
    cdef long long[::1] rev_pos = rpos_arr
    cdef array.array rfill_arr = array.clone(_LONG_TEMPLATE, k, zero=True)
    cdef long long[::1] rev_fill = rfill_arr
    cdef array.array ritems_arr = array.clone(_LONG_TEMPLATE, 16 * k, zero=False)
    cdef long long[::1] rev_items = ritems_arr
    cdef array.array queue_arr = array.clone(_LONG_TEMPLATE, k, zero=False)
    cdef long long[::1] queue = queue_arr

    cdef Py_ssize_t lev_lo, lev_hi, e, m, pc = 0
    cdef Py_ssize_t pos, qhead, qtail, emitted_count
    cdef long long u, p, gi, gj, z, running

    for r in range(maxrank + 1):
        lev_lo = start[r]
        lev_hi = start[r + 1]
        if lev_lo == lev_hi:
            continue
        for pos in range(lev_lo, lev_hi):
            gi = order[pos]
            owner[lowers[gi]] = gi + 1
        # collect conflict edges upper -> matched lower of this level
        m = 0
        for pos in range(lev_lo, lev_hi):
            gi = order[pos]
            u = uppers[gi]
            v = u
            while v > 1:
                p = spf[v]
                gj = owner[u // p]
                if gj != 0:
                    esrc[m] = gi
                    edst[m] = gj - 1
                    degree[gi] += 1
                    m += 1
                while v % p == 0:
                    v //= p
        # reverse adjacency (CSR grouped by the lower's pair index)
        for e in range(m):
            rev_fill[edst[e]] += 1
        running = 0
        for pos in range(lev_lo, lev_hi):
            gi = order[pos]
            rev_pos[gi] = running
            running += rev_fill[gi]
            rev_fill[gi] = 0
        for e in range(m):
            gj = edst[e]
            rev_items[rev_pos[gj] + rev_fill[gj]] = esrc[e]
            rev_fill[gj] += 1

        qhead = 0
        qtail = 0
        for pos in range(lev_lo, lev_hi):
            gi = order[pos]
            if degree[gi] == 1:
                queue[qtail] = gi
                qtail += 1
        emitted_count = 0
        while qhead < qtail:
            gi = queue[qhead]
            qhead += 1
            emitted[gi] = 1
            emitted_count += 1
            picks[pc] = uppers[gi]
            pc += 1
            for e in range(rev_pos[gi], rev_pos[gi] + rev_fill[gi]):
                z = rev_items[e]
                if emitted[z]:
                    continue
                degree[z] -= 1
                if degree[z] == 1:
                    queue[qtail] = z
                    qtail += 1
        for pos in range(lev_lo, lev_hi):
            owner[lowers[order[pos]]] = 0
        if emitted_count != lev_hi - lev_lo:
            array.resize(picks_arr, pc)
            return picks_arr, False, r

    array.resize(picks_arr, pc)
    return picks_arr, True, -1
