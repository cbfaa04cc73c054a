"""Pure-Python kernels; reference implementation for the compiled backend.

All three functions must stay output-identical with ``_kernels.pyx`` — the
backend parity tests compare them element by element.
"""

from array import array
from collections import deque

_Q = array("q")


def build_spf(n: int) -> array:
    """Smallest-prime-factor table for 0..n (spf[0] = 0, spf[1] = 1)."""
    spf = array("q", bytes(8 * (n + 1)))
    if n >= 1:
        spf[1] = 1
    for i in range(2, n + 1):
        if spf[i] == 0:
            for j in range(i, n + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


def born_free_pairs(n: int, primes_desc, alive=None) -> tuple[array, array]:
    """Greedy endpoint-disjoint selection of (x, p*x) pairs.

    Scans the given primes in the given (descending) order and, for each
    prime p, the pairs (x, p*x) by descending x, keeping every pair whose
    endpoints are still free.  ``alive``, when given, is a byte table over
    0..n restricting the pot to the in-play numbers.
    """
    occupied = bytearray(n + 1)
    lowers = array("q")
    uppers = array("q")
    for p in primes_desc:
        for x in range(n // p, 0, -1):
            px = p * x
            if occupied[x] or occupied[px]:
                continue
            if alive is not None and not (alive[x] and alive[px]):
                continue
            occupied[x] = 1
            occupied[px] = 1
            lowers.append(x)
            uppers.append(px)
    return lowers, uppers


def order_core(n: int, lowers, uppers, spf) -> tuple[array, bool, int]:
    """Order matched pairs (prime-quotient cover pairs over 1..n) into a
    pick sequence that is legal for the taxman game.

    Pairs are grouped by the rank (prime-factor count) of the upper number
    and the groups are played in increasing rank order.  Within a group a
    bipartite conflict graph connects each upper to every matched lower of
    the group it would tax; uppers of degree 1 can tax only their own
    partner, so they are emitted FIFO while degrees are decremented.

    Returns ``(picks, ok, failed_rank)`` — ``ok`` is False when some group
    runs out of degree-1 uppers before emptying, which certifies a flat
    alternating cycle at ``failed_rank``.
    """
    k = len(lowers)
    levels: dict[int, list[int]] = {}
    for i in range(k):
        v = uppers[i]
        r = 0
        while v > 1:
            v //= spf[v]
            r += 1
        levels.setdefault(r, []).append(i)

    picks = array("q")
    lower_owner = array("q", bytes(8 * (n + 1)))  # pair index + 1, 0 = free
    degree = array("q", bytes(8 * k))
    emitted = bytearray(k)

    for r in sorted(levels):
        idxs = levels[r]
        for i in idxs:
            lower_owner[lowers[i]] = i + 1
        rev: dict[int, list[int]] = {i: [] for i in idxs}
        for i in idxs:
            u = uppers[i]
            v = u
            d = 0
            while v > 1:
                p = spf[v]
                j = lower_owner[u // p]
                if j:
                    rev[j - 1].append(i)
                    d += 1
                while v % p == 0:
                    v //= p
            degree[i] = d
        queue = deque(i for i in idxs if degree[i] == 1)
        count = 0
        while queue:
            i = queue.popleft()
            emitted[i] = 1
            count += 1
            picks.append(uppers[i])
            for z in rev[i]:
                if emitted[z]:
                    continue
                degree[z] -= 1
                if degree[z] == 1:
                    queue.append(z)
        for i in idxs:
            lower_owner[lowers[i]] = 0
        if count != len(idxs):
            return picks, False, r
    return picks, True, -1
