"""Sieve-based primitives: smallest prime factors, factorization, and the
prime-factor-count rank that grades the divisibility poset."""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from taxman import _core


@dataclass(frozen=True)
class SpfTable:
    """Smallest-prime-factor table covering 1..n_max.

    ``spf[k]`` is the smallest prime factor of k for 2 <= k <= n_max;
    index 1 is unused (kept so indices line up with the pot 1..N).
    """

    n_max: int
    spf: array

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    def _check(self, k: int) -> None:
        if not 1 <= k <= self.n_max:
            raise ValueError(f"{k} outside table range 1..{self.n_max}")


def build_spf(n_max: int) -> SpfTable:
    """Sieve smallest prime factors for 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return SpfTable(n_max, _core.build_spf(n_max))


def rank_of(k: int, table: SpfTable) -> int:
    """Number of prime factors of k counted with multiplicity; rank_of(1) = 0."""
    table._check(k)
    spf = table.spf
    r = 0
    while k > 1:
        k //= spf[k]
        r += 1
    return r


def factorize(k: int, table: SpfTable) -> list[tuple[int, int]]:
    """(prime, multiplicity) pairs of k with primes strictly increasing."""
    table._check(k)
    spf = table.spf
    out: list[tuple[int, int]] = []
    while k > 1:
        p = spf[k]
        m = 0
        while k % p == 0:
            k //= p
            m += 1
        out.append((p, m))
    return out


def primes_up_to(n_max: int, table: SpfTable | None = None) -> list[int]:
    """All primes <= n_max in strictly descending order."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if table is None or table.n_max < n_max:
        table = build_spf(n_max)
    spf = table.spf
    return [k for k in range(n_max, 1, -1) if spf[k] == k]


def divisors_of(k: int, table: SpfTable) -> list[int]:
    """All divisors of k (unsorted), expanded from the factorization."""
    divs = [1]
    for p, m in factorize(k, table):
        prev = divs
        divs = []
        q = 1
        for _ in range(m + 1):
            divs.extend(d * q for d in prev)
            q *= p
    return divs


def ranks_up_to(table: SpfTable) -> array:
    """Bulk rank table: ranks[k] = rank_of(k) for 1 <= k <= n_max, in O(n)."""
    n = table.n_max
    spf = table.spf
    ranks = array("q", bytes(8 * (n + 1)))
    for k in range(2, n + 1):
        ranks[k] = ranks[k // spf[k]] + 1
    return ranks
