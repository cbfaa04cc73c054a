"""Parity between the compiled kernels and the pure-Python fallback."""

import random
from array import array

import pytest

from taxman import _core
from taxman._core import _purepy
from taxman.cover_graph import build_divisor_cover_graph
from taxman.number_theory import build_spf, primes_up_to

_kernels = pytest.importorskip(
    "taxman._core._kernels", reason="compiled backend not built"
)


def test_active_backend_reported():
    from taxman import backend_name

    assert backend_name in ("cython", "pure-python")


@pytest.mark.parametrize("n", [1, 2, 3, 17, 256, 9999])
def test_spf_parity(n):
    assert list(_purepy.build_spf(n)) == list(_kernels.build_spf(n))


@pytest.mark.parametrize("n", [1, 2, 13, 100, 4321])
def test_born_free_parity(n):
    spf = build_spf(n)
    primes = primes_up_to(n, spf) if n >= 2 else []
    pure = _purepy.born_free_pairs(n, primes)
    fast = _kernels.born_free_pairs(n, primes)
    assert list(pure[0]) == list(fast[0])
    assert list(pure[1]) == list(fast[1])


def test_born_free_parity_restricted():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 400)
        spf = build_spf(n)
        primes = primes_up_to(n, spf)
        alive = bytearray(n + 1)
        for k in range(1, n + 1):
            alive[k] = rng.random() < 0.6
        pure = _purepy.born_free_pairs(n, primes, alive)
        fast = _kernels.born_free_pairs(n, primes, bytes(alive))
        assert list(pure[0]) == list(fast[0])
        assert list(pure[1]) == list(fast[1])


def test_order_core_parity_random_matchings():
    rng = random.Random(99)
    for _ in range(150):
        n = rng.randint(2, 300)
        spf = build_spf(n)
        g = build_divisor_cover_graph(n, spf)
        edges = list(g.edges)
        rng.shuffle(edges)
        used, pairs = set(), []
        for lo, up, _w in edges:
            if lo not in used and up not in used and rng.random() < 0.75:
                used.update((lo, up))
                pairs.append((lo, up))
        pairs.sort()
        lowers = array("q", [p[0] for p in pairs])
        uppers = array("q", [p[1] for p in pairs])
        pure = _purepy.order_core(n, lowers, uppers, spf.spf)
        fast = _kernels.order_core(n, lowers, uppers, spf.spf)
        assert list(pure[0]) == list(fast[0])
        assert pure[1] == fast[1]
        assert pure[2] == fast[2]


def test_selected_backend_functions_are_importable():
    assert callable(_core.build_spf)
    assert callable(_core.born_free_pairs)
    assert callable(_core.order_core)
