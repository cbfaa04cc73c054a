"""Kernel backend selection.

The hot inner loops (smallest-prime-factor sieve, born-free greedy pair
scan, and the level-by-level move ordering) exist twice: a compiled Cython
extension and a pure-Python fallback with identical signatures and bit-for-
bit identical output.  The compiled backend is preferred when importable;
set ``TAXMAN_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("TAXMAN_PURE_PYTHON"):
    from taxman._core import _purepy as _impl

    backend_name = "pure-python"
else:
    try:
        from taxman._core import _kernels as _impl  # type: ignore[no-redef]

        backend_name = "cython"
    except ImportError:
        from taxman._core import _purepy as _impl  # type: ignore[no-redef]

        backend_name = "pure-python"

build_spf = _impl.build_spf
born_free_pairs = _impl.born_free_pairs
order_core = _impl.order_core

__all__ = ["build_spf", "born_free_pairs", "order_core", "backend_name"]
