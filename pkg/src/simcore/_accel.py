"""Hot kernels for the lattice-path DP, with a pure-numpy fallback.

Set ``SIMCORE_DISABLE_NUMBA=1`` to force the numpy path.  Object-dtype arrays
(used when counts can exceed int64) always take the numpy path.

A DP cell is a 2-D count array plus, per row, the first and last column that
holds a nonzero entry (``first > last`` marks an empty row).  Counts are
positive, so the extents of a sum are the union of the extents of its terms.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = "SIMCORE_DISABLE_NUMBA"
EMPTY_FIRST = np.iinfo(np.int64).max // 4


def numba_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


try:  # pragma: no cover - depends on the environment
    if numba_disabled():
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

HAVE_NUMBA = njit is not None


def shift_accumulate_numpy(dst, src, first, last, dk: int, de: int, shear: int) -> None:
    """``dst[k + dk, e + de - shear*k] += src[k, e]`` for ``first[k] <= e <= last[k]``."""
    if shear == 0:
        rows, width = src.shape
        dst[dk:dk + rows, de:de + width] += src
        return
    for k in range(src.shape[0]):
        lo, hi = first[k], last[k]
        if lo > hi:
            continue
        off = de - shear * k
        dst[k + dk, lo + off:hi + off + 1] += src[k, lo:hi + 1]


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _shift_accumulate_jit(dst, src, first, last, dk, de, shear):  # pragma: no cover
        for k in range(src.shape[0]):
            off = de - shear * k
            row = dst[k + dk]
            for e in range(first[k], last[k] + 1):
                row[e + off] += src[k, e]

else:
    _shift_accumulate_jit = None


def shift_accumulate(dst, src, first, last, dk: int, de: int, shear: int,
                     backend: str | None = None) -> None:
    if backend is None:
        backend = default_backend()
    if backend == "numba" and dst.dtype == np.int64:
        if _shift_accumulate_jit is None:
            raise RuntimeError("numba backend requested but numba is unavailable")
        _shift_accumulate_jit(dst, src, first, last, dk, de, shear)
    elif backend in ("numba", "numpy"):
        shift_accumulate_numpy(dst, src, first, last, dk, de, shear)
    else:
        raise ValueError(f"unknown backend {backend!r}")


def default_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def shifted_extents(first, last, rows_out: int, dk: int, de: int, shear: int):
    """Extents of a shifted block inside an output with ``rows_out`` rows."""
    h = len(first)
    new_first = np.full(rows_out, EMPTY_FIRST, dtype=np.int64)
    new_last = np.full(rows_out, -1, dtype=np.int64)
    shift = de - shear * np.arange(h, dtype=np.int64)
    valid = first <= last
    lo = np.where(valid, first + shift, EMPTY_FIRST)
    hi = np.where(valid, last + shift, -1)
    if valid.any() and lo[valid].min() < 0:
        raise ValueError("shift moved a nonzero entry to a negative column")
    new_first[dk:dk + h] = lo
    new_last[dk:dk + h] = hi
    return new_first, new_last
