"""GF(2) kernel facade: compiled extension when available, pure Python otherwise.

All callers work with big-integer rows; this module packs them into uint64
matrices when the compiled path is worthwhile. Set ``NILGROWTH_GF2_BACKEND``
to ``ext``, ``py`` or ``auto`` (default) to override selection.
"""

from __future__ import annotations

import os
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import gf2_fallback

try:
    from . import _gf2core
except ImportError:  # extension not built; the fallback is fully equivalent
    _gf2core = None

_MODE = os.environ.get("NILGROWTH_GF2_BACKEND", "auto")
if _MODE not in ("auto", "ext", "py"):
    _MODE = "auto"

# below this many row*word operations the packing overhead dominates
_PACK_THRESHOLD = 1 << 14


def backend_name() -> str:
    if _gf2core is not None and _MODE in ("auto", "ext"):
        return "ext"
    return "py"


def set_backend(mode: str) -> None:
    """Force backend selection; used by tests and the benchmark."""
    global _MODE
    if mode not in ("auto", "ext", "py"):
        raise ValueError(f"unknown gf2 backend {mode!r}")
    _MODE = mode


def _words_for(nbits: int) -> int:
    return max(1, (nbits + 63) >> 6)


def pack_rows(rows: Sequence[int], nbits: int) -> np.ndarray:
    words = _words_for(nbits)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    nbytes = words * 8
    for i, row in enumerate(rows):
        out[i] = np.frombuffer(row.to_bytes(nbytes, "little"), dtype=np.uint64)
    return out


def unpack_rows(mat: np.ndarray, count: Optional[int] = None) -> List[int]:
    n = mat.shape[0] if count is None else count
    return [int.from_bytes(mat[i].tobytes(), "little") for i in range(n)]


def _use_ext(nrows: int, nbits: int) -> bool:
    if _gf2core is None or _MODE == "py":
        return False
    if _MODE == "ext":
        return True
    return nrows * _words_for(nbits) >= _PACK_THRESHOLD


def rref(rows: Sequence[int], nbits: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon basis and pivot list for the span of ``rows``."""
    if not rows:
        return [], []
    if _use_ext(len(rows), nbits):
        mat = pack_rows(rows, nbits)
        pivots = _gf2core.rref(mat)
        return unpack_rows(mat, len(pivots)), list(pivots)
    return gf2_fallback.rref(rows)


def reduce_vector(v: int, basis: Sequence[int], pivots: Sequence[int]) -> int:
    return gf2_fallback.reduce_vector(v, basis, pivots)


def nullspace(rows: Sequence[int], nbits: int) -> List[int]:
    """Echelon basis of the annihilator of the row span inside nbits coords."""
    if not rows:
        return [1 << j for j in range(nbits)]
    if _use_ext(len(rows), nbits):
        basis, pivots = rref(rows, nbits)
        return _nullspace_from_rref(basis, pivots, nbits)
    return gf2_fallback.nullspace(rows, nbits)


def _nullspace_from_rref(basis: Sequence[int], pivots: Sequence[int], nbits: int) -> List[int]:
    pivot_set = set(pivots)
    out: List[int] = []
    for j in range(nbits):
        if j in pivot_set:
            continue
        phi = 1 << j
        for row, p in zip(basis, pivots):
            if (row >> j) & 1:
                phi |= 1 << p
        out.append(phi)
    out_basis, _ = gf2_fallback.rref(out)
    return out_basis


def parity(a: int, b: int) -> int:
    """GF(2) pairing: parity of the overlap of two coordinate masks."""
    return (a & b).bit_count() & 1
