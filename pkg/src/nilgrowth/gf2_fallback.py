"""Pure-Python GF(2) row-reduction kernels on big-integer rows.

A vector of the 2^n dimensional homogeneous component is a Python int whose
bit c is the coefficient of the monomial with code c. The reduced echelon
convention used throughout the package: the pivot of a row is its lowest set
bit, a basis is kept fully reduced (each pivot bit appears in exactly one
row), and bases are sorted by pivot.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple


def rref(rows: Iterable[int]) -> Tuple[List[int], List[int]]:
    """Reduced row echelon basis of the span of ``rows``.

    Returns ``(basis, pivots)`` with ``basis`` sorted by pivot bit and fully
    reduced: ``basis[i]`` is the unique row whose lowest set bit is
    ``pivots[i]``, and no other basis row has that bit set.
    """
    table: Dict[int, int] = {}
    for row in rows:
        row = _reduce_against(row, table)
        if row:
            piv = (row & -row).bit_length() - 1
            table[piv] = row
    # back-substitution: clear every pivot bit from the other rows, working
    # from the highest pivot down so each row is cleaned exactly once
    pivots = sorted(table)
    for i in range(len(pivots) - 1, -1, -1):
        p = pivots[i]
        mask = table[p] & ~(1 << p)
        if not mask:
            continue
        for q in pivots[i + 1 :]:
            if (mask >> q) & 1:
                table[p] ^= table[q]
                mask = table[p]
    return [table[p] for p in pivots], pivots


def _reduce_against(v: int, table: Dict[int, int]) -> int:
    while v:
        piv = (v & -v).bit_length() - 1
        row = table.get(piv)
        if row is None:
            return v
        v ^= row
    return 0


def reduce_vector(v: int, basis: Sequence[int], pivots: Sequence[int]) -> int:
    """Residual of ``v`` after elimination against an echelon basis."""
    table = dict(zip(pivots, basis))
    return _reduce_against(v, table)


def nullspace(rows: Sequence[int], nbits: int) -> List[int]:
    """Echelon basis of ``{phi : popcount(phi & r) even for every r}``.

    This is the annihilator of the row span under the standard coordinatewise
    bilinear form. ``len(result) == nbits - rank(rows)``.
    """
    basis, pivots = rref(rows)
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
    out_basis, _ = rref(out)
    return out_basis
