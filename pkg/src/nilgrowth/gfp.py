"""Dense row reduction over small odd prime fields.

Rows are tuples of ints in [0, p). Only small ambient dimensions pass through
here (the GF(2) bit-packed path handles the default field); this module is the
correctness cross-check for p in {3, 5, ...}.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

Row = Tuple[int, ...]


def _leading(row: Sequence[int]) -> int:
    for i, a in enumerate(row):
        if a:
            return i
    return -1


def rref(rows: Sequence[Sequence[int]], p: int) -> Tuple[List[Row], List[int]]:
    """Reduced echelon basis (leading coefficients 1, sorted by pivot)."""
    work: List[List[int]] = [list(r) for r in rows]
    basis: List[List[int]] = []
    pivots: List[int] = []
    for row in work:
        row = row[:]
        for b, piv in zip(basis, pivots):
            f = row[piv] % p
            if f:
                for c in range(piv, len(row)):
                    row[c] = (row[c] - f * b[c]) % p
        lead = _leading(row)
        if lead < 0:
            continue
        inv = pow(row[lead], p - 2, p)
        row = [(inv * a) % p for a in row]
        for b in basis:
            f = b[lead] % p
            if f:
                for c in range(lead, len(row)):
                    b[c] = (b[c] - f * row[c]) % p
        basis.append(row)
        pivots.append(lead)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [tuple(basis[i]) for i in order], sorted(pivots)


def reduce_vector(v: Sequence[int], basis: Sequence[Row], pivots: Sequence[int], p: int) -> Row:
    row = list(v)
    for b, piv in zip(basis, pivots):
        f = row[piv] % p
        if f:
            for c in range(piv, len(row)):
                row[c] = (row[c] - f * b[c]) % p
    return tuple(a % p for a in row)


def nullspace(rows: Sequence[Row], ncols: int, p: int) -> List[Row]:
    """Annihilator basis under the standard dot product sum_i a_i b_i mod p."""
    basis, pivots = rref(rows, p)
    pivot_set = set(pivots)
    out: List[Row] = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        phi = [0] * ncols
        phi[j] = 1
        for row, piv in zip(basis, pivots):
            phi[piv] = (-row[j]) % p
        out.append(tuple(phi))
    out_basis, _ = rref(out, p)
    return out_basis


def dot(a: Sequence[int], b: Sequence[int], p: int) -> int:
    return sum(x * y for x, y in zip(a, b)) % p
