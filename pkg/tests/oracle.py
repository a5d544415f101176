"""Independent brute-force references used to freeze expected values.

Everything here works on plain strings over the alphabet {x, y} and naive
list-of-lists linear algebra, deliberately sharing no code with the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Set, Tuple


# ---------------------------------------------------------------------------
# naive modular row reduction


def rref_mod(rows: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    """Reduced row echelon form over GF(p), leading entries scaled to 1."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    out: List[List[int]] = []
    col = 0
    while mat and col < ncols:
        pivot_row = None
        for r in mat:
            if r[col] % p:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        mat.remove(pivot_row)
        inv = pow(pivot_row[col] % p, p - 2, p)
        pivot_row = [(inv * a) % p for a in pivot_row]
        for r in mat:
            f = r[col] % p
            if f:
                for c in range(ncols):
                    r[c] = (r[c] - f * pivot_row[c]) % p
        for r in out:
            f = r[col] % p
            if f:
                for c in range(ncols):
                    r[c] = (r[c] - f * pivot_row[c]) % p
        out.append(pivot_row)
        col += 1
    out.sort(key=lambda r: next(i for i, a in enumerate(r) if a))
    return out


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod(rows, p))


def in_span_mod(v: Sequence[int], rows: Sequence[Sequence[int]], p: int) -> bool:
    return rank_mod(list(rows) + [list(v)], p) == rank_mod(rows, p)


# ---------------------------------------------------------------------------
# the default tower in string form: the two labels of each level


def label_words(level: int) -> Tuple[str, str]:
    """Labels of the default (all-T) tower: x^(2^k) and x^(2^k - 1) y."""
    d = 2 ** level
    return "x" * d, "x" * (d - 1) + "y"


def pair_words(level: int) -> List[str]:
    """The four products of two level labels, in lex order."""
    a, b = label_words(level)
    return sorted({u + v for u in (a, b) for v in (a, b)})


def subwords(n: int) -> Set[str]:
    """Distinct length-n aligned subwords of the pair words at the level
    holding n (2^m <= n < 2^(m+1) -> level m + 1)."""
    m = n.bit_length() - 1
    out: Set[str] = set()
    for w in pair_words(m + 1):
        for s in range(len(w) - n + 1):
            out.add(w[s : s + n])
    return out


def prefixes(j: int) -> Set[str]:
    m = j.bit_length() - 1
    return {w[:j] for w in label_words(m + 1)}


def suffixes(j: int) -> Set[str]:
    m = j.bit_length() - 1
    return {w[-j:] for w in label_words(m + 1)}


def all_words(n: int) -> List[str]:
    return ["".join(t) for t in product("xy", repeat=n)]


def e_membership_brute(r: str) -> bool:
    """Membership of a monomial in E(n) straight from the definition:
    no monomial p r q of the full window degree may equal a pair word."""
    n = len(r)
    m = n.bit_length() - 1
    window = 2 ** (m + 2)
    bad = set(pair_words(m + 1))
    for j in range(0, window - n + 1):
        for p in all_words(j):
            for q in all_words(window - n - j):
                if p + r + q in bad:
                    return False
    return True


def r_membership_brute(w: str) -> bool:
    """w in R(j): every right extension to the label degree avoids the labels."""
    j = len(w)
    m = j.bit_length() - 1
    labels = set(label_words(m + 1))
    d = 2 ** (m + 1)
    return all(w + q not in labels for q in all_words(d - j))


def s_membership_brute(w: str) -> bool:
    j = len(w)
    m = j.bit_length() - 1
    labels = set(label_words(m + 1))
    d = 2 ** (m + 1)
    return all(p + w not in labels for p in all_words(d - j))


# ---------------------------------------------------------------------------
# toy tower over Z = {2} rebuilt from the case rules on string sets


def toy_v_sets(top_level: int) -> List[Set[str]]:
    """V-label sets of the toy Z={2} tower with the null oracle, levels 0..top.

    S = {1, 2}; case per step: level0->1 case 2, 1->2 case 1, 2->3 case 3,
    3->4 case 2.
    """
    in_s = lambda k: k in (1, 2)
    vs: List[Set[str]] = [{"x", "y"}]
    labels: Tuple[str, str] = ("x", "y")
    for n in range(top_level):
        v = vs[-1]
        if not in_s(n):  # case 2
            m1, m2 = labels
            new = {m1 + m1, m1 + m2}
            labels = (m1 + m1, m1 + m2)
        elif in_s(n + 1):  # case 1
            new = {a + b for a in v for b in v}
        else:  # case 3, null oracle: two lex-least product words
            vv = sorted(a + b for a in v for b in v)
            new = {vv[0], vv[1]}
            labels = (vv[0], vv[1])
        vs.append(new)
    return vs


# ---------------------------------------------------------------------------
# growth profile by raw window scanning


def quotient_dims_brute(nmax: int) -> List[int]:
    """dim H(n)/E(n) = number of distinct aligned subwords, n = 1..nmax."""
    return [len(subwords(n)) for n in range(1, nmax + 1)]


def slope_fit(points: Sequence[Tuple[Fraction, Fraction]]) -> Fraction:
    """Exact least-squares slope."""
    k = len(points)
    sx = sum(x for x, _ in points)
    sy = sum(y for _, y in points)
    sxx = sum(x * x for x, _ in points)
    sxy = sum(x * y for x, y in points)
    return (k * sxy - sx * sy) / (k * sxx - sx * sx)


if __name__ == "__main__":
    # print the frozen values used across the test suite
    print("pair words level 1:", pair_words(1))
    print("subwords n=1..4:", [sorted(subwords(n)) for n in range(1, 5)])
    print("dims n=1..8:", quotient_dims_brute(8))
    print("E(2) members:", [w for w in all_words(2) if e_membership_brute(w)])
    print("E(3) members:", [w for w in all_words(3) if e_membership_brute(w)])
    print("R(2) non-members:", [w for w in all_words(2) if not r_membership_brute(w)])
    print("R(3) non-members:", [w for w in all_words(3) if not r_membership_brute(w)])
    print("S(3) non-members:", [w for w in all_words(3) if not s_membership_brute(w)])
    print("prefixes j=1..6:", [sorted(prefixes(j)) for j in range(1, 7)])
    print("suffixes j=1..6:", [sorted(suffixes(j)) for j in range(1, 7)])
    print("toy V sets:", [sorted(v) for v in toy_v_sets(4)])
