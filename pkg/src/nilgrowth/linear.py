"""Exact subspace arithmetic on homogeneous components of the free algebra.

The degree-n component H(n) of K<x,y> has the 2^n words of length n as its
monomial basis. Monomials are numbered by reading the word as a binary
integer (x = 0, y = 1, leftmost letter most significant), so lex order with
x < y is exactly code order.

A :class:`Subspace` stores one of four representations:

``monomials``
    span of an explicit set of monomials (a set of codes);
``complement``
    span of every monomial *not* in an explicit set;
``dense``
    reduced row-echelon basis (GF(2): one int per row, bit c = coefficient
    of code c; odd p: one tuple per row);
``kernel``
    reduced echelon basis of the annihilator: the space is the common kernel
    of those functionals under the standard coordinatewise pairing.

``orthogonal`` swaps monomials<->complement and dense<->kernel at no cost,
which turns intersection into a sum computation and keeps spaces of tiny
codimension (inside an ambient of dimension 65536) workable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import gf2, gfp
from .errors import (
    BudgetExceededError,
    DegreeMismatchError,
    FieldMismatchError,
)

MONO = "monomials"
COMP = "complement"
DENSE = "dense"
KERNEL = "kernel"

VectorData = Union[int, Tuple[int, ...]]


@dataclass
class Budget:
    """Hard resource limits for dense materialization.

    Exceeding a limit raises :class:`BudgetExceededError`; nothing is ever
    silently truncated.
    """

    max_dense_degree: int = 16
    max_rows: int = 1 << 13
    max_set: int = 1 << 16
    max_terms: int = 1 << 16
    max_word_bits: int = 1 << 20


BUDGET = Budget()


def _check_dense_degree(degree: int) -> None:
    if degree > BUDGET.max_dense_degree:
        raise BudgetExceededError(
            f"dense representation at degree {degree} exceeds the budget "
            f"(max degree {BUDGET.max_dense_degree})"
        )


def _check_rows(count: int, what: str) -> None:
    if count > BUDGET.max_rows:
        raise BudgetExceededError(
            f"{what} would materialize {count} rows (budget {BUDGET.max_rows})"
        )


@dataclass(frozen=True)
class DenseVector:
    """A single coordinate vector of H(degree) over GF(field)."""

    degree: int
    field: int = 2
    data: VectorData = 0

    def support(self) -> Tuple[int, ...]:
        if self.field == 2:
            v, out, c = self.data, [], 0
            while v:
                if v & 1:
                    out.append(c)
                v >>= 1
                c += 1
            return tuple(out)
        return tuple(i for i, a in enumerate(self.data) if a)


def code_to_word(code: int, degree: int) -> str:
    return "".join("y" if (code >> (degree - 1 - i)) & 1 else "x" for i in range(degree))


def word_to_code(word: str) -> int:
    code = 0
    for ch in word:
        if ch not in "xy":
            raise ValueError(f"invalid letter {ch!r} in word")
        code = (code << 1) | (ch == "y")
    return code


class Subspace:
    """A subspace of H(degree) over GF(field), in one of four representations."""

    __slots__ = ("degree", "field", "kind", "codes", "rows", "pivots")

    def __init__(self, degree: int, field: int, kind: str,
                 codes: Optional[frozenset] = None,
                 rows: Optional[tuple] = None,
                 pivots: Optional[tuple] = None):
        self.degree = degree
        self.field = field
        self.kind = kind
        self.codes = codes
        self.rows = rows
        self.pivots = pivots

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, degree: int, field: int = 2) -> "Subspace":
        return cls(degree, field, MONO, codes=frozenset())

    @classmethod
    def full(cls, degree: int, field: int = 2) -> "Subspace":
        return cls(degree, field, COMP, codes=frozenset())

    @classmethod
    def from_monomials(cls, degree: int, codes: Iterable[int], field: int = 2) -> "Subspace":
        codes = frozenset(codes)
        _check_set(codes, degree)
        return cls._normalize_sets(cls(degree, field, MONO, codes=codes))

    @classmethod
    def complement_of(cls, degree: int, codes: Iterable[int], field: int = 2) -> "Subspace":
        codes = frozenset(codes)
        _check_set(codes, degree)
        return cls._normalize_sets(cls(degree, field, COMP, codes=codes))

    @classmethod
    def span(cls, degree: int, vectors: Iterable[VectorData], field: int = 2) -> "Subspace":
        """Echelonize a list of raw coordinate vectors into a dense subspace."""
        vecs = [v.data if isinstance(v, DenseVector) else v for v in vectors]
        if not vecs:
            return cls.zero(degree, field)
        _check_dense_degree(degree)
        _check_rows(len(vecs), "echelonization input")
        if field == 2:
            basis, pivots = gf2.rref(vecs, 1 << degree)
        else:
            basis, pivots = gfp.rref(vecs, field)
        return _from_rows(degree, field, DENSE, basis, pivots)

    @classmethod
    def from_constraints(cls, degree: int, functionals: Iterable[VectorData],
                         field: int = 2) -> "Subspace":
        """Common kernel of the given functionals: {v : <phi, v> = 0 for all}."""
        funcs = [f.data if isinstance(f, DenseVector) else f for f in functionals]
        funcs = [f for f in funcs if _nonzero(f)]
        if not funcs:
            return cls.full(degree, field)
        _check_dense_degree(degree)
        _check_rows(len(funcs), "constraint system")
        if field == 2:
            basis, pivots = gf2.rref(funcs, 1 << degree)
        else:
            basis, pivots = gfp.rref(funcs, field)
        return _from_rows(degree, field, KERNEL, basis, pivots)

    @staticmethod
    def _normalize_sets(s: "Subspace") -> "Subspace":
        full = 1 << s.degree
        if s.kind == MONO and len(s.codes) == full:
            return Subspace(s.degree, s.field, COMP, codes=frozenset())
        if s.kind == COMP and len(s.codes) == full:
            return Subspace(s.degree, s.field, MONO, codes=frozenset())
        return s

    # -- basic queries ------------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        return 1 << self.degree

    def dim(self) -> int:
        if self.kind == MONO:
            return len(self.codes)
        if self.kind == COMP:
            return self.ambient_dim - len(self.codes)
        if self.kind == DENSE:
            return len(self.rows)
        return self.ambient_dim - len(self.rows)

    def is_zero(self) -> bool:
        return self.dim() == 0

    def orthogonal(self) -> "Subspace":
        """Annihilator under the standard pairing; an O(1) relabeling."""
        swap = {MONO: COMP, COMP: MONO, DENSE: KERNEL, KERNEL: DENSE}
        return Subspace(self.degree, self.field, swap[self.kind],
                        codes=self.codes, rows=self.rows, pivots=self.pivots)

    # -- membership ---------------------------------------------------------

    def contains_vector(self, v: VectorData) -> bool:
        v = v.data if isinstance(v, DenseVector) else v
        if self.kind == MONO:
            return _support_codes(v, self.field) <= self.codes
        if self.kind == COMP:
            return not (_support_codes(v, self.field) & self.codes)
        if self.kind == DENSE:
            if self.field == 2:
                return gf2.reduce_vector(v, self.rows, self.pivots) == 0
            return not _nonzero(gfp.reduce_vector(v, self.rows, self.pivots, self.field))
        if self.field == 2:
            return all(gf2.parity(phi, v) == 0 for phi in self.rows)
        return all(gfp.dot(phi, v, self.field) == 0 for phi in self.rows)

    def contains_monomial(self, code: int) -> bool:
        if self.kind == MONO:
            return code in self.codes
        if self.kind == COMP:
            return code not in self.codes
        return self.contains_vector(_unit(code, self.degree, self.field))

    def contains_space(self, other: "Subspace") -> bool:
        """Whether this space contains ``other``."""
        _check_compatible(self, other)
        if other.dim() > self.dim():
            return False
        if other.kind == MONO:
            return all(self.contains_monomial(c) for c in other.codes)
        if self.kind == COMP and other.kind == COMP:
            return self.codes <= other.codes
        if other.kind == DENSE:
            return all(self.contains_vector(r) for r in other.rows)
        # other is complement or kernel: prefer the dual check
        dual_gens = _primal_count(self.orthogonal())
        if dual_gens <= BUDGET.max_rows or dual_gens <= _primal_count(other):
            o = self.orthogonal()
            t = other.orthogonal()
            if _primal_count(o) <= BUDGET.max_rows:
                return all(t.contains_vector(g) for g in _primal_rows(o))
        return all(self.contains_vector(g) for g in _primal_rows(other))

    # -- arithmetic ---------------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        _check_compatible(self, other)
        a, b = self, other
        if a.kind == MONO and b.kind == MONO:
            return Subspace._normalize_sets(
                Subspace(a.degree, a.field, MONO, codes=a.codes | b.codes))
        if a.kind == MONO and b.kind == COMP:
            return Subspace._normalize_sets(
                Subspace(a.degree, a.field, COMP, codes=b.codes - a.codes))
        if a.kind == COMP and b.kind == MONO:
            return b.sum(a)
        if a.kind == COMP and b.kind == COMP:
            return Subspace._normalize_sets(
                Subspace(a.degree, a.field, COMP, codes=a.codes & b.codes))
        pa, pb = _primal_count(a), _primal_count(b)
        if pa + pb <= BUDGET.max_rows:
            return Subspace.span(a.degree, _primal_rows(a) + _primal_rows(b), a.field)
        da, db = _primal_count(a.orthogonal()), _primal_count(b.orthogonal())
        if da + db <= BUDGET.max_rows:
            inter = _intersect_row_spans(
                _primal_rows(a.orthogonal()), _primal_rows(b.orthogonal()),
                a.degree, a.field)
            return _from_rows(a.degree, a.field, KERNEL, *inter)
        # mixed shapes: one operand has a small annihilator, the other a small
        # spanning set, so ann(A+B) = {phi in annA : phi _|_ B} is a local solve
        if da + pb <= BUDGET.max_rows:
            return _restrict_annihilator(a, b)
        if db + pa <= BUDGET.max_rows:
            return _restrict_annihilator(b, a)
        raise BudgetExceededError(
            f"sum at degree {a.degree}: no representation fits the row budget")

    def intersect(self, other: "Subspace") -> "Subspace":
        _check_compatible(self, other)
        a, b = self, other
        if a.kind == MONO and b.kind == MONO:
            return Subspace(a.degree, a.field, MONO, codes=a.codes & b.codes)
        if a.kind == MONO and b.kind == COMP:
            return Subspace(a.degree, a.field, MONO, codes=a.codes - b.codes)
        if a.kind == COMP and b.kind == MONO:
            return b.intersect(a)
        return a.orthogonal().sum(b.orthogonal()).orthogonal()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.degree != other.degree or self.field != other.field:
            return False
        if self.kind == other.kind:
            if self.kind in (MONO, COMP):
                return self.codes == other.codes
            return self.rows == other.rows
        if self.dim() != other.dim():
            return False
        return self.contains_space(other) and other.contains_space(self)

    __hash__ = None  # mutatable-representation equality; not hashable

    def __repr__(self) -> str:
        return (f"Subspace(degree={self.degree}, field={self.field}, "
                f"kind={self.kind}, dim={self.dim()})")

    # -- representation changes --------------------------------------------

    def to_dense(self) -> "Subspace":
        if self.kind == DENSE:
            return self
        _check_rows(_primal_count(self), "dense conversion")
        _check_dense_degree(self.degree)
        rows = _primal_rows(self)
        if self.field == 2:
            basis, pivots = gf2.rref(rows, self.ambient_dim)
        else:
            basis, pivots = gfp.rref(rows, self.field)
        return Subspace(self.degree, self.field, DENSE,
                        rows=tuple(basis), pivots=tuple(pivots))

    def canonical(self) -> "Subspace":
        """Prefer monomial set kinds whenever the echelon basis is unit rows."""
        if self.kind in (MONO, COMP):
            return Subspace._normalize_sets(self)
        units = _unit_codes(self.rows, self.field)
        if units is None:
            return self
        kind = MONO if self.kind == DENSE else COMP
        return Subspace._normalize_sets(
            Subspace(self.degree, self.field, kind, codes=frozenset(units)))


# ---------------------------------------------------------------------------
# helpers


def _check_set(codes: frozenset, degree: int) -> None:
    if len(codes) > BUDGET.max_set:
        raise BudgetExceededError(
            f"monomial set of size {len(codes)} exceeds budget {BUDGET.max_set}")
    for c in codes:
        if c < 0 or c >> degree:
            raise ValueError(f"monomial code {c} out of range for degree {degree}")


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.degree != b.degree:
        raise DegreeMismatchError(f"degrees {a.degree} and {b.degree}")
    if a.field != b.field:
        raise FieldMismatchError(f"fields GF({a.field}) and GF({b.field})")


def _nonzero(v: VectorData) -> bool:
    return bool(v) if isinstance(v, int) else any(v)


def _unit(code: int, degree: int, field: int) -> VectorData:
    if field == 2:
        return 1 << code
    row = [0] * (1 << degree)
    row[code] = 1
    return tuple(row)


def _support_codes(v: VectorData, field: int) -> frozenset:
    if isinstance(v, int):
        out = []
        c = 0
        while v:
            if v & 1:
                out.append(c)
            v >>= 1
            c += 1
        return frozenset(out)
    return frozenset(i for i, a in enumerate(v) if a)


def _unit_codes(rows: Sequence, field: int) -> Optional[List[int]]:
    """Codes if every echelon row is a scalar multiple of a unit vector."""
    out = []
    for r in rows:
        if field == 2:
            if r & (r - 1):
                return None
            out.append(r.bit_length() - 1)
        else:
            sup = [i for i, a in enumerate(r) if a]
            if len(sup) != 1:
                return None
            out.append(sup[0])
    return out


def _from_rows(degree: int, field: int, kind: str, basis: Sequence, pivots: Sequence) -> Subspace:
    _check_dense_degree(degree)
    s = Subspace(degree, field, kind, rows=tuple(basis), pivots=tuple(pivots))
    return s.canonical()


def _primal_count(s: Subspace) -> int:
    if s.kind == MONO:
        return len(s.codes)
    if s.kind == DENSE:
        return len(s.rows)
    if s.kind == COMP:
        return s.ambient_dim - len(s.codes)
    return s.ambient_dim - len(s.rows)


def _primal_rows(s: Subspace) -> List[VectorData]:
    """A spanning list of rows; materialization is budget-checked."""
    if s.kind == MONO:
        return [_unit(c, s.degree, s.field) for c in sorted(s.codes)]
    if s.kind == DENSE:
        return list(s.rows)
    _check_rows(_primal_count(s), "spanning-set materialization")
    _check_dense_degree(s.degree)
    if s.kind == COMP:
        return [_unit(c, s.degree, s.field)
                for c in range(s.ambient_dim) if c not in s.codes]
    if s.field == 2:
        return gf2.nullspace(list(s.rows), s.ambient_dim)
    return gfp.nullspace(list(s.rows), s.ambient_dim, s.field)


def _restrict_annihilator(a: Subspace, b: Subspace) -> Subspace:
    """ann(A+B) as the functionals in annA annihilating B's generators.

    Solves a small coefficient system (|annA basis| unknowns, |B generators|
    equations) instead of touching ambient-sized dense blocks.
    """
    phis = _primal_rows(a.orthogonal())
    gens = _primal_rows(b)
    field = a.field
    if field == 2:
        cols = [sum(gf2.parity(phi, g) << i for i, phi in enumerate(phis))
                for g in gens]
        combos = gf2.nullspace(cols, len(phis))
        rows = []
        for combo in combos:
            acc = 0
            for i, phi in enumerate(phis):
                if (combo >> i) & 1:
                    acc ^= phi
            rows.append(acc)
        basis, pivots = gf2.rref(rows, a.ambient_dim)
    else:
        cols = [tuple(gfp.dot(phi, g, field) for phi in phis) for g in gens]
        combos = gfp.nullspace(cols, len(phis), field)
        n = a.ambient_dim
        rows = []
        for combo in combos:
            acc = [0] * n
            for i, phi in enumerate(phis):
                if combo[i]:
                    for c in range(n):
                        acc[c] = (acc[c] + combo[i] * phi[c]) % field
            rows.append(tuple(acc))
        basis, pivots = gfp.rref(rows, field)
    return _from_rows(a.degree, a.field, KERNEL, basis, pivots)


def _intersect_row_spans(rows_a: Sequence, rows_b: Sequence, degree: int,
                         field: int) -> Tuple[List, List[int]]:
    """Echelon basis of span(rows_a) intersect span(rows_b) (Zassenhaus).

    Augmented rows carry (sum-block, tracker-block); pivots consume the sum
    block first, and rows whose sum block vanished have trackers spanning the
    intersection.
    """
    nbits = 1 << degree
    if field == 2:
        aug = [r | (r << nbits) for r in rows_a] + list(rows_b)
        basis, _ = gf2.rref(aug, 2 * nbits)
        mask = (1 << nbits) - 1
        inter = [row >> nbits for row in basis if not (row & mask)]
        return gf2.rref(inter, nbits)
    aug = [tuple(r) + tuple(r) for r in rows_a] + [tuple(r) + (0,) * nbits for r in rows_b]
    basis, _ = gfp.rref(aug, field)
    inter = [row[nbits:] for row in basis if not any(row[:nbits])]
    return gfp.rref(inter, field)


# ---------------------------------------------------------------------------
# module-level operations


def echelonize(degree: int, vectors: Iterable[VectorData], field: int = 2) -> Subspace:
    return Subspace.span(degree, vectors, field)


def solve_constraints(degree: int, functionals: Iterable[VectorData],
                      field: int = 2) -> Subspace:
    return Subspace.from_constraints(degree, functionals, field)


def complement_within(inner: Subspace, outer: Subspace) -> Subspace:
    """Deterministic complement: inner + result = outer, direct.

    Completion follows the lex-least-coordinate rule: candidates are taken
    from outer's canonical basis in pivot order and kept when independent.
    """
    _check_compatible(inner, outer)
    if inner.kind == MONO and outer.kind == MONO:
        if not inner.codes <= outer.codes:
            raise ValueError("inner is not a monomial subset of outer")
        return Subspace(inner.degree, inner.field, MONO, codes=outer.codes - inner.codes)
    if outer.kind == COMP and not outer.codes:
        if inner.kind == MONO:
            return Subspace._normalize_sets(
                Subspace(inner.degree, inner.field, COMP, codes=inner.codes))
        if inner.kind == COMP:
            return Subspace(inner.degree, inner.field, MONO, codes=inner.codes)
    if not outer.contains_space(inner):
        raise ValueError("inner is not contained in outer")
    need = outer.dim() - inner.dim()
    if need == 0:
        return Subspace.zero(inner.degree, inner.field)
    dense_inner = inner.to_dense()
    picked: List[VectorData] = []
    span_rows = list(dense_inner.rows)
    span_piv = list(dense_inner.pivots)
    for cand in _primal_rows(outer.canonical()):
        if len(picked) == need:
            break
        if inner.field == 2:
            resid = gf2.reduce_vector(cand, span_rows, span_piv)
        else:
            resid = gfp.reduce_vector(cand, span_rows, span_piv, inner.field)
        if _nonzero(resid):
            picked.append(cand)
            _insert_reduced(span_rows, span_piv, resid, inner.field)
    if len(picked) != need:
        raise RuntimeError("complement completion failed to reach the dimension")
    return Subspace.span(inner.degree, picked, inner.field)


def _insert_reduced(rows: List, pivots: List[int], resid: VectorData, field: int) -> None:
    """Insert an already-reduced residual, keeping (rows, pivots) usable for
    further reduction (sorted by pivot; not necessarily fully reduced)."""
    if field == 2:
        piv = (resid & -resid).bit_length() - 1
    else:
        piv = next(i for i, a in enumerate(resid) if a)
        inv = pow(resid[piv], field - 2, field)
        resid = tuple((inv * a) % field for a in resid)
    import bisect

    at = bisect.bisect_left(pivots, piv)
    pivots.insert(at, piv)
    rows.insert(at, resid)


def split(v: VectorData, first: Subspace, second: Subspace) -> Tuple[VectorData, VectorData]:
    """Decompose v = a + b with a in first, b in second (assumes first + second
    is direct and contains v); returns (a, b)."""
    _check_compatible(first, second)
    if first.field != 2:
        return _split_p(v, first, second)
    v = v.data if isinstance(v, DenseVector) else v
    nbits = 1 << first.degree
    rows_a = _primal_rows(first)
    rows_b = _primal_rows(second)
    rows = rows_a + rows_b
    aug = [r | (1 << (nbits + i)) for i, r in enumerate(rows)]
    basis, pivots = gf2.rref(aug, nbits + len(rows))
    mask = (1 << nbits) - 1
    resid = gf2.reduce_vector(v, basis, pivots)
    if resid & mask:
        raise ValueError("vector does not lie in the sum of the two spaces")
    tags = resid >> nbits
    b_part = 0
    for i in range(len(rows_a), len(rows)):
        if (tags >> i) & 1:
            b_part ^= rows[i]
    return v ^ b_part, b_part


def _split_p(v: VectorData, first: Subspace, second: Subspace) -> Tuple[VectorData, VectorData]:
    p = first.field
    n = 1 << first.degree
    rows_a = [list(r) for r in _primal_rows(first)]
    rows_b = [list(r) for r in _primal_rows(second)]
    rows = rows_a + rows_b
    k = len(rows)
    aug = []
    for i, r in enumerate(rows):
        tag = [0] * k
        tag[i] = 1
        aug.append(tuple(r) + tuple(tag))
    basis, pivots = gfp.rref(aug, p)
    v = tuple(v) + (0,) * k
    resid = gfp.reduce_vector(v, basis, pivots, p)
    if any(resid[:n]):
        raise ValueError("vector does not lie in the sum of the two spaces")
    tags = resid[n:]
    b_part = [0] * n
    for i in range(len(rows_a), k):
        f = (-tags[i]) % p
        if f:
            for c in range(n):
                b_part[c] = (b_part[c] + f * rows[i][c]) % p
    b_part = tuple(b_part)
    a_part = tuple((x - y) % p for x, y in zip(v[:n], b_part))
    return a_part, b_part


# ---------------------------------------------------------------------------
# serialization


def subspace_to_json(s: Subspace) -> dict:
    s = s.canonical()
    out = {"degree": s.degree, "field": s.field, "repr": s.kind}
    if s.kind in (MONO, COMP):
        out["monomials"] = [code_to_word(c, s.degree) for c in sorted(s.codes)]
    else:
        if s.field == 2:
            width = max(1, (s.ambient_dim + 3) // 4)
            out["rows"] = [format(r, f"0{width}x") for r in s.rows]
        else:
            out["rows"] = ["".join(str(a) for a in r) for r in s.rows]
    return out


def subspace_from_json(obj: dict) -> Subspace:
    degree = int(obj["degree"])
    field = int(obj.get("field", 2))
    kind = obj["repr"]
    if kind in (MONO, COMP):
        codes = [word_to_code(w) for w in obj["monomials"]]
        maker = Subspace.from_monomials if kind == MONO else Subspace.complement_of
        return maker(degree, codes, field)
    if field == 2:
        rows = [int(h, 16) for h in obj["rows"]]
    else:
        rows = [tuple(int(ch) for ch in h) for h in obj["rows"]]
    if kind == DENSE:
        return Subspace.span(degree, rows, field)
    if kind == KERNEL:
        return Subspace.from_constraints(degree, rows, field)
    raise ValueError(f"unknown subspace repr {kind!r}")
