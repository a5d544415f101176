"""Words, polynomials, and graded products in the free algebra K<x,y>.

Words of length n are stored as n-bit codes (x = 0, y = 1, leftmost letter
most significant), so concatenation is a shift-or and subword extraction is
a shift-mask. Polynomials come in two flavors: homogeneous (:class:`HomPoly`,
a code -> coefficient map in one degree) and general (:class:`GeneralPoly`,
a degree -> HomPoly map). The term grammar is ``[coeff:]word`` joined by
``+``, e.g. ``xxy + 2:xyx``.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from .errors import BudgetExceededError, DegreeMismatchError, FieldMismatchError
from .linear import (
    BUDGET,
    Subspace,
    code_to_word,
    word_to_code,
)
from . import gf2, gfp

# -- word codes --------------------------------------------------------------


def concat(a: int, deg_a: int, b: int, deg_b: int) -> int:
    return (a << deg_b) | b


def prefix(w: int, deg: int, j: int) -> int:
    """Leading j letters of a degree-deg word."""
    return w >> (deg - j)


def suffix(w: int, j: int) -> int:
    """Trailing j letters."""
    return w & ((1 << j) - 1)


def subword(w: int, deg: int, start: int, length: int) -> int:
    """Letters [start, start+length) of a degree-deg word."""
    return (w >> (deg - start - length)) & ((1 << length) - 1)


def word_power(w: int, deg: int, k: int) -> int:
    out = 0
    for _ in range(k):
        out = (out << deg) | w
    return out


def letter_count_y(w: int) -> int:
    return w.bit_count()


# -- polynomials --------------------------------------------------------------


class HomPoly:
    """A homogeneous polynomial: coefficients indexed by word code."""

    __slots__ = ("degree", "field", "coeffs")

    def __init__(self, degree: int, field: int = 2,
                 coeffs: Optional[Dict[int, int]] = None):
        self.degree = degree
        self.field = field
        self.coeffs: Dict[int, int] = {}
        if coeffs:
            for c, a in coeffs.items():
                a %= field
                if a:
                    self.coeffs[c] = a

    @classmethod
    def monomial(cls, degree: int, code: int, field: int = 2, coeff: int = 1) -> "HomPoly":
        return cls(degree, field, {code: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomPoly):
            return NotImplemented
        return (self.degree, self.field, self.coeffs) == (other.degree, other.field, other.coeffs)

    def __add__(self, other: "HomPoly") -> "HomPoly":
        if self.degree != other.degree:
            raise DegreeMismatchError("adding different degrees")
        if self.field != other.field:
            raise FieldMismatchError("adding over different fields")
        out = dict(self.coeffs)
        for c, a in other.coeffs.items():
            v = (out.get(c, 0) + a) % self.field
            if v:
                out[c] = v
            else:
                out.pop(c, None)
        return HomPoly(self.degree, self.field, out)

    def scale(self, k: int) -> "HomPoly":
        k %= self.field
        return HomPoly(self.degree, self.field,
                       {c: (a * k) % self.field for c, a in self.coeffs.items()})

    def __mul__(self, other: "HomPoly") -> "HomPoly":
        if self.field != other.field:
            raise FieldMismatchError("multiplying over different fields")
        if len(self.coeffs) * len(other.coeffs) > BUDGET.max_terms:
            raise BudgetExceededError(
                f"product would expand {len(self.coeffs) * len(other.coeffs)} terms")
        out: Dict[int, int] = {}
        db = other.degree
        for ca, aa in self.coeffs.items():
            base = ca << db
            for cb, ab in other.coeffs.items():
                c = base | cb
                v = (out.get(c, 0) + aa * ab) % self.field
                if v:
                    out[c] = v
                else:
                    out.pop(c, None)
        return HomPoly(self.degree + other.degree, self.field, out)

    def to_vector(self):
        """Coordinate vector: an int bitmask over GF(2), a tuple otherwise."""
        if self.field == 2:
            v = 0
            for c in self.coeffs:
                v |= 1 << c
            return v
        row = [0] * (1 << self.degree)
        for c, a in self.coeffs.items():
            row[c] = a
        return tuple(row)

    def text(self) -> str:
        parts = []
        for c in sorted(self.coeffs):
            a = self.coeffs[c]
            w = code_to_word(c, self.degree)
            parts.append(w if a == 1 else f"{a}:{w}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"HomPoly({self.text()!r}, degree={self.degree}, field={self.field})"


class GeneralPoly:
    """A polynomial with components in several degrees (no constant term)."""

    __slots__ = ("field", "parts")

    def __init__(self, field: int = 2, parts: Optional[Dict[int, HomPoly]] = None):
        self.field = field
        self.parts: Dict[int, HomPoly] = {}
        if parts:
            for d, h in parts.items():
                if not h.is_zero():
                    self.parts[d] = h

    @classmethod
    def from_hom(cls, h: HomPoly) -> "GeneralPoly":
        return cls(h.field, {h.degree: h})

    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> List[int]:
        return sorted(self.parts)

    def min_degree(self) -> int:
        return min(self.parts) if self.parts else 0

    def max_degree(self) -> int:
        return max(self.parts) if self.parts else 0

    def term_count(self) -> int:
        return sum(len(h.coeffs) for h in self.parts.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneralPoly):
            return NotImplemented
        return self.field == other.field and self.parts == other.parts

    def __add__(self, other: "GeneralPoly") -> "GeneralPoly":
        if self.field != other.field:
            raise FieldMismatchError("adding over different fields")
        out = dict(self.parts)
        for d, h in other.parts.items():
            out[d] = out[d] + h if d in out else h
        return GeneralPoly(self.field, out)

    def __mul__(self, other: "GeneralPoly") -> "GeneralPoly":
        if self.field != other.field:
            raise FieldMismatchError("multiplying over different fields")
        out: Dict[int, HomPoly] = {}
        total = 0
        for da, ha in self.parts.items():
            for db, hb in other.parts.items():
                prod = ha * hb
                d = da + db
                out[d] = out[d] + prod if d in out else prod
                total += len(out[d].coeffs)
                if total > BUDGET.max_terms:
                    raise BudgetExceededError(
                        f"product exceeds the {BUDGET.max_terms}-term budget")
        return GeneralPoly(self.field, out)

    def power(self, k: int) -> "GeneralPoly":
        if k < 1:
            raise ValueError("only positive powers of constant-free polynomials")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def text(self) -> str:
        parts = []
        for d in sorted(self.parts):
            parts.append(self.parts[d].text())
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"GeneralPoly({self.text()!r}, field={self.field})"


def parse_poly(text: str, field: int = 2) -> GeneralPoly:
    """Parse ``[coeff:]word`` terms joined by ``+`` (whitespace ignored)."""
    out = GeneralPoly(field)
    for raw in text.split("+"):
        term = "".join(raw.split())
        if not term:
            raise ValueError("empty term in polynomial text")
        if ":" in term:
            coeff_s, word = term.split(":", 1)
            if not coeff_s.isdigit():
                raise ValueError(f"bad coefficient {coeff_s!r}")
            coeff = int(coeff_s) % field
        else:
            coeff, word = 1, term
        if not word or any(ch not in "xy" for ch in word):
            raise ValueError(f"bad word {raw.strip()!r}: expected letters x, y")
        if coeff:
            out = out + GeneralPoly.from_hom(
                HomPoly.monomial(len(word), word_to_code(word), field, coeff))
    return out


def format_poly(p: GeneralPoly) -> str:
    return p.text()


# -- graded products of subspaces ---------------------------------------------


def _include_set(s: Subspace) -> Optional[frozenset]:
    """The monomial include-set, if enumerable within the set budget."""
    if s.kind == "monomials":
        return s.codes
    if s.kind == "complement":
        if s.ambient_dim > BUDGET.max_set:
            return None
        return frozenset(range(s.ambient_dim)) - s.codes
    return None


def _exclude_set(s: Subspace) -> Optional[frozenset]:
    if s.kind == "complement":
        return s.codes
    if s.kind == "monomials":
        if s.ambient_dim > BUDGET.max_set:
            return None
        return frozenset(range(s.ambient_dim)) - s.codes
    return None


def tensor_row(u: int, v: int, deg_b: int) -> int:
    """Product vector of two GF(2) coordinate vectors (degrees add)."""
    out = 0
    shift = 1 << deg_b
    a = u
    pos = 0
    while a:
        if a & 1:
            out |= v << (pos * shift)
        a >>= 1
        pos += 1
    return out


def _tensor_row_p(u: tuple, v: tuple, p: int) -> tuple:
    out = []
    for ua in u:
        if ua:
            out.extend((ua * vb) % p for vb in v)
        else:
            out.extend([0] * len(v))
    return tuple(out)


def _ann_product_rows(a: Subspace, b: Subspace) -> list:
    """Spanning functionals of ann(A.B): annA x (all) plus (all) x annB."""
    deg_a, deg_b = a.degree, b.degree
    na, nb = 1 << deg_a, 1 << deg_b
    rows = []
    if a.field == 2:
        for phi in a.orthogonal().to_dense().rows:
            # phi (x) e_b*: support {(c << deg_b) | b : c in supp(phi)}
            for bcode in range(nb):
                rows.append(tensor_row(phi, 1 << bcode, deg_b))
        for psi in b.orthogonal().to_dense().rows:
            for acode in range(na):
                rows.append(psi << (acode << deg_b))
    else:
        unit_b = [tuple(1 if i == j else 0 for i in range(nb)) for j in range(nb)]
        unit_a = [tuple(1 if i == j else 0 for i in range(na)) for j in range(na)]
        for phi in a.orthogonal().to_dense().rows:
            for e in unit_b:
                rows.append(_tensor_row_p(phi, e, a.field))
        for psi in b.orthogonal().to_dense().rows:
            for e in unit_a:
                rows.append(_tensor_row_p(e, psi, a.field))
    return rows


def space_mul(a: Subspace, b: Subspace) -> Subspace:
    """The product subspace A.B = span{u v : u in A, v in B} in H(a+b degrees).

    Monomial set operands multiply as code sets; otherwise a basis tensor
    (small dimensions) or an annihilator tensor (small codimensions) is
    materialized, whichever fits the row budget.
    """
    if a.field != b.field:
        raise FieldMismatchError("product over different fields")
    deg = a.degree + b.degree
    if a.is_zero() or b.is_zero():
        return Subspace.zero(deg, a.field)
    inc_a, inc_b = _include_set(a), _include_set(b)
    if inc_a is not None and inc_b is not None:
        mono_size = len(inc_a) * len(inc_b)
        exc_a, exc_b = _exclude_set(a), _exclude_set(b)
        comp_size = (len(exc_a) << b.degree) + (len(exc_b) << a.degree)
        if comp_size < mono_size and comp_size <= BUDGET.max_set \
                and max(a.ambient_dim, b.ambient_dim) <= BUDGET.max_set:
            excl = {(e << b.degree) | v for e in exc_a for v in range(b.ambient_dim)}
            excl |= {(u << b.degree) | e for u in range(a.ambient_dim) for e in exc_b}
            return Subspace.complement_of(deg, excl, a.field)
        if mono_size <= BUDGET.max_set:
            codes = {(u << b.degree) | v for u in inc_a for v in inc_b}
            return Subspace.from_monomials(deg, codes, a.field)
    pa, pb = a.dim(), b.dim()
    if pa * pb <= BUDGET.max_rows and deg <= BUDGET.max_dense_degree:
        rows_a = a.to_dense().rows
        rows_b = b.to_dense().rows
        if a.field == 2:
            rows = [tensor_row(u, v, b.degree) for u in rows_a for v in rows_b]
        else:
            rows = [_tensor_row_p(u, v, a.field) for u in rows_a for v in rows_b]
        return Subspace.span(deg, rows, a.field)
    da = a.ambient_dim - pa
    db = b.ambient_dim - pb
    dual_count = da * b.ambient_dim + a.ambient_dim * db
    if dual_count <= BUDGET.max_rows and deg <= BUDGET.max_dense_degree:
        return Subspace.from_constraints(deg, _ann_product_rows(a, b), a.field)
    raise BudgetExceededError(
        f"product space at degree {deg}: no representation fits the budget")


def monomial_times_space(code: int, mdeg: int, s: Subspace) -> Subspace:
    """m.S for a single monomial m (left multiplication)."""
    deg = mdeg + s.degree
    if s.kind == "monomials":
        return Subspace.from_monomials(
            deg, {(code << s.degree) | c for c in s.codes}, s.field)
    return space_mul(Subspace.from_monomials(mdeg, [code], s.field), s)


def space_times_monomial(s: Subspace, code: int, mdeg: int) -> Subspace:
    deg = s.degree + mdeg
    if s.kind == "monomials":
        return Subspace.from_monomials(
            deg, {(c << mdeg) | code for c in s.codes}, s.field)
    return space_mul(s, Subspace.from_monomials(mdeg, [code], s.field))


def tensor_functionals(rows_a: Iterable[int], rows_b: Iterable[int],
                       deg_b: int) -> List[int]:
    """All pairwise products phi (x) psi of GF(2) functionals.

    Since ann(H.U) = H* (x) annU and ann(U.H) = annU (x) H*, the space
    H.U + U.H has annihilator annU (x) annU; callers feed annihilator bases
    here to exploit that identity.
    """
    rows_b = list(rows_b)
    return [tensor_row(u, v, deg_b) for u in rows_a for v in rows_b]
