"""Inductive construction of the level spaces U(2^n), V(2^n).

Levels are indexed by the exponent n. Level 0 is V = H(1), U = 0 with the
monomial labels m1 = x, m2 = y. Each later level is built from the previous
one by the case its exponent selects (see :meth:`Schedule.case_for`):

Case 1   U' = H.U + U.H,                V' = V.V
Case 2   U' = H.U + U.H + m2.V,         V' = K(m1 m1) + K(m1 m2)
Case 3   U' = U.U + U.V + V.U + Q,      V' = K m1' + K m2'

where in case 3 the new labels are the two lex-least monomials of V.V whose
coordinates avoid the pivots of P, the projection of the bound F space into
V.V, and Q >= P completes them to V.V = Q (+) Km1' (+) Km2'.

Two engines produce the levels. The monomial engine tracks only the V word
set (U is always the complement span, which the case formulas preserve).
The dense engine runs the formulas through subspace arithmetic, building
H.U + U.H from the annihilator identity ann(H.U + U.H) = annU (x) annU.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError, ConfigError, VerificationError
from .freealg import (
    GeneralPoly,
    concat,
    parse_poly,
    prefix,
    space_mul,
    subword,
    suffix,
    tensor_functionals,
)
from .linear import (
    Subspace,
    code_to_word,
    complement_within,
    split,
    subspace_from_json,
    subspace_to_json,
)
from .schedule import Schedule, floor_log2, _abbrev

ENGINES = ("monomial", "dense", "auto")


@dataclass
class LevelState:
    """One level of the construction: the spaces of H(2^n) at exponent n."""

    n: int
    field: int
    case: int                      # 0 for the base level
    V: Subspace
    U: Subspace
    m1: Optional[int] = None       # monomial codes; present iff n is not in S
    m2: Optional[int] = None
    N: Optional[Subspace] = None
    M: Optional[Subspace] = None

    @property
    def degree(self) -> int:
        return 1 << self.n

    def v_set(self) -> FrozenSet[int]:
        """V's word codes; defined at every level since V is monomial-spanned."""
        v = self.V.canonical()
        if v.kind == "monomials":
            return v.codes
        if v.kind == "complement" and v.ambient_dim <= 1 << 16:
            return frozenset(range(v.ambient_dim)) - v.codes
        raise VerificationError("monomial-V", f"level {self.n} V is not monomial")

    def labels(self) -> Tuple[int, int]:
        if self.m1 is None or self.m2 is None:
            raise ValueError(f"level {self.n} has no monomial labels (exponent in S)")
        return self.m1, self.m2


class FOracle:
    """Binding of F spaces to schedule indices (explicit bases or nothing)."""

    def __init__(self, bases: Optional[Dict[int, List[str]]] = None):
        self.bases = dict(bases or {})

    @classmethod
    def null(cls) -> "FOracle":
        return cls()

    @classmethod
    def from_schedule(cls, schedule: Schedule) -> "FOracle":
        bases = {e.i: e.F_basis for e in schedule.entries if e.F_basis is not None}
        return cls(bases)

    def space_for(self, i: int, degree: int, field: int) -> Optional[Subspace]:
        """The F space bound to index i at the given degree; None means zero.

        Enforces dim F < 2^(2^i) - 2.
        """
        texts = self.bases.get(i)
        if not texts:
            return None
        vectors = []
        for t in texts:
            poly = parse_poly(t, field)
            if poly.degrees() != [degree]:
                raise ConfigError(
                    f"F basis element {t!r} is not homogeneous of degree {degree}")
            vectors.append(poly.parts[degree].to_vector())
        space = Subspace.span(degree, vectors, field)
        cap = (1 << (1 << i)) - 2
        if space.dim() >= cap:
            raise VerificationError(
                "F-dimension", f"dim F_{i} = {space.dim()} >= 2^(2^{i}) - 2 = {cap}")
        return space


def case3_select(P: Subspace, vv_codes: FrozenSet[int]) -> Tuple[int, int, Subspace]:
    """Select labels and the completion Q inside the monomial span of vv_codes.

    m1, m2 are the two lex-least members of vv_codes that are not pivot
    coordinates of P's echelon basis; any nonzero element of P has a nonzero
    pivot coordinate, so span{m1, m2} meets P trivially. Q is P plus the unit
    vectors at the remaining non-pivot coordinates.
    """
    ordered = sorted(vv_codes)
    index_of = {c: k for k, c in enumerate(ordered)}
    local_dim = len(ordered)
    if P.dim() >= local_dim - 2:
        raise ValueError(
            f"selection needs dim P = {P.dim()} < dim VV - 2 = {local_dim - 2}")
    dense = P.to_dense()
    field = P.field
    local_rows = []
    for row in dense.rows:
        local = [0] * local_dim if field != 2 else 0
        for c in _support(row, field):
            if c not in index_of:
                raise ValueError("P is not contained in the monomial span of VV")
            if field == 2:
                local |= 1 << index_of[c]
            else:
                local[index_of[c]] = row[c]
        local_rows.append(local if field == 2 else tuple(local))
    if field == 2:
        from . import gf2
        _, pivots = gf2.rref(local_rows, local_dim)
    else:
        from . import gfp
        _, pivots = gfp.rref(local_rows, field)
    pivot_set = set(pivots)
    free = [k for k in range(local_dim) if k not in pivot_set]
    m1, m2 = ordered[free[0]], ordered[free[1]]
    extra = [_unit_vector(ordered[k], P.degree, field) for k in free[2:]]
    Q = Subspace.span(P.degree, list(dense.rows) + extra, field)
    return m1, m2, Q


def _support(row, field):
    if field == 2:
        out, c = [], 0
        while row:
            if row & 1:
                out.append(c)
            row >>= 1
            c += 1
        return out
    return [i for i, a in enumerate(row) if a]


def _unit_vector(code: int, degree: int, field: int):
    if field == 2:
        return 1 << code
    row = [0] * (1 << degree)
    row[code] = 1
    return tuple(row)


# ---------------------------------------------------------------------------
# the two engines


def _base_level(field: int) -> LevelState:
    V = Subspace.full(1, field)
    U = Subspace.zero(1, field)
    return LevelState(n=0, field=field, case=0, V=V, U=U, m1=0, m2=1)


def _step_monomial(prev: LevelState, case: int,
                   schedule: Schedule) -> LevelState:
    """Set-only step: V tracked as codes, U always the complement span."""
    deg = prev.n  # log2 of the previous degree
    vset = prev.v_set()
    d = prev.degree
    if case == 1:
        new_v = frozenset(concat(a, d, b, d) for a in vset for b in vset)
        m1 = m2 = None
    elif case == 2:
        m1p, m2p = prev.labels()
        new_v = frozenset({concat(m1p, d, m1p, d), concat(m1p, d, m2p, d)})
        m1, m2 = min(new_v), max(new_v)
    else:
        vv = sorted(concat(a, d, b, d) for a in vset for b in vset)
        m1, m2 = vv[0], vv[1]
        new_v = frozenset({m1, m2})
    n1 = prev.n + 1
    if schedule.in_S(n1) is not None:
        m1 = m2 = None
    V = Subspace.from_monomials(1 << n1, new_v, prev.field)
    U = Subspace.complement_of(1 << n1, new_v, prev.field)
    return LevelState(n=n1, field=prev.field, case=case, V=V, U=U, m1=m1, m2=m2)


def _hu_plus_uh(state: LevelState) -> Subspace:
    """H.U + U.H one level up, from ann(H.U + U.H) = annU (x) annU."""
    ann = state.U.orthogonal().to_dense()
    if state.field == 2:
        rows = tensor_functionals(ann.rows, ann.rows, state.degree)
    else:
        from .freealg import _tensor_row_p
        rows = [_tensor_row_p(u, v, state.field) for u in ann.rows for v in ann.rows]
    return Subspace.from_constraints(2 * state.degree, rows, state.field)


def _step_dense(prev: LevelState, case: int, schedule: Schedule,
                foracle: FOracle) -> LevelState:
    d = prev.degree
    n1 = prev.n + 1
    field = prev.field
    if case == 1:
        V = space_mul(prev.V, prev.V)
        U = _hu_plus_uh(prev)
        m1 = m2 = None
    elif case == 2:
        m1p, m2p = prev.labels()
        codes = {concat(m1p, d, m1p, d), concat(m1p, d, m2p, d)}
        V = Subspace.from_monomials(2 * d, codes, field)
        m2v = Subspace.from_monomials(
            2 * d, {concat(m2p, d, c, d) for c in prev.v_set()}, field)
        U = _hu_plus_uh(prev).sum(m2v)
        m1, m2 = min(codes), max(codes)
    else:
        vv_codes = frozenset(
            concat(a, d, b, d) for a in prev.v_set() for b in prev.v_set())
        VV = Subspace.from_monomials(2 * d, vv_codes, field)
        L = _hu_plus_uh(prev)  # equals U.U + U.V + V.U when V (+) U = H
        s = schedule.in_S(prev.n)
        if s is None:
            raise VerificationError("case-3", f"exponent {prev.n} is not in S")
        F = foracle.space_for(s[0], 1 << n1, field)
        if F is None:
            P = Subspace.zero(2 * d, field)
        else:
            parts = [split(v, VV, L)[0] for v in F.to_dense().rows]
            P = Subspace.span(2 * d, parts, field)
        m1, m2, Q = case3_select(P, vv_codes)
        V = Subspace.from_monomials(2 * d, {m1, m2}, field)
        U = L.sum(Q)
    if schedule.in_S(n1) is not None:
        m1 = m2 = None
    return LevelState(n=n1, field=field, case=case, V=V, U=U, m1=m1, m2=m2)


def build_NM(state: LevelState, schedule: Schedule) -> LevelState:
    """Attach the N/M splitting: N = Km1, M = U + Km2 off S; N = V, M = U on S."""
    if schedule.in_S(state.n) is not None:
        state.N = state.V
        state.M = state.U
        return state
    m1, m2 = state.labels()
    state.N = Subspace.from_monomials(state.degree, [m1], state.field)
    u = state.U.canonical()
    if u.kind == "complement" and u.codes == frozenset({m1, m2}):
        state.M = Subspace.complement_of(state.degree, [m1], state.field)
    else:
        state.M = state.U.sum(
            Subspace.from_monomials(state.degree, [m2], state.field))
    return state


class LevelStack:
    """The built levels plus the schedule and engine that produced them."""

    def __init__(self, schedule: Schedule, field: int = 2, engine: str = "auto",
                 foracle: Optional[FOracle] = None):
        if engine not in ENGINES:
            raise ConfigError(f"unknown engine {engine!r}")
        self.schedule = schedule
        self.field = field
        self.engine = engine
        self.foracle = foracle if foracle is not None else FOracle.from_schedule(schedule)
        self.levels: List[LevelState] = [build_NM(_base_level(field), schedule)]

    def top(self) -> int:
        return self.levels[-1].n

    def level(self, n: int) -> LevelState:
        if n > self.top():
            raise KeyError(f"level {n} not built (top is {self.top()})")
        return self.levels[n]

    def _engine_for(self, case: int, n1: int) -> str:
        if self.engine != "auto":
            return self.engine
        if case == 3:
            s = self.schedule.in_S(n1 - 1)
            if s is not None and self.foracle.bases.get(s[0]):
                return "dense"
        return "monomial"

    def build_to(self, max_level: int) -> "LevelStack":
        while self.top() < max_level:
            prev = self.levels[-1]
            n1 = prev.n + 1
            case = self.schedule.case_for(n1)
            eng = self._engine_for(case, n1)
            if eng == "monomial":
                if case == 3:
                    s = self.schedule.in_S(prev.n)
                    if s is not None and self.foracle.bases.get(s[0]):
                        raise ConfigError(
                            "monomial engine cannot apply a non-null F binding; "
                            "use the dense engine")
                state = _step_monomial(prev, case, self.schedule)
            else:
                state = _step_dense(prev, case, self.schedule, self.foracle)
            self.levels.append(build_NM(state, self.schedule))
        return self

    def v_set(self, n: int) -> FrozenSet[int]:
        return self.level(n).v_set()

    # -- verification ---------------------------------------------------------

    def check_ustack(self, n: int, m: int, k: int) -> bool:
        """Whether H(k 2^n) U(2^n) H((2^(m-n)-k-1) 2^n) <= U(2^m)."""
        if m < n or k < 0 or k >= 1 << (m - n):
            raise ValueError("need m >= n and 0 <= k < 2^(m-n)")
        un = self.level(n).U
        um = self.level(m).U
        piece = 1 << n
        offset = k * piece
        u_can, um_can = un.canonical(), um.canonical()
        if u_can.kind == "complement" and um_can.kind == "complement":
            # product misses U(2^m) only through V(2^m) words whose aligned
            # slice escapes U(2^n), i.e. lands in V(2^n)'s word set
            vn = u_can.codes
            return all(
                subword(w, 1 << m, offset, piece) in vn for w in um_can.codes)
        left = _full_of_degree(offset, self.field)
        right = _full_of_degree((1 << m) - offset - piece, self.field)
        prod = space_mul(space_mul(left, un), right)
        return um.contains_space(prod)

    def check_ustack_all(self, upto: int) -> List[Tuple[int, int, int, bool]]:
        out = []
        for m in range(upto + 1):
            for n in range(m + 1):
                for k in range(1 << (m - n)):
                    out.append((n, m, k, self.check_ustack(n, m, k)))
        return out

    def verify_conditions(self, upto: Optional[int] = None) -> List["ConditionReport"]:
        return verify_conditions(self, upto)


def _full_of_degree(degree: int, field: int) -> Subspace:
    return Subspace.full(degree, field)


# ---------------------------------------------------------------------------
# the eight conditions


@dataclass
class ConditionReport:
    number: int
    level: int
    holds: bool
    vacuous: bool = False
    detail: str = ""

    def text(self) -> str:
        status = "vacuous" if self.vacuous else ("ok" if self.holds else "FAIL")
        return f"condition {self.number} at level {self.level}: {status}" + (
            f" ({self.detail})" if self.detail else "")


def verify_conditions(stack: LevelStack, upto: Optional[int] = None) -> List[ConditionReport]:
    """Check the eight construction conditions verbatim on built levels.

    Conditions 6, 7, 8 relate level n to n+1 and are checked for n below the
    frontier; condition 4 is checked at every index i whose target degree
    2^(2^i - floor(log i)) was built.
    """
    sched = stack.schedule
    top = stack.top() if upto is None else min(upto, stack.top())
    reports: List[ConditionReport] = []
    for n in range(top + 1):
        st = stack.level(n)
        s = sched.in_S(n)
        # 1: off S the monomial space V is a plane
        if s is None:
            reports.append(ConditionReport(
                1, n, st.V.dim() == 2, detail=f"dim V = {st.V.dim()}"))
        else:
            reports.append(ConditionReport(1, n, True, vacuous=True))
        # 2: on S at offset j, dim V = 2^(2^j)
        if s is not None:
            want = 1 << (1 << s[1])
            reports.append(ConditionReport(
                2, n, st.V.dim() == want,
                detail=f"dim V = {st.V.dim()}, expect {want}"))
        else:
            reports.append(ConditionReport(2, n, True, vacuous=True))
        # 3: V spanned by monomials
        try:
            st.v_set()
            mono_spanned = True
        except VerificationError:
            mono_spanned = False
        reports.append(ConditionReport(3, n, mono_spanned))
        # 5: V (+) U = H
        direct = (st.V.dim() + st.U.dim() == st.V.ambient_dim
                  and st.V.intersect(st.U).is_zero())
        reports.append(ConditionReport(
            5, n, direct, detail=f"dims {st.V.dim()}+{st.U.dim()}"))
        if n == top:
            continue
        nxt = stack.level(n + 1)
        # 6: H.U + U.H <= U(2^(n+1))
        reports.append(ConditionReport(6, n, _condition6(st, nxt)))
        # 7: V(2^(n+1)) <= V.V
        reports.append(ConditionReport(7, n, _condition7(st, nxt)))
        # 8: off S, V = Km1 + Km2 with m2 H(2^n) <= U(2^(n+1))
        if s is None:
            reports.append(ConditionReport(8, n, _condition8(st, nxt)))
        else:
            reports.append(ConditionReport(8, n, True, vacuous=True))
    # 4: F_i <= U at the bound degree
    for e in sched.entries:
        exponent = BoundTarget(e.i)
        n1 = exponent.level()
        if n1 is None or n1 > top:
            reports.append(ConditionReport(4, -1, True, vacuous=True,
                                           detail=f"i={_abbrev(e.i)}: level unreachable"))
            continue
        F = stack.foracle.space_for(e.i, 1 << n1, stack.field)
        if F is None:
            reports.append(ConditionReport(4, n1, True, vacuous=True,
                                           detail="null F"))
            continue
        ok = stack.level(n1).U.contains_space(F)
        reports.append(ConditionReport(4, n1, ok, detail=f"i={_abbrev(e.i)}"))
    return reports


class BoundTarget:
    """The exponent 2^i - floor(log i) where an F binding must land, if small."""

    def __init__(self, i: int):
        self.i = i

    def level(self) -> Optional[int]:
        if self.i > 30:
            return None
        return (1 << self.i) - floor_log2(self.i)


def _condition6(st: LevelState, nxt: LevelState) -> bool:
    u_can, u1_can = st.U.canonical(), nxt.U.canonical()
    if u_can.kind == "complement" and u1_can.kind == "complement":
        vset, d = u_can.codes, st.degree
        return all(
            prefix(w, 2 * d, d) in vset and suffix(w, d) in vset
            for w in u1_can.codes)
    return nxt.U.contains_space(_hu_plus_uh(st))


def _condition7(st: LevelState, nxt: LevelState) -> bool:
    d = st.degree
    vset = st.v_set()
    return all(
        prefix(w, 2 * d, d) in vset and suffix(w, d) in vset
        for w in nxt.v_set())


def _condition8(st: LevelState, nxt: LevelState) -> bool:
    m1, m2 = st.labels()
    if st.v_set() != frozenset({m1, m2}):
        return False
    d = st.degree
    u1_can = nxt.U.canonical()
    if u1_can.kind == "complement":
        return all(prefix(w, 2 * d, d) != m2 for w in u1_can.codes)
    m2H = space_mul(Subspace.from_monomials(st.degree, [m2], st.field),
                    Subspace.full(st.degree, st.field))
    return nxt.U.contains_space(m2H)


# ---------------------------------------------------------------------------
# F coverage


def verify_F_covers(f: GeneralPoly, r: int, power: int, F: Subspace,
                    D: int):
    """Check ideal(f^power) (^) H(d) <= sum_k H(kr).F.H(d-kr-r) for d <= D.

    Returns None when the containment holds at every degree, else the first
    counterexample as (degree, vector).
    """
    if F.degree != r:
        raise ValueError(f"F must live in H({r})")
    g = f.power(power)
    field = f.field
    for d in range(1, D + 1):
        ideal_rows = []
        for e, hom in g.parts.items():
            if e > d:
                continue
            vec = hom.to_vector()
            for a in range(d - e + 1):
                b = d - e - a
                base = space_mul(
                    space_mul(Subspace.full(a, field),
                              Subspace.span(e, [vec], field)),
                    Subspace.full(b, field))
                ideal_rows.extend(base.to_dense().rows)
        if not ideal_rows:
            continue
        ideal_d = Subspace.span(d, ideal_rows, field)
        rhs = Subspace.zero(d, field)
        k = 0
        while k * r + r <= d:
            term = space_mul(space_mul(Subspace.full(k * r, field), F),
                             Subspace.full(d - k * r - r, field))
            rhs = rhs.sum(term)
            k += 1
        if not rhs.contains_space(ideal_d):
            for row in ideal_d.to_dense().rows:
                if not rhs.contains_vector(row):
                    return d, row
    return None
