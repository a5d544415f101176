"""The graded ideal E and the complement systems R, S, Q, W.

E(n) collects the degree-n elements that multiply into
U(2^{m+1})H(2^{m+1}) + H(2^{m+1})U(2^{m+1}) under every two-sided padding
inside degree 2^{m+2}, where 2^m <= n < 2^{m+1}.  R and S are the one-sided
variants at the nearest power of two, and Q and W are complements of R and S
pulled back into products of the stack's N- and V-spaces, which is what
keeps their dimensions small enough for the growth estimates.

Every space has two computation paths.  The word path turns the definitions
into finite set arithmetic on the level words (aligned subwords, prefixes,
suffixes); it applies whenever the consulted level is monomial-spanned with
U equal to the complement of the V words, and reaches degrees in the
thousands.  The dense path solves the defining linear constraints and is
capped by the dense-degree budget.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from . import gf2, gfp
from .construction import LevelStack
from .errors import BudgetExceededError, ConfigError, VerificationError
from .freealg import (_exclude_set, _include_set, _tensor_row_p, concat,
                      prefix, space_mul, subword, suffix, tensor_functionals)
from .linear import BUDGET, Subspace, _insert_reduced, code_to_word, solve_constraints
from .schedule import binary_decomposition


def window_level(n: int) -> int:
    """The level m+1 whose V words cut all windows for degree n."""
    if n < 1:
        raise ConfigError("window level is defined for degrees >= 1")
    return n.bit_length()  # equals m+1 for 2^m <= n < 2^{m+1}


def monomial_window(stack: LevelStack, lvl: int) -> bool:
    """Whether level ``lvl`` supports word arithmetic: V monomial-spanned
    and U exactly the complement of the V words."""
    stack.build_to(lvl)
    st = stack.level(lvl)
    try:
        vs = st.v_set()
    except VerificationError:
        return False
    cu = st.U.canonical()
    if cu.kind == "complement":
        return cu.codes == vs
    if cu.kind == "monomials" and cu.ambient_dim <= BUDGET.max_set:
        return frozenset(range(cu.ambient_dim)) - cu.codes == vs
    if st.degree <= BUDGET.max_dense_degree:
        try:
            return st.U == Subspace.complement_of(st.degree, vs, st.field)
        except BudgetExceededError:
            return False
    return False


def _word_path(stack: LevelStack, lvl: int, engine: str) -> bool:
    if engine not in ("auto", "monomial", "dense"):
        raise ConfigError(f"unknown engine {engine!r}")
    if engine == "dense":
        return False
    ok = monomial_window(stack, lvl)
    if engine == "monomial" and not ok:
        raise ConfigError(
            f"level {lvl} is not monomial-spanned; the word path does not apply")
    return ok


def _aligned_subwords(words: Iterable[int], length: int, n: int) -> Set[int]:
    """Codes of every length-n aligned subword of the given length-`length`
    words.  The window slides one letter at a time; while it sits inside a
    run of x (zero bits) its value stays 0, so only letters near a y incur
    big-integer work."""
    out: Set[int] = set()
    if n > length:
        return out
    mask = (1 << n) - 1
    nbytes = (length + 7) // 8
    for w in words:
        cur = w >> (length - n)
        out.add(cur)
        wb = w.to_bytes(nbytes, "little")
        for s in range(1, length - n + 1):
            idx = length - s - n  # bit index of the letter entering the window
            bit = (wb[idx >> 3] >> (idx & 7)) & 1
            if bit == 0 and cur == 0:
                continue
            cur = ((cur << 1) & mask) | bit
            out.add(cur)
        if len(out) > BUDGET.max_set:
            raise BudgetExceededError(
                f"aligned subword set at degree {n} exceeds the set budget")
    return out


def level_pair_words(stack: LevelStack, lvl: int) -> Tuple[List[int], int]:
    """All two-word products of level-``lvl`` V words, with their length."""
    st = stack.level(lvl)
    vs = sorted(st.v_set())
    d = st.degree
    return [concat(a, d, b, d) for a in vs for b in vs], 2 * d


def _ann_rows(s: Subspace) -> list:
    """A basis of the annihilator of s, as dense functional rows."""
    return s.orthogonal().to_dense().rows


def _curried_rows(phi, deg_total: int, pre: int, n: int, field: int) -> set:
    """Functionals r -> phi(a r b) on H(n) for all words a in H(pre) and
    b in H(deg_total - pre - n)."""
    post = deg_total - pre - n
    rows: set = set()
    if field == 2:
        pb = phi.to_bytes(((1 << deg_total) + 7) // 8, "little")
        for a in range(1 << pre):
            abase = a << (n + post)
            for b in range(1 << post):
                base = abase | b
                row = 0
                for w in range(1 << n):
                    idx = base | (w << post)
                    if (pb[idx >> 3] >> (idx & 7)) & 1:
                        row |= 1 << w
                if row:
                    rows.add(row)
    else:
        for a in range(1 << pre):
            abase = a << (n + post)
            for b in range(1 << post):
                base = abase | b
                row = tuple(phi[base | (w << post)] for w in range(1 << n))
                if any(row):
                    rows.add(row)
    return rows


def _v_words(stack: LevelStack, p: int) -> FrozenSet[int]:
    stack.build_to(p)
    return stack.level(p).v_set()


def _n_words(stack: LevelStack, p: int) -> FrozenSet[int]:
    stack.build_to(p)
    nn = stack.level(p).N.canonical()
    if nn.kind == "monomials":
        return nn.codes
    if nn.kind == "complement" and nn.ambient_dim <= BUDGET.max_set:
        return frozenset(range(nn.ambient_dim)) - nn.codes
    raise VerificationError("monomial-N", f"level {p} N is not monomial")


def compute_E(n: int, stack: LevelStack, engine: str = "auto") -> Subspace:
    """E(n): the degree-n slice of the ideal.

    Word path: a monomial lies in E(n) exactly when it is not an aligned
    length-n subword of any product of two level-(m+1) V words, so E(n) is
    the complement of that subword set.  Dense path: the two-sided padding
    conditions become linear constraints, one curried slice of each
    annihilator functional of UH+HU per padding split.
    """
    field = stack.field
    if n == 0:
        return Subspace.zero(0, field)
    lvl = window_level(n)
    stack.build_to(lvl)
    if _word_path(stack, lvl, engine):
        pairs, length = level_pair_words(stack, lvl)
        return Subspace.complement_of(n, _aligned_subwords(pairs, length, n), field)
    st = stack.level(lvl)
    deg2 = 2 * st.degree
    if deg2 > BUDGET.max_dense_degree:
        raise BudgetExceededError(
            f"E({n}) needs dense degree {deg2} and the word path is unavailable")
    ann_u = _ann_rows(st.U)
    if field == 2:
        phis = tensor_functionals(ann_u, ann_u, st.degree)
    else:
        phis = [_tensor_row_p(u, v, field) for u in ann_u for v in ann_u]
    rows: set = set()
    for phi in phis:
        for pre in range(deg2 - n + 1):
            rows |= _curried_rows(phi, deg2, pre, n, field)
    return solve_constraints(n, rows, field)


def compute_R(j: int, stack: LevelStack, engine: str = "auto") -> Subspace:
    """R(j) = {r in H(j) : r H(2^{m+1}-j) lies in U(2^{m+1})}.

    Word path: the excluded monomials are exactly the length-j prefixes of
    the level-(m+1) V words.  R(1) is pinned to 0 alongside U(1).
    """
    field = stack.field
    if j == 0:
        return Subspace.zero(0, field)
    if j == 1:
        return Subspace.zero(1, field)
    lvl = window_level(j)
    stack.build_to(lvl)
    st = stack.level(lvl)
    if _word_path(stack, lvl, engine):
        excl = {prefix(w, st.degree, j) for w in st.v_set()}
        return Subspace.complement_of(j, excl, field)
    if st.degree > BUDGET.max_dense_degree:
        raise BudgetExceededError(
            f"R({j}) needs dense degree {st.degree} and the word path is unavailable")
    rows: set = set()
    for phi in _ann_rows(st.U):
        rows |= _curried_rows(phi, st.degree, 0, j, field)
    return solve_constraints(j, rows, field)


def compute_S(j: int, stack: LevelStack, engine: str = "auto") -> Subspace:
    """S(j) = {r in H(j) : H(2^{m+1}-j) r lies in U(2^{m+1})}; the mirror of
    R(j) with suffixes in place of prefixes."""
    field = stack.field
    if j == 0:
        return Subspace.zero(0, field)
    if j == 1:
        return Subspace.zero(1, field)
    lvl = window_level(j)
    stack.build_to(lvl)
    st = stack.level(lvl)
    if _word_path(stack, lvl, engine):
        excl = {suffix(w, j) for w in st.v_set()}
        return Subspace.complement_of(j, excl, field)
    if st.degree > BUDGET.max_dense_degree:
        raise BudgetExceededError(
            f"S({j}) needs dense degree {st.degree} and the word path is unavailable")
    rows: set = set()
    for phi in _ann_rows(st.U):
        rows |= _curried_rows(phi, st.degree, st.degree - j, j, field)
    return solve_constraints(j, rows, field)


def _pullback(source: Subspace, avoid: Subspace, field: int) -> list:
    """Rows of ``source`` that greedily extend ``avoid`` toward
    avoid + source, taken in echelon order (lex-least leading word first).
    The returned vectors stay inside ``source``."""
    dense = avoid.to_dense()
    rows = list(dense.rows)
    pivots = list(dense.pivots)
    picked = []
    for cand in source.to_dense().rows:
        if field == 2:
            resid = gf2.reduce_vector(cand, rows, pivots)
            nonzero = resid != 0
        else:
            resid = gfp.reduce_vector(cand, rows, pivots, field)
            nonzero = any(resid)
        if nonzero:
            picked.append(cand)
            _insert_reduced(rows, pivots, resid, field)
    return picked


def _padded_product(mid: Subspace, pre: int, post: int, field: int) -> Subspace:
    out = mid
    if pre:
        out = space_mul(Subspace.full(pre, field), out)
    if post:
        out = space_mul(out, Subspace.full(post, field))
    return out


def compute_W(j: int, stack: LevelStack, engine: str = "auto",
              s_space: Optional[Subspace] = None) -> Subspace:
    """A complement of S(j) inside the ascending product of V spaces.

    Writing j = 2^{p_0} + ... + 2^{p_n} with p_0 < ... < p_n, the product
    V(2^{p_0})...V(2^{p_n}) complements the sum of the mixed pieces
    H..U(2^{p_i})..H, all of which lie inside S(j); W(j) is pulled back from
    a basis of (product + S(j))/S(j).  On the word path W(j) is spanned by
    the length-j suffixes of the level words and the factor check below is
    the word form of the mixed-piece containment.
    """
    field = stack.field
    if j == 0:
        return Subspace.full(0, field)
    if j == 1:
        return stack.level(0).V
    bits = binary_decomposition(j)
    lvl = window_level(j)
    stack.build_to(lvl)
    if _word_path(stack, lvl, engine):
        st = stack.level(lvl)
        suf = {suffix(w, j) for w in st.v_set()}
        for w in sorted(suf):
            off = 0
            for p in bits:  # ascending factor sizes, left to right
                piece = subword(w, j, off, 1 << p)
                if piece not in _v_words(stack, p):
                    raise VerificationError(
                        "w-ascending",
                        f"W({j}) word {code_to_word(w, j)} has factor "
                        f"{code_to_word(piece, 1 << p)} outside V({1 << p})")
                off += 1 << p
        return Subspace.from_monomials(j, suf, field)
    s_sub = s_space if s_space is not None else compute_S(j, stack, engine)
    prod = stack.level(bits[0]).V
    for p in bits[1:]:
        prod = space_mul(prod, stack.level(p).V)
    for i, p in enumerate(bits):
        pre = sum(1 << q for q in bits[:i])
        post = sum(1 << q for q in bits[i + 1:])
        piece = _padded_product(stack.level(p).U, pre, post, field)
        if not s_sub.contains_space(piece):
            raise VerificationError(
                "w-mixed-piece", f"H.U(2^{p}).H at degree {j} escapes S({j})")
    w_sub = Subspace.span(j, _pullback(prod, s_sub, field), field)
    if w_sub.dim() + s_sub.dim() != 1 << j or w_sub.sum(s_sub).dim() != 1 << j:
        raise VerificationError(
            "w-complement", f"W({j}) does not complement S({j})")
    return w_sub


def check_m_stack(stack: LevelStack, n: int, m: int, k: int,
                  engine: str = "auto") -> None:
    """H(m 2^{n+1}) M(2^n) H((2^k - 2m - 1) 2^n) lies inside U(2^{n+k}).

    Word form: every level-(n+k) V word carries an N word of level n at
    offset m 2^{n+1}.  Raises on violation.
    """
    if not 0 <= m < (1 << (k - 1)):
        raise ConfigError("stacked M check needs 0 <= m < 2^{k-1}")
    stack.build_to(n + k)
    big = stack.level(n + k)
    small = stack.level(n)
    start = m << (n + 1)
    if _word_path(stack, n + k, engine):
        nw = _n_words(stack, n)
        for v in big.v_set():
            if subword(v, big.degree, start, 1 << n) not in nw:
                raise VerificationError(
                    "m-stack",
                    f"V({big.degree}) word {code_to_word(v, big.degree)} meets "
                    f"M({small.degree}) at offset {start}")
        return
    piece = _padded_product(small.M, start, big.degree - start - small.degree,
                            stack.field)
    if not big.U.contains_space(piece):
        raise VerificationError(
            "m-stack", f"H M(2^{n}) H at offset {start} escapes U(2^{n + k})")


def compute_Q(j: int, stack: LevelStack, engine: str = "auto",
              r_space: Optional[Subspace] = None) -> Subspace:
    """A complement of R(j) inside the descending product of N spaces.

    The mixed pieces H..M(2^{p_i})..H lie inside R(j) because each stacked
    M multiplies into U at the window level (check_m_stack); the product
    N(2^{p_n})...N(2^{p_0}) then complements their sum.  On the word path
    Q(j) is spanned by the length-j prefixes of the level words.
    """
    field = stack.field
    if j == 0:
        return Subspace.full(0, field)
    if j == 1:
        return stack.level(0).V
    bits = binary_decomposition(j)
    lvl = window_level(j)
    stack.build_to(lvl)
    for i, p in enumerate(bits):
        m_shift = sum(1 << (q - p - 1) for q in bits[i + 1:])
        check_m_stack(stack, p, m_shift, lvl - p, engine)
    if _word_path(stack, lvl, engine):
        st = stack.level(lvl)
        pref = {prefix(w, st.degree, j) for w in st.v_set()}
        for w in sorted(pref):
            off = 0
            for p in reversed(bits):  # descending factor sizes, left to right
                piece = subword(w, j, off, 1 << p)
                if piece not in _n_words(stack, p):
                    raise VerificationError(
                        "q-descending",
                        f"Q({j}) word {code_to_word(w, j)} has factor "
                        f"{code_to_word(piece, 1 << p)} outside N({1 << p})")
                off += 1 << p
        return Subspace.from_monomials(j, pref, field)
    r_sub = r_space if r_space is not None else compute_R(j, stack, engine)
    prod = stack.level(bits[-1]).N
    for p in reversed(bits[:-1]):
        prod = space_mul(prod, stack.level(p).N)
    q_sub = Subspace.span(j, _pullback(prod, r_sub, field), field)
    if q_sub.dim() + r_sub.dim() != 1 << j or q_sub.sum(r_sub).dim() != 1 << j:
        raise VerificationError(
            "q-complement", f"Q({j}) does not complement R({j})")
    return q_sub


class QuotientTable:
    """Cached E/R/S/Q/W spaces over one level stack.

    Degrees above the cache limit are recomputed on demand and not
    retained; the word path keeps that cheap while memory stays bounded.
    """

    CACHE_LIMIT = 600

    def __init__(self, stack: LevelStack, engine: str = "auto"):
        if engine not in ("auto", "monomial", "dense"):
            raise ConfigError(f"unknown engine {engine!r}")
        self.stack = stack
        self.engine = engine
        self._spaces: Dict[str, Dict[int, Subspace]] = {
            "E": {}, "R": {}, "S": {}, "Q": {}, "W": {}}

    @property
    def field(self) -> int:
        return self.stack.field

    def _get(self, kind: str, n: int, build) -> Subspace:
        cache = self._spaces[kind]
        if n in cache:
            return cache[n]
        sub = build()
        if n <= self.CACHE_LIMIT:
            cache[n] = sub
        return sub

    def E(self, n: int) -> Subspace:
        return self._get("E", n, lambda: compute_E(n, self.stack, self.engine))

    def R(self, j: int) -> Subspace:
        return self._get("R", j, lambda: compute_R(j, self.stack, self.engine))

    def S(self, j: int) -> Subspace:
        return self._get("S", j, lambda: compute_S(j, self.stack, self.engine))

    def W(self, j: int) -> Subspace:
        return self._get("W", j, lambda: compute_W(
            j, self.stack, self.engine,
            s_space=self.S(j) if j >= 2 else None))

    def Q(self, j: int) -> Subspace:
        return self._get("Q", j, lambda: compute_Q(
            j, self.stack, self.engine,
            r_space=self.R(j) if j >= 2 else None))

    def put_E(self, n: int, sub: Subspace) -> None:
        """Replace a cached slice of E (for mutation probes in tests)."""
        self._spaces["E"][n] = sub

    def excluded_words(self, n: int) -> FrozenSet[int]:
        """Support of the monomial complement of E(n) (word path only)."""
        cached = self._spaces["E"].get(n)
        if cached is not None:
            c = cached.canonical()
            if c.kind == "complement":
                return c.codes
            if c.kind == "monomials" and c.ambient_dim <= BUDGET.max_set:
                return frozenset(range(c.ambient_dim)) - c.codes
            raise ConfigError(f"E({n}) has no word complement")
        lvl = window_level(n)
        if not _word_path(self.stack, lvl, self.engine):
            raise ConfigError(f"E({n}) is not on the word path")
        pairs, length = level_pair_words(self.stack, lvl)
        return frozenset(_aligned_subwords(pairs, length, n))

    def quotient_dim(self, n: int) -> int:
        """dim H(n)/E(n)."""
        if n == 0:
            return 1
        try:
            return len(self.excluded_words(n))
        except ConfigError:
            return (1 << n) - self.E(n).dim()

    def x_witness(self, n: int) -> bool:
        """True when the pure-x word of degree n stays outside E(n)."""
        if n == 0:
            return True
        try:
            return 0 in self.excluded_words(n)
        except ConfigError:
            return not self.E(n).contains_monomial(0)


def _report(check: str, parameters: dict, status: str, **extra) -> dict:
    rep = {"check": check, "parameters": parameters, "status": status}
    rep.update(extra)
    return rep


def _word_complement(sub: Subspace, degree: int) -> Optional[FrozenSet[int]]:
    """The excluded word set of a set-kind subspace, if derivable."""
    del degree
    return _exclude_set(sub)


def verify_totalsize(n: int, table: QuotientTable) -> dict:
    """The intersection of the padded one-sided spaces lands inside E(n),
    and dim H(n)/E(n) is bounded by the W/Q dimension convolution."""
    params = {"n": n}
    if n < 1:
        return _report("totalsize", params, "not applicable",
                       detail="defined for n >= 1")
    e_sub = table.E(n)
    lhs = (1 << n) - e_sub.dim()
    rhs = sum(table.W(n - k).dim() * table.Q(k).dim() for k in range(n + 1))
    e_excl = _word_complement(e_sub, n)
    s_excl = {k: _word_complement(table.S(n - k), n - k) for k in range(n + 1)}
    r_excl = {k: _word_complement(table.R(k), k) for k in range(n + 1)}
    counter: Optional[str] = None
    if e_excl is not None and None not in s_excl.values() \
            and None not in r_excl.values():
        for w in range(1 << n):
            inside = True
            for k in range(n + 1):
                head_in_s = prefix(w, n, n - k) not in s_excl[k]
                tail_in_r = suffix(w, k) not in r_excl[k]
                if not (head_in_s or tail_in_r):
                    inside = False
                    break
            if inside and w in e_excl:
                counter = code_to_word(w, n)
                break
    else:
        field = table.field
        meet: Optional[Subspace] = None
        for k in range(n + 1):
            term = space_mul(table.S(n - k), Subspace.full(k, field)).sum(
                space_mul(Subspace.full(n - k, field), table.R(k)))
            meet = term if meet is None else meet.intersect(term)
        if not e_sub.contains_space(meet):
            for row in meet.to_dense().rows:
                if not e_sub.contains_vector(row):
                    counter = f"vector with leading word " \
                              f"{code_to_word((row & -row).bit_length() - 1, n)}" \
                        if table.field == 2 else "dense vector"
                    break
    ok = counter is None and lhs <= rhs
    rep = _report("totalsize", params, "pass" if ok else "fail",
                  dim_quotient=lhs, bound=rhs)
    if counter is not None:
        rep["counterexample"] = counter
    return rep


def verify_qadd(j: int, k: int, table: QuotientTable) -> dict:
    """dim Q(j+k) <= dim Q(j) dim Q(k) and likewise for W, when the bits of
    k sit strictly below the bits of j."""
    params = {"j": j, "k": k}
    if j < 1 or k < 1:
        return _report("qadd", params, "not applicable",
                       detail="j and k must be positive")
    if binary_decomposition(k)[-1] >= binary_decomposition(j)[0]:
        return _report("qadd", params, "not applicable",
                       detail="bits of k must sit strictly below bits of j")
    dq = (table.Q(j + k).dim(), table.Q(j).dim(), table.Q(k).dim())
    dw = (table.W(j + k).dim(), table.W(j).dim(), table.W(k).dim())
    ok = dq[0] <= dq[1] * dq[2] and dw[0] <= dw[1] * dw[2]
    return _report("qadd", params, "pass" if ok else "fail",
                   dim_q=list(dq), dim_w=list(dw))


def verify_wqsmall(n: int, table: QuotientTable) -> dict:
    """dim W(n) <= dim Q(2^{m+1}-n) dim V(2^{m+1}) and the mirrored bound,
    for n strictly between consecutive powers of two."""
    params = {"n": n}
    m = n.bit_length() - 1
    if n <= 1 or n == 1 << m:
        return _report("wqsmall", params, "not applicable",
                       detail="n must lie strictly between powers of two")
    other = (1 << (m + 1)) - n
    table.stack.build_to(m + 1)
    dim_v = table.stack.level(m + 1).V.dim()
    dw, dq = table.W(n).dim(), table.Q(n).dim()
    qo, wo = table.Q(other).dim(), table.W(other).dim()
    ok = dw <= qo * dim_v and dq <= wo * dim_v
    return _report("wqsmall", params, "pass" if ok else "fail",
                   dim_w=dw, dim_q=dq, dim_q_mirror=qo, dim_w_mirror=wo,
                   dim_v=dim_v)


def verify_sdim(j: int, table: QuotientTable) -> dict:
    """dim Q(j), dim W(j) <= 2 sqrt(j) floor(log j) when every bit of j
    falls in a single S interval.  Compared as squared integers."""
    params = {"j": j}
    if j < 2:
        return _report("sdim", params, "not applicable",
                       detail="needs j >= 2")
    sched = table.stack.schedule
    labels = [sched.in_S(p) for p in binary_decomposition(j)]
    if any(lab is None for lab in labels):
        return _report("sdim", params, "not applicable",
                       detail="some bit index lies outside S")
    if len({lab[0] for lab in labels}) != 1:
        return _report("sdim", params, "not applicable",
                       detail="bit indices span several S intervals")
    log_j = j.bit_length() - 1
    bound_sq = 4 * j * log_j * log_j
    dq, dw = table.Q(j).dim(), table.W(j).dim()
    ok = dq * dq <= bound_sq and dw * dw <= bound_sq
    return _report("sdim", params, "pass" if ok else "fail",
                   dim_q=dq, dim_w=dw, bound_squared=bound_sq)


def verify_tdim(j: int, table: QuotientTable) -> dict:
    """dim Q(j), dim W(j) <= 2 when every bit of j falls in one T
    interval."""
    params = {"j": j}
    if j < 1:
        return _report("tdim", params, "not applicable", detail="needs j >= 1")
    sched = table.stack.schedule
    labels = [sched.T_of(p) for p in binary_decomposition(j)]
    if any(lab is None for lab in labels):
        return _report("tdim", params, "not applicable",
                       detail="some bit index lies inside S")
    if len(set(labels)) != 1:
        return _report("tdim", params, "not applicable",
                       detail="bit indices span several T intervals")
    dq, dw = table.Q(j).dim(), table.W(j).dim()
    ok = dq <= 2 and dw <= 2
    return _report("tdim", params, "pass" if ok else "fail",
                   dim_q=dq, dim_w=dw)


def verify_main_estimate(n: int, table: QuotientTable) -> dict:
    """dim Q(n), dim W(n) <= 8 sqrt(n) (log n)^3.  The log is evaluated at
    floor(log2 n) and the comparison squared, which only tightens the
    bound."""
    params = {"n": n}
    if n < 2:
        return _report("estimate", params, "not applicable",
                       detail="needs n >= 2")
    log_n = n.bit_length() - 1
    bound_sq = 64 * n * log_n ** 6
    dq, dw = table.Q(n).dim(), table.W(n).dim()
    ok = dq * dq <= bound_sq and dw * dw <= bound_sq
    return _report("estimate", params, "pass" if ok else "fail",
                   dim_q=dq, dim_w=dw, bound_squared=bound_sq)


def _ideal_step(e_low: Subspace, e_high: Subspace, n: int) -> Optional[dict]:
    """First violation of H(1) E(n) + E(n) H(1) inside E(n+1), or None."""
    ex_low = _exclude_set(e_low)
    ex_high = _exclude_set(e_high)
    if ex_low is not None and ex_high is not None:
        for v in sorted(ex_high):
            tail = suffix(v, n)
            if tail not in ex_low:
                return {"n": n, "side": "left",
                        "factor": code_to_word(prefix(v, n + 1, 1), 1),
                        "element": code_to_word(tail, n),
                        "product": code_to_word(v, n + 1)}
            head = prefix(v, n + 1, n)
            if head not in ex_low:
                return {"n": n, "side": "right",
                        "factor": code_to_word(suffix(v, 1), 1),
                        "element": code_to_word(head, n),
                        "product": code_to_word(v, n + 1)}
        return None
    inc_low = _include_set(e_low)
    if inc_low is not None:
        for w in sorted(inc_low):
            for letter in (0, 1):
                left = (letter << n) | w
                if not e_high.contains_monomial(left):
                    return {"n": n, "side": "left",
                            "factor": code_to_word(letter, 1),
                            "element": code_to_word(w, n),
                            "product": code_to_word(left, n + 1)}
                right = (w << 1) | letter
                if not e_high.contains_monomial(right):
                    return {"n": n, "side": "right",
                            "factor": code_to_word(letter, 1),
                            "element": code_to_word(w, n),
                            "product": code_to_word(right, n + 1)}
        return None
    field = e_low.field
    grown = space_mul(Subspace.full(1, field), e_low).sum(
        space_mul(e_low, Subspace.full(1, field)))
    if e_high.contains_space(grown):
        return None
    for row in grown.to_dense().rows:
        if not e_high.contains_vector(row):
            return {"n": n, "side": "dense", "element": repr(row)}
    return None


def verify_ideal(nmax: int, table: QuotientTable) -> dict:
    """H(1) E(n) + E(n) H(1) lies inside E(n+1) for every n < nmax; the two
    generators make this the full graded ideal condition."""
    params = {"nmax": nmax}
    for n in range(1, nmax):
        counter = _ideal_step(table.E(n), table.E(n + 1), n)
        if counter is not None:
            return _report("ideal", params, "fail", counterexample=counter)
    return _report("ideal", params, "pass")
