"""Index schedules: the set Z, the intervals S_i and T_m, and their queries.

A schedule is a finite ordered list of entries (i, f, F) with big-integer
indices i. Each index i contributes the exponent interval

    S_i = [2^i - i - floor(log i), 2^i - floor(log i) - 1]     (log base 2)

and the gaps between consecutive S intervals (plus a base piece reaching
down to 0 and an unbounded top piece) are the T intervals. Together they
partition the exponents {0, 1, 2, ...}: every level 2^n of the construction
is steered by where n and n-1 fall.

Real-mode indices are astronomically large (the validation witness has
i = 2^46657), so interval bounds are handled as :class:`BoundExpr` values
of the form 2^i - a*i - b*floor(log i) - c and compared through bit lengths
instead of being expanded.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple, Union

from .errors import BudgetExceededError, ConfigError
from .freealg import GeneralPoly, parse_poly

TOP = "top"  # label of the unbounded T interval above the last S interval

_EXPAND_LIMIT = 1 << 22  # bits; bounds with larger i are never materialized


def floor_log2(n: int) -> int:
    if n < 1:
        raise ValueError("log of a non-positive integer")
    return n.bit_length() - 1


@dataclass(frozen=True)
class BoundExpr:
    """The integer 2^i - a*i - b*floor(log i) - c, kept unexpanded."""

    i: int
    a: int = 0
    b: int = 0
    c: int = 0

    def _linear(self) -> int:
        return self.a * self.i + self.b * floor_log2(self.i) + self.c

    def value(self) -> int:
        if self.i > _EXPAND_LIMIT:
            raise BudgetExceededError(
                f"refusing to expand 2^i for i with {self.i.bit_length()} bits")
        return (1 << self.i) - self._linear()

    def gt(self, n: int) -> bool:
        """Whether the expression exceeds the machine integer n."""
        y = n + self._linear()
        if y <= 0:
            return True
        return self.i >= y.bit_length()

    def ge(self, n: int) -> bool:
        return self.gt(n - 1)

    def le(self, n: int) -> bool:
        return not self.gt(n)

    def lt(self, n: int) -> bool:
        return not self.ge(n)

    def text(self) -> str:
        parts = [f"2^{_abbrev(self.i)}"]
        if self.a:
            parts.append(f"{self.a}*i" if self.a != 1 else "i")
        if self.b:
            parts.append(f"{self.b}*log(i)" if self.b != 1 else "log(i)")
        if self.c:
            parts.append(str(self.c))
        return " - ".join(parts)


def _abbrev(n: int) -> str:
    if n.bit_length() > 40:
        return f"<{n.bit_length()}-bit integer>"
    return str(n)


def _decimal(n: int) -> str:
    """str(n) for indices beyond the interpreter's digit guard."""
    import sys

    old = sys.get_int_max_str_digits()
    try:
        sys.set_int_max_str_digits(0)
        return str(n)
    finally:
        sys.set_int_max_str_digits(old)


def _parse_decimal(s: str) -> int:
    import sys

    old = sys.get_int_max_str_digits()
    try:
        sys.set_int_max_str_digits(0)
        return int(s)
    finally:
        sys.set_int_max_str_digits(old)


PowTower = Union[int, Tuple[str, "PowTower"]]


def cmp_vs_pow2(n: int, e: PowTower) -> int:
    """Three-way comparison of n against 2^e, where e is an int or a nested
    ("p", e') meaning 2^(e'). Never materializes the power."""
    if n <= 0:
        return -1
    lead = n.bit_length() - 1
    if isinstance(e, int):
        if lead > e:
            return 1
        if lead < e:
            return -1
    else:
        inner = cmp_vs_pow2(lead, e[1])
        if inner != 0:
            return inner
    # n has exactly the same leading position as 2^e
    return 0 if n & (n - 1) == 0 else 1


@dataclass
class ScheduleEntry:
    i: int
    f: Optional[GeneralPoly] = None
    f_text: Optional[str] = None
    F_basis: Optional[List[str]] = None  # polynomial texts for the F subspace

    def s_lower(self) -> BoundExpr:
        return BoundExpr(self.i, a=1, b=1, c=0)

    def s_upper(self) -> BoundExpr:
        return BoundExpr(self.i, a=0, b=1, c=1)

    def r_exponent(self) -> BoundExpr:
        """r_i = 2^(2^i - floor(log i)); this is that exponent."""
        return BoundExpr(self.i, a=0, b=1, c=0)


@dataclass
class ValidationReport:
    ok: bool
    clause: Optional[str] = None
    index: Optional[int] = None
    lhs: str = ""
    rhs: str = ""
    detail: str = ""
    marker: Optional[str] = None

    def text(self) -> str:
        if self.ok:
            base = "ok"
            return f"{base} ({self.marker})" if self.marker else base
        return (f"violation[{self.clause}] at entry {self.index}: "
                f"{self.lhs} vs {self.rhs}: {self.detail}")


class Schedule:
    """An immutable index schedule in real or toy mode."""

    def __init__(self, mode: str, entries: List[ScheduleEntry], field: int = 2):
        if mode not in ("real", "toy"):
            raise ConfigError(f"unknown schedule mode {mode!r}")
        entries = sorted(entries, key=lambda e: e.i)
        for a, b in zip(entries, entries[1:]):
            if a.i == b.i:
                raise ConfigError(f"duplicate schedule index {_abbrev(a.i)}")
        floor_i = 2 if mode == "toy" else 5
        for e in entries:
            if e.i < floor_i:
                raise ConfigError(
                    f"index {e.i} below the {mode}-mode minimum {floor_i}")
        self.mode = mode
        self.entries = entries
        self.field = field

    # -- constructors --------------------------------------------------------

    @classmethod
    def default_real(cls, field: int = 2) -> "Schedule":
        """The documented single-entry real schedule: i = 2^46657, f = x."""
        return cls("real", [ScheduleEntry(2 ** 46657, parse_poly("x", field), "x")],
                   field)

    @classmethod
    def toy(cls, indices: List[int], field: int = 2,
            f_texts: Optional[Dict[int, str]] = None,
            F_bases: Optional[Dict[int, List[str]]] = None) -> "Schedule":
        entries = []
        for i in indices:
            ft = (f_texts or {}).get(i)
            entries.append(ScheduleEntry(
                i,
                parse_poly(ft, field) if ft else None,
                ft,
                (F_bases or {}).get(i)))
        return cls("toy", entries, field)

    @property
    def strict(self) -> bool:
        """True when the full real-mode index constraints are in force."""
        return self.mode == "real"

    @property
    def marker(self) -> Optional[str]:
        return None if self.mode == "real" else "toy: index constraints waived"

    # -- interval queries ----------------------------------------------------

    def in_S(self, n: int) -> Optional[Tuple[int, int]]:
        """(i, j) with n = 2^i - i - floor(log i) + j when n lies in some S_i."""
        if n < 0:
            return None
        for e in self.entries:
            lo, hi = e.s_lower(), e.s_upper()
            if lo.le(n) and hi.ge(n):
                return e.i, n - lo.value()
            if lo.gt(n):
                break  # entries are sorted; later intervals start even higher
        return None

    def T_of(self, n: int) -> Optional[Union[int, str]]:
        """The label of the T interval containing n: the Z member whose S
        interval sits directly above (or ``"top"``), None when n is in S."""
        if n < 0:
            return None
        for e in self.entries:
            if e.s_lower().gt(n):
                return e.i
            if e.s_upper().ge(n):
                return None
        return TOP

    def classify(self, n: int):
        s = self.in_S(n)
        if s is not None:
            return ("S",) + s
        return ("T", self.T_of(n))

    def case_for(self, n: int) -> int:
        """Which construction case builds level 2^n from level 2^(n-1).

        The step is steered by where n-1 sits: inside S it is a doubling
        step (case 1) unless n has left S (case 3); from T it is always the
        two-word step (case 2).
        """
        if n < 1:
            raise ValueError("levels are indexed by n >= 1")
        if self.in_S(n - 1) is None:
            return 2
        return 1 if self.in_S(n) is not None else 3

    def entry_for(self, i: int) -> ScheduleEntry:
        for e in self.entries:
            if e.i == i:
                return e
        raise KeyError(f"no schedule entry with index {i}")

    # -- derived constants ----------------------------------------------------

    def r_value(self, i: int) -> int:
        return 1 << self.entry_for(i).r_exponent().value()

    def w_value(self, i: int) -> int:
        return 4 * self.r_value(i)

    # -- validation ------------------------------------------------------------

    def validate(self) -> ValidationReport:
        if self.mode == "toy":
            return ValidationReport(ok=True, marker=self.marker)
        return validate_real([(e.i, e.f) for e in self.entries])

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        entries = []
        for e in self.entries:
            entries.append({
                "i": _decimal(e.i),
                "f": e.f_text,
                "F": {"basis": list(e.F_basis)} if e.F_basis is not None else None,
            })
        return {"mode": self.mode, "entries": entries}

    @classmethod
    def from_json(cls, obj: dict, field: int = 2) -> "Schedule":
        try:
            mode = obj["mode"]
            raw = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed schedule object: {exc}") from exc
        entries = []
        for rec in raw:
            try:
                i = _parse_decimal(rec["i"])
            except (KeyError, ValueError, TypeError) as exc:
                raise ConfigError(f"bad schedule index in {rec!r}") from exc
            ft = rec.get("f")
            fb = rec.get("F")
            basis = None
            if fb is not None:
                basis = [str(t) for t in fb["basis"]]
            entries.append(ScheduleEntry(
                i, parse_poly(ft, field) if ft else None, ft, basis))
        return cls(mode, entries, field)

    def canonical_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# stand-alone operations


def binary_decomposition(j: int) -> List[int]:
    """Ascending exponents p_0 < ... < p_n with j = sum of 2^(p_k)."""
    if j < 1:
        raise ValueError("positive integers only")
    out = []
    p = 0
    while j:
        if j & 1:
            out.append(p)
        j >>= 1
        p += 1
    return out


def partition_terms(schedule: Schedule, n: int) -> List[Tuple[str, Union[int, str], int]]:
    """Split n by classifying each binary digit: bits landing in S_m sum to
    j_m, bits landing in a T interval sum to k_m. Returns ("S"|"T", label,
    partial sum) records ordered by lowest contributing bit; they sum to n."""
    groups: Dict[Tuple[str, Union[int, str]], int] = {}
    order: List[Tuple[str, Union[int, str]]] = []
    for p in binary_decomposition(n):
        s = schedule.in_S(p)
        key = ("S", s[0]) if s is not None else ("T", schedule.T_of(p))
        if key not in groups:
            groups[key] = 0
            order.append(key)
        groups[key] += 1 << p
    return [(kind, label, groups[(kind, label)]) for kind, label in order]


def validate_real(entries: List[Tuple[int, Optional[GeneralPoly]]]) -> ValidationReport:
    """Check the real-mode admissibility clauses, reporting the first failure.

    Clauses per entry: i >= 5 and floor(log i) > 6^(6 deg f); per consecutive
    pair (j, i): i > 2^2^2^(2j). The tower is never expanded: any i you can
    actually write down has too few bits to clear a 2j-level leading position,
    so the comparison runs on iterated bit lengths.
    """
    prev_i: Optional[int] = None
    for idx, (i, f) in enumerate(entries):
        if prev_i is not None and i <= prev_i:
            return ValidationReport(
                ok=False, clause="sorted", index=idx,
                lhs=_abbrev(i), rhs=_abbrev(prev_i),
                detail="entries must be strictly increasing in i")
        if i < 5:
            return ValidationReport(
                ok=False, clause="minimum-index", index=idx,
                lhs=str(i), rhs="5", detail="real mode requires i >= 5")
        deg = f.max_degree() if f is not None else 0
        threshold = 6 ** (6 * deg)
        log_i = floor_log2(i)
        if log_i <= threshold:
            return ValidationReport(
                ok=False, clause="log-degree", index=idx,
                lhs=f"floor(log i) = {log_i}",
                rhs=f"6^(6*{deg}) = {_abbrev(threshold)}",
                detail="floor(log i) must exceed 6^(6 deg f)")
        if prev_i is not None:
            tower: PowTower = ("p", ("p", 2 * prev_i))
            if cmp_vs_pow2(i, tower) <= 0:
                return ValidationReport(
                    ok=False, clause="gap", index=idx,
                    lhs=_abbrev(i),
                    rhs=f"2^2^2^(2*{_abbrev(prev_i)})",
                    detail="consecutive indices must clear the triple tower")
        prev_i = i
    # S-interval disjointness: for consecutive i' < i the bound
    # 2^(i-1) > i + log(i) certifies upper(S_i') < lower(S_i)
    for idx in range(1, len(entries)):
        i = entries[idx][0]
        prev = entries[idx - 1][0]
        slack = i + floor_log2(i) - floor_log2(prev) - 1
        if slack > 0 and i - 1 < slack.bit_length():
            lo = BoundExpr(i, a=1, b=1, c=0)
            hi = BoundExpr(prev, a=0, b=1, c=1)
            if not (hi.i <= 64 and lo.i <= 64 and hi.value() < lo.value()):
                return ValidationReport(
                    ok=False, clause="disjoint", index=idx,
                    lhs=hi.text(), rhs=lo.text(),
                    detail="S intervals of consecutive indices may overlap")
    return ValidationReport(ok=True)
