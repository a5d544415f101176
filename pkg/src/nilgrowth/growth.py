"""Hilbert profile of the quotient algebra and growth-rate estimation.

The profile records dim H(n)/E(n) per degree and its running sum; the
bound check replays the closing arithmetic (64 n^2 (log n)^6 degreewise,
64 n^3 (log n)^6 cumulative) and the slope estimator fits log2(cumulative)
against log2(n) with exact rational arithmetic.  The growth exponent is
reported as a window statistic: the limit superior behind the dimension
bound is not observable at finite degree.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .errors import ConfigError, VerificationError
from .quotient import QuotientTable

#: fractional bits kept by _log2_fraction (error below 2**-LOG2_BITS)
LOG2_BITS = 32
_GUARD_BITS = 64


@dataclass(frozen=True)
class HilbertProfile:
    """Exact quotient dimensions per degree, starting at degree 1."""

    dims: Tuple[int, ...]
    x_survives: Optional[Tuple[bool, ...]] = None
    cumulative: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        total, acc = 0, []
        for n, d in enumerate(self.dims, start=1):
            if d < 1:
                raise VerificationError(
                    "hilbert", f"dim H({n})/E({n}) = {d} below 1")
            total += d
            acc.append(total)
        object.__setattr__(self, "cumulative", tuple(acc))

    @property
    def nmax(self) -> int:
        return len(self.dims)

    def dim_quotient(self, n: int) -> int:
        return self.dims[n - 1]

    def cumulative_at(self, n: int) -> int:
        return self.cumulative[n - 1]


def hilbert(nmax: int, table: QuotientTable) -> HilbertProfile:
    """Exact dim H(n)/E(n) for n = 1..nmax, with the pure-x survival flag
    per degree."""
    if nmax < 1:
        raise ConfigError("hilbert profile needs nmax >= 1")
    dims: List[int] = []
    survives: List[bool] = []
    for n in range(1, nmax + 1):
        try:
            excl = table.excluded_words(n)
            dims.append(len(excl))
            survives.append(0 in excl)
        except ConfigError:
            sub = table.E(n)
            dims.append((1 << n) - sub.dim())
            survives.append(not sub.contains_monomial(0))
    return HilbertProfile(dims=tuple(dims), x_survives=tuple(survives))


def check_growth_bound(profile: HilbertProfile) -> dict:
    """dim H(n)/E(n) < 64 n^2 (log n)^6 and cumulative <= 64 n^3 (log n)^6
    for every degree n >= 2 of the profile.  The log is evaluated at
    floor(log2 n), which only tightens both bounds."""
    for n in range(2, profile.nmax + 1):
        log_n = n.bit_length() - 1
        degreewise = 64 * n * n * log_n ** 6
        cumulative = 64 * n ** 3 * log_n ** 6
        if not profile.dim_quotient(n) < degreewise:
            return {"check": "growth-bound", "parameters": {"nmax": profile.nmax},
                    "status": "fail", "n": n, "kind": "degreewise",
                    "dim": profile.dim_quotient(n), "bound": degreewise}
        if not profile.cumulative_at(n) <= cumulative:
            return {"check": "growth-bound", "parameters": {"nmax": profile.nmax},
                    "status": "fail", "n": n, "kind": "cumulative",
                    "dim": profile.cumulative_at(n), "bound": cumulative}
    return {"check": "growth-bound", "parameters": {"nmax": profile.nmax},
            "status": "pass"}


def _log2_fraction(v: int, frac_bits: int = LOG2_BITS) -> Fraction:
    """log2(v) as an exact dyadic rational: exact for powers of two, else
    the binary-digit recurrence truncated to frac_bits (absolute error
    below 2**-frac_bits)."""
    if v < 1:
        raise ConfigError("log2 of a non-positive value")
    e = v.bit_length() - 1
    if v == 1 << e:
        return Fraction(e)
    x = (v << _GUARD_BITS) >> e
    num = 0
    for i in range(1, frac_bits + 1):
        x = (x * x) >> _GUARD_BITS
        if x >> (_GUARD_BITS + 1):
            x >>= 1
            num |= 1 << (frac_bits - i)
    return Fraction(e) + Fraction(num, 1 << frac_bits)


def gk_slope(profile: HilbertProfile, window: Tuple[int, int]) -> Fraction:
    """Least-squares slope of log2(cumulative) against log2(n) over the
    window.  Sample points are the powers of two inside the window when at
    least two exist (their abscissas are exact), otherwise every integer
    degree; ordinates use _log2_fraction."""
    n1, n2 = window
    if not 2 <= n1 < n2 <= profile.nmax:
        raise ConfigError(f"empty or out-of-range window {window}")
    points = [n for n in range(n1, n2 + 1) if n & (n - 1) == 0]
    if len(points) < 2:
        points = list(range(n1, n2 + 1))
    xs = [_log2_fraction(n) for n in points]
    ys = [_log2_fraction(profile.cumulative_at(n)) for n in points]
    k = len(points)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    den = k * sxx - sx * sx
    if den == 0:
        raise ConfigError("window has a single abscissa")
    return (k * sxy - sx * sy) / den


def profile_to_csv(profile: HilbertProfile) -> str:
    lines = ["n,dim_quotient,cumulative"]
    for n in range(1, profile.nmax + 1):
        lines.append(f"{n},{profile.dim_quotient(n)},{profile.cumulative_at(n)}")
    return "\n".join(lines) + "\n"


def profile_to_json(profile: HilbertProfile, metadata: dict) -> dict:
    rows = []
    for n in range(1, profile.nmax + 1):
        row = {"n": n, "dim_quotient": profile.dim_quotient(n),
               "cumulative": profile.cumulative_at(n)}
        if profile.x_survives is not None:
            row["x_survives"] = profile.x_survives[n - 1]
        rows.append(row)
    return {"metadata": dict(metadata), "rows": rows}
