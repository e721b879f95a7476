"""T-vector enumeration and combinatorial quotients.

A configuration of d lines determines counts t_k of points where exactly
k lines meet.  Pair counting forces

    sum_{k>=2} t_k * C(k,2) = C(d,2),

and every candidate vector T = (t_2, ..., t_d) satisfying this identity
gets the combinatorial quotient

    q(T) = (d^2 - sum_k k^2 t_k) / (sum_k t_k),

the value the Harbourne constant would take if T were realized by an
actual arrangement.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb


class InvalidDegreeError(ValueError):
    """Raised for line counts below 2."""


@dataclass(frozen=True)
class TVector:
    """Counts (t_2, ..., t_d) of singular points by multiplicity.

    ``counts[i]`` holds t_{i+2}.  Construction only checks shape and
    non-negativity; whether the pair-count identity holds is a separate
    question answered by :func:`check_combinatorial_identity`.
    """

    d: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.d < 2:
            raise InvalidDegreeError(f"need at least 2 lines, got d={self.d}")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.d - 1:
            raise ValueError(
                f"expected {self.d - 1} counts (t_2..t_{self.d}), got {len(self.counts)}"
            )
        if any(c < 0 for c in self.counts):
            raise ValueError(f"negative multiplicity count in {self.counts}")

    @classmethod
    def from_mapping(cls, d: int, counts: dict[int, int]) -> "TVector":
        if any(not 2 <= k <= d for k in counts):
            raise ValueError(f"multiplicities must lie in [2, {d}], got {sorted(counts)}")
        return cls(d, tuple(counts.get(k, 0) for k in range(2, d + 1)))

    @classmethod
    def decode(cls, d: int, text: str) -> "TVector":
        """Parse the wire form "t2,t3,...,td" (fixed length d-1)."""
        parts = [p.strip() for p in text.split(",")]
        try:
            values = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"malformed T-vector {text!r}: {exc}") from None
        return cls(d, values)

    def encode(self) -> str:
        return ",".join(str(c) for c in self.counts)

    def t(self, k: int) -> int:
        """t_k, i.e. the number of points of multiplicity exactly k."""
        if not 2 <= k <= self.d:
            return 0
        return self.counts[k - 2]

    @property
    def s(self) -> int:
        """Total number of singular points."""
        return sum(self.counts)

    def multiplicities(self) -> list[int]:
        """All point multiplicities as a descending list (t_k copies of k)."""
        out: list[int] = []
        for k in range(self.d, 1, -1):
            out.extend([k] * self.t(k))
        return out

    def __str__(self) -> str:
        return f"d={self.d}:({self.encode()})"


@dataclass(frozen=True)
class QuotientValue:
    """Exact quotient with its two deterministic renderings."""

    value: Fraction
    decimal: str
    mixed: str


def check_combinatorial_identity(tv: TVector) -> bool:
    """True iff sum t_k * C(k,2) equals C(d,2)."""
    return sum(tv.t(k) * comb(k, 2) for k in range(2, tv.d + 1)) == comb(tv.d, 2)


def identity_imbalance(tv: TVector) -> int:
    """sum t_k * C(k,2) - C(d,2); zero exactly for solution vectors."""
    return sum(tv.t(k) * comb(k, 2) for k in range(2, tv.d + 1)) - comb(tv.d, 2)


def quotient_fraction(tv: TVector) -> Fraction:
    s = tv.s
    if s < 1:
        raise ValueError(f"quotient undefined for empty point set: {tv}")
    weighted = sum(k * k * tv.t(k) for k in range(2, tv.d + 1))
    return Fraction(tv.d * tv.d - weighted, s)


def render_decimal(x: Fraction, places: int = 6) -> str:
    """Fixed-point rendering, exact rounding (ties to even)."""
    scaled = round(x * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = abs(scaled)
    whole, frac = divmod(digits, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def render_mixed(x: Fraction) -> str:
    """Mixed-fraction rendering: -29/12 -> "-2 5/12", -2 -> "-2", 5/6 -> "5/6"."""
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    whole, rem = divmod(abs(x.numerator), x.denominator)
    if whole == 0:
        return f"{sign}{rem}/{x.denominator}"
    return f"{sign}{whole} {rem}/{x.denominator}"


def combinatorial_quotient(tv: TVector) -> QuotientValue:
    q = quotient_fraction(tv)
    return QuotientValue(q, render_decimal(q), render_mixed(q))


def sort_key(tv: TVector):
    """Total order: q ascending, then (t_d, ..., t_2) descending."""
    return (quotient_fraction(tv), tuple(-c for c in reversed(tv.counts)))


def enumerate_tvectors(d: int, q_ceiling: Fraction | None = None) -> list[TVector]:
    """All solutions of the pair-count identity for d lines, sorted.

    The order is q(T) ascending with the descending lexicographic order
    on (t_d, ..., t_2) as tie-break, so repeated runs are byte-identical.
    With ``q_ceiling`` only solutions with q(T) <= q_ceiling are kept.
    """
    if d < 2:
        raise InvalidDegreeError(f"need at least 2 lines, got d={d}")
    if d > 10:
        warnings.warn(f"enumeration for d={d} exceeds the supported range d <= 10", stacklevel=2)
    budget = comb(d, 2)
    solutions: list[TVector] = []
    counts = [0] * (d - 1)

    def descend(k: int, remaining: int) -> None:
        if k == 2:
            counts[0] = remaining  # each double point uses exactly one pair
            solutions.append(TVector(d, tuple(counts)))
            return
        weight = comb(k, 2)
        for t in range(remaining // weight + 1):
            counts[k - 2] = t
            descend(k - 1, remaining - t * weight)
        counts[k - 2] = 0

    descend(d, budget)
    if q_ceiling is not None:
        ceiling = Fraction(q_ceiling)
        solutions = [tv for tv in solutions if quotient_fraction(tv) <= ceiling]
    solutions.sort(key=sort_key)
    return solutions
