"""Decentralization indicators over holder distributions.

Two indicators are computed over a snapshot of per-entity weights (token
balances or voting power):

* the Gini coefficient, the normalized mean absolute difference between
  all pairs of holdings, in [0, 1];
* the Nakamoto coefficient, the minimum number of entities whose combined
  weight strictly exceeds half the total.

All arithmetic is exact rational; decimals appear only in rendered reports.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DegenerateDistribution
from .quantities import Numeric, as_fraction, rounded

__all__ = [
    "HolderDistribution",
    "ConcentrationReport",
    "gini",
    "nakamoto",
    "concentration_report",
    "load_holder_snapshot",
]


@dataclass(frozen=True)
class HolderDistribution:
    """Immutable snapshot of non-negative per-entity weights.

    `lock_end` values from extended snapshots are kept alongside so voting
    modules can reuse the same file; they play no role in the metrics.
    """

    entries: Tuple[Tuple[str, Fraction], ...]
    lock_ends: Tuple[Optional[int], ...] = ()

    def __post_init__(self):
        for entity, weight in self.entries:
            if weight < 0:
                raise ValueError(f"negative weight for {entity!r}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, Numeric]]) -> "HolderDistribution":
        return cls(tuple((str(e), as_fraction(w)) for e, w in pairs))

    @classmethod
    def from_weights(cls, weights: Sequence[Numeric]) -> "HolderDistribution":
        return cls(tuple((f"h{i}", as_fraction(w)) for i, w in enumerate(weights)))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return tuple(w for _, w in self.entries)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def require_nondegenerate(self) -> None:
        if self.n == 0:
            raise DegenerateDistribution("empty distribution")
        if self.total == 0:
            raise DegenerateDistribution("all weights are zero")


@dataclass(frozen=True)
class ConcentrationReport:
    """Aggregated decentralization indicators for one distribution."""

    gini: Fraction
    nakamoto: int
    total_weight: Fraction
    holder_count: int
    top_k_shares: Tuple[Tuple[int, Fraction], ...]
    precision: int = 6

    def to_dict(self) -> dict:
        return {
            "gini": rounded(self.gini, self.precision),
            "nakamoto": self.nakamoto,
            "total_weight": str(self.total_weight),
            "holder_count": self.holder_count,
            "top_k_shares": [
                {"k": k, "share": rounded(s, self.precision)} for k, s in self.top_k_shares
            ],
        }


def _coerce(dist) -> HolderDistribution:
    if isinstance(dist, HolderDistribution):
        return dist
    return HolderDistribution.from_weights(list(dist))


def _integer_weights(weights: Sequence[Fraction]) -> Tuple[list, int]:
    """Scale weights onto their common denominator.

    Integer weights sort and sum at native speed while staying exact; the
    scale cancels out of every share and coefficient computed from them.
    Returns (scaled integers, scaled total).
    """
    den = 1
    for w in weights:
        den = math.lcm(den, w.denominator)
    scaled = [w.numerator * (den // w.denominator) for w in weights]
    return scaled, sum(scaled)


def gini(dist) -> Fraction:
    """Inequality of the distribution, 0 (uniform) to 1 (single holder).

    Uses the sorted O(n log n) form; equivalent to the normalized pairwise
    mean absolute difference, which the test suite checks by brute force.
    """
    dist = _coerce(dist)
    dist.require_nondegenerate()
    xs, total = _integer_weights(dist.weights)
    xs.sort()
    n = len(xs)
    acc = sum((2 * i - n - 1) * x for i, x in enumerate(xs, start=1))
    return Fraction(acc, n * total)


def nakamoto(dist) -> int:
    """Minimum number of entities jointly holding strictly more than half."""
    dist = _coerce(dist)
    dist.require_nondegenerate()
    xs, total = _integer_weights(dist.weights)
    xs.sort(reverse=True)
    run = 0
    for k, x in enumerate(xs, start=1):
        run += x
        if 2 * run > total:
            return k
    raise AssertionError("unreachable: positive total must exceed its own half")


def concentration_report(dist, top_k_prefix: int = 10, precision: int = 6) -> ConcentrationReport:
    """Gini, Nakamoto, and cumulative top-k shares in one pass.

    `top_k_shares` covers k = 1..top_k_prefix (capped at the holder count)
    and always terminates with (n, 1) so the series closes at full share.
    """
    dist = _coerce(dist)
    dist.require_nondegenerate()
    if top_k_prefix < 1:
        raise ValueError("top_k_prefix must be >= 1")
    xs, total = _integer_weights(dist.weights)
    xs.sort(reverse=True)
    n = len(xs)

    acc = sum((2 * i - n - 1) * x for i, x in enumerate(reversed(xs), start=1))
    gini_value = Fraction(acc, n * total)

    ks = sorted(set(range(1, min(top_k_prefix, n) + 1)) | {n})
    shares = []
    nakamoto_value = None
    run = 0
    next_idx = 0
    for i, x in enumerate(xs, start=1):
        run += x
        if nakamoto_value is None and 2 * run > total:
            nakamoto_value = i
        if next_idx < len(ks) and i == ks[next_idx]:
            shares.append((i, Fraction(run, total)))
            next_idx += 1

    return ConcentrationReport(
        gini=gini_value,
        nakamoto=nakamoto_value,
        total_weight=dist.total,
        holder_count=n,
        top_k_shares=tuple(shares),
        precision=precision,
    )


def load_holder_snapshot(source) -> HolderDistribution:
    """Read a holder snapshot CSV: header `entity,weight[,lock_end]`.

    Accepts a path or a file-like/text source. Weights are decimal strings;
    the optional lock_end column is preserved for voting consumers.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ValueError("empty snapshot file")
    header = [cell.strip().lower() for cell in rows[0]]
    if header[:2] != ["entity", "weight"]:
        raise ValueError("snapshot header must start with 'entity,weight'")
    has_lock = len(header) > 2 and header[2] == "lock_end"
    entries = []
    locks = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) < 2:
            raise ValueError(f"line {lineno}: expected at least 2 columns")
        entity = row[0].strip()
        try:
            weight = as_fraction(row[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: bad weight {row[1]!r}") from exc
        entries.append((entity, weight))
        if has_lock and len(row) > 2 and row[2].strip():
            locks.append(int(row[2]))
        else:
            locks.append(None)
    return HolderDistribution(tuple(entries), tuple(locks))
