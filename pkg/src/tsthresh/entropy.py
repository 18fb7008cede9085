"""Tsallis entropy of gray-level distributions and threshold partitions.

The one-parameter entropy of a distribution p is

    S_q = (1 - sum_i p_i^q) / (q - 1),        q > 0, q != 1,

with the 0^q = 0 convention so empty bins are inert. Splitting the levels at
thresholds t_1 < ... < t_{m-1} gives m classes; each class is renormalized
and the class entropies combine through the pseudo-additive law, which for
two classes reads S_A + S_B + (1-q) S_A S_B and in general is the product
form implemented by total_entropy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .histogram import LEVELS, GrayDistribution

__all__ = [
    "EntropicIndex",
    "InvalidPartitionError",
    "ClassDecomposition",
    "tsallis_entropy",
    "shannon_entropy",
    "class_entropy",
    "total_entropy",
    "class_bounds",
    "decompose",
]

# The entropic index: a positive real, 1 excluded from the Tsallis form.
EntropicIndex = float

ProbabilityLike = Union[GrayDistribution, Sequence[float], np.ndarray]

_NORM_TOL = 1e-9


class InvalidPartitionError(ValueError):
    """A candidate partition has a class with zero probability mass."""


def _check_q(q: float) -> float:
    q = float(q)
    if not q > 0.0:
        raise ValueError(f"entropic index must be positive, got {q}")
    if q == 1.0:
        raise ValueError("q = 1 is the Shannon limit; use shannon_entropy instead")
    return q


def _as_probs(d: ProbabilityLike) -> np.ndarray:
    if isinstance(d, GrayDistribution):
        return d.probs
    p = np.asarray(d, dtype=np.float64).reshape(-1)
    if p.size == 0:
        raise ValueError("empty probability list")
    if np.any(p < 0.0):
        raise ValueError("probabilities must be non-negative")
    s = float(p.sum())
    if abs(s - 1.0) > _NORM_TOL:
        raise ValueError(f"probabilities sum to {s!r}, not 1 within {_NORM_TOL}")
    return p


def _powq(p: np.ndarray, q: float) -> np.ndarray:
    """p**q elementwise with 0**q = 0, evaluated as exp(q ln p) on p > 0."""
    out = np.zeros_like(p)
    pos = p > 0.0
    out[pos] = np.exp(q * np.log(p[pos]))
    return out


def _powq_sum(part: np.ndarray, q: float) -> tuple[float, float]:
    """(mass, sum of p^q) of a slice, summed over its positive entries only.

    Dropping zero bins before summation makes the result a pure function of
    the occupied content: slices that differ only in interleaved zero bins
    produce bit-identical sums, which keeps mathematically tied partitions
    exactly tied in floating point.
    """
    pos = part[part > 0.0]
    if pos.size == 0:
        return 0.0, 0.0
    return float(pos.sum()), float(np.exp(q * np.log(pos)).sum())


def tsallis_entropy(d: ProbabilityLike, q: EntropicIndex) -> float:
    """Tsallis entropy (1 - sum p_i^q)/(q - 1) of a full distribution.

    Non-negative for q in (0, 1). d may be a GrayDistribution or any
    probability list summing to 1 within 1e-9.
    """
    q = _check_q(q)
    p = _as_probs(d)
    _, sq = _powq_sum(p, q)
    return float((1.0 - sq) / (q - 1.0))


def shannon_entropy(d: ProbabilityLike) -> float:
    """Shannon entropy -sum p_i ln p_i in nats, the q -> 1 limit."""
    p = _as_probs(d)
    pos = p[p > 0.0]
    return float(-(pos * np.log(pos)).sum())


def class_bounds(thresholds: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """Contiguous level intervals [lo, hi] induced by sorted thresholds.

    Thresholds t_1 < ... < t_{m-1} give classes [0, t_1], [t_1+1, t_2], ...,
    [t_{m-1}+1, 255].
    """
    ts = [int(t) for t in thresholds]
    edges = [-1] + ts + [LEVELS - 1]
    for a, b in zip(edges, edges[1:]):
        if not -1 <= a < b <= LEVELS - 1:
            raise ValueError(f"thresholds must be strictly increasing in [0, {LEVELS - 2}], got {ts}")
    return tuple((a + 1, b) for a, b in zip(edges, edges[1:]))


def class_entropy(d: GrayDistribution, bounds: tuple[int, int], q: EntropicIndex) -> float:
    """Tsallis entropy of the renormalized distribution on levels lo..hi."""
    q = _check_q(q)
    lo, hi = int(bounds[0]), int(bounds[1])
    if not 0 <= lo <= hi <= LEVELS - 1:
        raise ValueError(f"class interval [{lo}, {hi}] outside 0..{LEVELS - 1}")
    pos = d.probs[lo : hi + 1]
    pos = pos[pos > 0.0]
    if pos.size == 0:
        raise InvalidPartitionError(f"class [{lo}, {hi}] has zero probability mass")
    mass = float(pos.sum())
    return float((1.0 - np.exp(q * np.log(pos / mass)).sum()) / (q - 1.0))


def prefix_tables(probs: np.ndarray, q: float) -> tuple[np.ndarray, np.ndarray]:
    """Prefix sums of p_i and p_i^q, each with a leading zero.

    The mass and q-power sum of any class [lo, hi] are then differences
    table[hi+1] - table[lo], so every candidate partition costs O(1) per
    class. A class is empty iff its mass difference is exactly 0.0 (adding
    zeros to a running sum leaves it bit-identical).
    """
    pm = np.zeros(probs.size + 1)
    np.cumsum(probs, out=pm[1:])
    ps = np.zeros(probs.size + 1)
    np.cumsum(_powq(probs, q), out=ps[1:])
    return pm, ps


def _sorted_product(factors: list) -> np.ndarray:
    """Product of per-class factors, multiplied in ascending order.

    Sorting first makes partitions whose classes carry the same multiset of
    factors round to bit-identical totals, so the optimizer's lexicographic
    tie-break sees exact ties. Works elementwise on broadcastable arrays via
    a compare-exchange network (class count is at most 5).
    """
    fs = list(factors)
    for i in range(1, len(fs)):
        for j in range(i, 0, -1):
            lo = np.minimum(fs[j - 1], fs[j])
            hi = np.maximum(fs[j - 1], fs[j])
            fs[j - 1], fs[j] = lo, hi
    prod = fs[0]
    for f in fs[1:]:
        prod = prod * f
    return prod


def total_entropy(d: GrayDistribution, thresholds, q: EntropicIndex) -> float:
    """Pseudo-additive total Tsallis entropy of the partition at thresholds.

    Each class contributes the factor 1 + (1-q) S_class = sum (p_i/P)^q; the
    total is (prod of factors - 1)/(1 - q). For two classes this equals
    S_A + S_B + (1-q) S_A S_B, and for three the full three-class expansion,
    to within floating-point rounding.

    Class sums are taken directly over each class's occupied bins (not via
    prefix differences) and factors multiply in sorted order, so classes
    with the same occupied content always contribute identically: partitions
    that permute the class multiset, or shift a boundary within a run of
    empty bins, tie bit-exactly.

    thresholds may be a ThresholdSet or any strictly increasing int sequence.
    Raises InvalidPartitionError if any class has zero mass.
    """
    q = _check_q(q)
    levels = getattr(thresholds, "levels", thresholds)
    bounds = class_bounds(levels)
    factors = []
    for lo, hi in bounds:
        mass, sq = _powq_sum(d.probs[lo : hi + 1], q)
        if mass <= 0.0:
            raise InvalidPartitionError(f"class [{lo}, {hi}] has zero probability mass")
        factors.append(sq / mass**q)
    return float((_sorted_product(factors) - 1.0) / (1.0 - q))


@dataclass(frozen=True)
class ClassDecomposition:
    """A threshold partition together with per-class masses and intervals."""

    thresholds: tuple[int, ...]
    class_probs: tuple[float, ...]
    class_ranges: tuple[tuple[int, int], ...]


def decompose(d: GrayDistribution, thresholds) -> ClassDecomposition:
    """Split d at the thresholds, recording each class's interval and mass."""
    levels = tuple(int(t) for t in getattr(thresholds, "levels", thresholds))
    bounds = class_bounds(levels)
    masses = tuple(float(d.probs[lo : hi + 1].sum()) for lo, hi in bounds)
    return ClassDecomposition(levels, masses, bounds)
