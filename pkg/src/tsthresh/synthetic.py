"""Deterministic synthetic histograms and images for benchmarks and tests.

The mixture builders produce integer count vectors (largest-remainder
rounding, stable order), so an image built from them has exactly the
intended histogram.
"""

from __future__ import annotations

import numpy as np

from .histogram import LEVELS, GrayDistribution, Histogram, normalize
from .image_io import GrayImage

__all__ = [
    "mixture_counts",
    "gaussian_counts",
    "two_basin_counts",
    "two_basin_distribution",
    "image_from_counts",
    "ramp_image",
]


def _rounded_counts(raw: np.ndarray, total: int) -> np.ndarray:
    counts = np.floor(raw).astype(np.int64)
    remainder = total - int(counts.sum())
    by_frac = np.argsort(-(raw - np.floor(raw)), kind="stable")
    counts[by_frac[:remainder]] += 1
    return counts


def mixture_counts(
    components: list[tuple[float, float, float, int, int]], total: int
) -> np.ndarray:
    """Integer histogram of a mixture of truncated Gaussian bumps.

    components lists (weight, mu, sigma, lo, hi): a discretized Gaussian
    supported on levels lo..hi, carrying the given share of the total count.
    Weights must sum to 1.
    """
    levels = np.arange(LEVELS)
    probs = np.zeros(LEVELS)
    wsum = 0.0
    for weight, mu, sigma, lo, hi in components:
        mask = (levels >= lo) & (levels <= hi)
        bump = np.zeros(LEVELS)
        bump[mask] = np.exp(-0.5 * ((levels[mask] - mu) / sigma) ** 2)
        probs += weight * bump / bump.sum()
        wsum += weight
    if abs(wsum - 1.0) > 1e-9:
        raise ValueError(f"component weights sum to {wsum}, expected 1")
    return _rounded_counts(probs * total, total)


def gaussian_counts(mu: float = 128.0, sigma: float = 30.0, total: int = 65536) -> np.ndarray:
    """Integer histogram of a single discretized Gaussian over all levels."""
    return mixture_counts([(1.0, mu, sigma, 0, LEVELS - 1)], total)


def two_basin_counts(total: int = 65536) -> np.ndarray:
    """A bimodal histogram whose bi-level optimum jumps basins near q = 0.354.

    A mid-spread dark peak (55% of the mass) and a much wider bright peak
    (45%) compete: below the critical q the optimum sits inside the dark
    peak, above it the optimum leaps past the empty gap into the bright
    peak, a move of ~21 gray levels.
    """
    return mixture_counts(
        [(0.55, 80.0, 18.0, 20, 140), (0.45, 210.0, 48.0, 155, 255)], total
    )


def two_basin_distribution(total: int = 65536) -> GrayDistribution:
    """two_basin_counts normalized to probabilities."""
    return normalize(Histogram(two_basin_counts(total), total))


def image_from_counts(counts: np.ndarray, width: int = 256) -> GrayImage:
    """A deterministic image realizing exactly the given histogram.

    Pixels are laid out in ascending gray order; only the histogram matters
    to thresholding, so the arrangement is arbitrary but reproducible. The
    count total must be divisible by width.
    """
    counts = np.asarray(counts, dtype=np.int64)
    total = int(counts.sum())
    if total % width != 0:
        raise ValueError(f"total count {total} not divisible by width {width}")
    pixels = np.repeat(np.arange(LEVELS, dtype=np.uint8), counts)
    return GrayImage(width, total // width, pixels)


def ramp_image(width: int = 16, height: int = 16) -> GrayImage:
    """Every gray level exactly once: a 0..255 ramp (width*height must be 256)."""
    if width * height != LEVELS:
        raise ValueError(f"ramp needs width*height == {LEVELS}")
    return GrayImage(width, height, np.arange(LEVELS, dtype=np.uint8))
