"""Gray-level histograms and the normalized probability distribution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image_io import GrayImage

__all__ = ["LEVELS", "Histogram", "GrayDistribution", "histogram_of", "normalize"]

LEVELS = 256

_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Histogram:
    """Per-level pixel counts over the 256 gray levels."""

    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (LEVELS,):
            raise ValueError(f"histogram needs {LEVELS} bins, got shape {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("histogram counts must be non-negative")
        if self.total < 1:
            raise ValueError("histogram total must be at least 1")
        if int(counts.sum()) != self.total:
            raise ValueError(f"histogram counts sum to {int(counts.sum())}, expected {self.total}")
        counts = counts.copy()
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)


@dataclass(frozen=True, eq=False)
class GrayDistribution:
    """Normalized gray-level probabilities p_0..p_255 summing to one."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (LEVELS,):
            raise ValueError(f"distribution needs {LEVELS} bins, got shape {probs.shape}")
        if np.any(probs < 0.0):
            raise ValueError("probabilities must be non-negative")
        s = float(probs.sum())
        if abs(s - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {s!r}, not 1 within {_SUM_TOL}")
        probs = probs.copy()
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)


def histogram_of(img: GrayImage) -> Histogram:
    """Count pixels per gray level."""
    counts = np.bincount(img.pixels, minlength=LEVELS).astype(np.int64)
    return Histogram(counts, int(img.width) * int(img.height))


def normalize(h: Histogram) -> GrayDistribution:
    """Divide counts by the pixel total, giving the probability of each level."""
    return GrayDistribution(h.counts / float(h.total))
