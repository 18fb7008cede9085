"""Applying a threshold set to an image: bi-level and multi-level output."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image_io import GrayImage
from .optimizer import ThresholdSet

__all__ = ["LevelMap", "default_level_map", "apply_thresholds"]


@dataclass(frozen=True)
class LevelMap:
    """Output gray value per class, strictly increasing, in 0..255."""

    values: tuple[int, ...]

    def __init__(self, values) -> None:
        vs = tuple(int(v) for v in values)
        if len(vs) < 2:
            raise ValueError("a level map needs at least two output values")
        if any(not 0 <= v <= 255 for v in vs):
            raise ValueError(f"output values must lie in 0..255, got {vs}")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError(f"output values must be strictly increasing, got {vs}")
        object.__setattr__(self, "values", vs)


def default_level_map(m: int) -> LevelMap:
    """Evenly spaced output tones: {0, 255} for 2 classes, {0, 128, 255} for 3."""
    if m < 2:
        raise ValueError(f"class count must be at least 2, got {m}")
    return LevelMap(tuple(round(255 * j / (m - 1)) for j in range(m)))


def apply_thresholds(img: GrayImage, ts: ThresholdSet, level_map: LevelMap) -> GrayImage:
    """Map each pixel to its class's output tone.

    A pixel v falls in class j when t_j < v <= t_{j+1} (t_0 = -1,
    t_m = 255): values above a threshold go to the brighter class, values
    equal to it stay in the darker one. With two classes and the default
    map this is the classic rule v > t -> white, v <= t -> black.
    """
    if len(level_map.values) != ts.class_count:
        raise ValueError(
            f"level map has {len(level_map.values)} tones but thresholds induce "
            f"{ts.class_count} classes"
        )
    cut = np.asarray(ts.levels, dtype=np.int16)
    cls = np.searchsorted(cut, img.pixels.astype(np.int16), side="left")
    tones = np.asarray(level_map.values, dtype=np.uint8)
    return GrayImage(img.width, img.height, tones[cls])
