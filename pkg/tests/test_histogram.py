import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsthresh.histogram import GrayDistribution, Histogram, histogram_of, normalize
from tsthresh.image_io import GrayImage


def test_histogram_direct_count():
    h = histogram_of(GrayImage(2, 2, [0, 0, 255, 255]))
    assert h.total == 4
    assert h.counts[0] == 2
    assert h.counts[255] == 2
    assert h.counts[1:255].sum() == 0


def test_histogram_single_pixel():
    h = histogram_of(GrayImage(1, 1, [7]))
    assert h.total == 1
    assert h.counts[7] == 1
    assert h.counts.sum() == 1


def test_histogram_ramp():
    h = histogram_of(GrayImage(16, 16, np.arange(256)))
    assert (h.counts == 1).all()
    assert h.total == 256


def test_histogram_validates_sum():
    counts = np.zeros(256, dtype=np.int64)
    counts[3] = 2
    with pytest.raises(ValueError):
        Histogram(counts, 3)


def test_normalize_direct_division():
    counts = np.zeros(256, dtype=np.int64)
    counts[0] = 2
    counts[255] = 2
    d = normalize(Histogram(counts, 4))
    assert d.probs[0] == 0.5
    assert d.probs[255] == 0.5


def test_normalize_delta():
    counts = np.zeros(256, dtype=np.int64)
    counts[7] = 1
    d = normalize(Histogram(counts, 1))
    assert d.probs[7] == 1.0


def test_normalize_uniform():
    d = normalize(Histogram(np.ones(256, dtype=np.int64), 256))
    assert np.allclose(d.probs, 1 / 256)
    assert abs(d.probs.sum() - 1.0) <= 1e-12


def test_distribution_rejects_bad_sum():
    p = np.full(256, 1 / 256)
    with pytest.raises(ValueError):
        GrayDistribution(p * 1.001)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=400))
def test_conservation_and_normalization(pixel_values):
    img = GrayImage(len(pixel_values), 1, pixel_values)
    h = histogram_of(img)
    assert int(h.counts.sum()) == len(pixel_values)
    d = normalize(h)
    assert abs(float(d.probs.sum()) - 1.0) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=2, max_size=200), st.randoms())
def test_pixel_order_irrelevant(pixel_values, pyrandom):
    shuffled = list(pixel_values)
    pyrandom.shuffle(shuffled)
    a = histogram_of(GrayImage(len(pixel_values), 1, pixel_values))
    b = histogram_of(GrayImage(len(shuffled), 1, shuffled))
    assert np.array_equal(a.counts, b.counts)
