"""Extended arithmetic conventions.

Claims covered: absolute differences treat two infinities as equal,
empty suprema collapse to 0, empty infima to INFINITY, and the
comparison helper tolerates infinite pairs.
"""

import numpy as np
import pytest

from dirmetric import INFINITY, ext_abs_diff, ext_close, ext_max, ext_min


def test_abs_diff_scalars():
    assert ext_abs_diff(3.0, 1.0) == 2.0
    assert ext_abs_diff(INFINITY, INFINITY) == 0.0
    assert ext_abs_diff(INFINITY, 1.0) == INFINITY
    assert ext_abs_diff(1.0, INFINITY) == INFINITY


def test_abs_diff_arrays_no_warnings():
    a = np.array([0.0, INFINITY, 2.0, INFINITY])
    b = np.array([1.0, INFINITY, INFINITY, 0.5])
    with np.errstate(invalid="raise"):
        out = ext_abs_diff(a, b)
    assert out.tolist() == [1.0, 0.0, INFINITY, INFINITY]


def test_abs_diff_broadcasts():
    a = np.array([[0.0], [INFINITY]])
    b = np.array([1.0, INFINITY])
    out = ext_abs_diff(a, b)
    assert out.shape == (2, 2)
    assert out[1, 1] == 0.0 and out[0, 1] == INFINITY


def test_empty_conventions():
    assert ext_max([]) == 0.0
    assert ext_min([]) == INFINITY
    assert ext_max([1.0, INFINITY]) == INFINITY
    assert ext_min([2.0, 3.0]) == 2.0


def test_close():
    assert ext_close(INFINITY, INFINITY)
    assert ext_close(1.0, 1.0 + 1e-12)
    assert not ext_close(1.0, INFINITY)
    assert not ext_close(1.0, 1.1)


def test_close_respects_tol():
    assert ext_close(1.0, 1.05, tol=0.1)
    assert not ext_close(1.0, 1.05, tol=0.01)


def test_rng_ensemble_matches_plain_abs():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.random(50)
        b = rng.random(50)
        assert ext_abs_diff(a, b) == pytest.approx(np.abs(a - b))
