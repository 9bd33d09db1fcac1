# -*- coding: utf-8 -

"""Tests of sampling options, thresholds and metric parameters.

SPDX-License-Identifier: MIT
"""

import pytest

from oemof.twistor.options import THRESHOLDS
from oemof.twistor.options import MetricParams
from oemof.twistor.options import Sampling
from oemof.twistor.options import Tolerances


def test_tolerances_are_scaled():
    tol = Tolerances(scale=10)
    assert tol["algebra"] == pytest.approx(1e-9)
    assert tol["holomorphy"] == pytest.approx(1e-8)


def test_tolerance_override():
    tol = Tolerances(curvature=1e-5)
    assert tol["curvature"] == 1e-5
    assert tol["invariant"] == THRESHOLDS["invariant"]


def test_tolerance_table_is_sorted():
    table = Tolerances().table()
    assert list(table) == sorted(THRESHOLDS)


@pytest.mark.parametrize("scale", [0, -1.0])
def test_invalid_tolerance_scale(scale):
    with pytest.raises(AttributeError, match="must be positive"):
        Tolerances(scale=scale)


def test_sampling_defaults():
    sampling = Sampling()
    assert sampling.seed == 42
    assert sampling.samples == 200
    assert sampling.wmax == 0.95
    assert (sampling.base_grid, sampling.fibre_grid) == (15, 12)


def test_sampling_streams_are_reproducible():
    first = Sampling(seed=7).rng(3).normal(size=5)
    second = Sampling(seed=7).rng(3).normal(size=5)
    other = Sampling(seed=7).rng(4).normal(size=5)
    assert first.tolist() == second.tolist()
    assert first.tolist() != other.tolist()


@pytest.mark.parametrize("wmax", [0.0, 1.0, 1.5, -0.2])
def test_wmax_outside_the_disk(wmax):
    with pytest.raises(AttributeError, match="unit disk"):
        Sampling(wmax=wmax)


@pytest.mark.parametrize(
    "kwargs", [{"samples": 0}, {"base_grid": 2.5}, {"fibre_grid": -3}]
)
def test_counts_must_be_positive_integers(kwargs):
    with pytest.raises(AttributeError, match="positive integer"):
        Sampling(**kwargs)


def test_step_must_be_positive():
    with pytest.raises(AttributeError, match="step"):
        Sampling(step=0)


@pytest.mark.parametrize("t", [0, -2.0])
def test_metric_scale_must_be_positive(t):
    with pytest.raises(AttributeError, match="must be positive"):
        MetricParams(t=t)
