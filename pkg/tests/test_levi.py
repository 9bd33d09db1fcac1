# -*- coding: utf-8 -

"""Tests of Levi forms and exhaustion scans on the flat twistor space.

SPDX-License-Identifier: MIT
"""

import numpy as np
import pytest

from oemof.twistor import connection
from oemof.twistor import levi
from oemof.twistor import symplin
from oemof.twistor.exprfield import DomainError
from oemof.twistor.levi import ExhaustionSpec
from oemof.twistor.options import Sampling


def test_fibre_distance_at_the_reference():
    assert levi.fibre_distance_sq(0.3j, 0.3j) == 0


def test_fibre_distance_outside_the_disk():
    with pytest.raises(symplin.MembershipError, match="outside"):
        levi.fibre_distance_sq(1.0)


def test_fibre_distance_is_invariant():
    rng = np.random.default_rng(3)
    for w, ref, a in rng.uniform(-0.5, 0.5, size=(10, 3, 2)):
        res = levi.mobius_residual(
            complex(*w), complex(*ref), complex(*a), theta=0.7
        )
        assert res < 1e-10


def test_oka_function_outside_the_ball():
    with pytest.raises(DomainError, match="outside the ball"):
        levi.oka_phi(0.5, [0.4, 0.4])


def test_oka_function_value():
    assert levi.oka_phi(2.0, [1.0, 1.0]) == pytest.approx(np.log(0.5))


def test_chart_needs_the_trivial_connection():
    with pytest.raises(levi.ChartUnavailableError, match="'sphere'"):
        levi.levi_form(
            "abs2(xi)", [0, 0, 0, 0], conn=connection.preset("sphere")
        )


def test_stein_value():
    spec = ExhaustionSpec.stein()
    assert spec.value(0j, 0.5) == pytest.approx(0.30173724, rel=1e-6)
    z, w = 0.3 + 0.1j, -0.2 + 0.4j
    expected = abs(w * np.conj(z) - z) ** 2 + levi.fibre_distance_sq(w)
    assert spec.value(z, w) == pytest.approx(expected)


def test_levi_form_of_the_fibre_distance():
    value = levi.levi_form(levi.fibre_distance_expr(), [0.1, 0.2, 0.3, 0.0])
    assert value.hermitian_residual < 1e-12
    assert value.positive_count == 1
    assert value.eigenvalues[0] > 0
    assert abs(value.eigenvalues[1]) < 1e-12


def test_zero_function_has_no_positive_direction():
    assert levi.levi_form("0", [0.1, 0.2, 0.3, 0.0]).positive_count == 0


def test_fibre_restriction():
    spec = ExhaustionSpec.oka(1.0)
    for z0, w in [(0.1 + 0.2j, 0.3j), (-0.4, 0.5 - 0.1j)]:
        assert levi.fibre_restriction_residual(spec, z0, w) < 1e-8


def test_oka_domain_and_label():
    spec = ExhaustionSpec.oka(0.5)
    assert spec.label == "oka"
    assert spec.contains(0.1j)
    assert not spec.contains(0.6 + 0j)


class TestCompletenessScan:
    @classmethod
    def setup_class(cls):
        cls.sampling = Sampling(base_grid=3, fibre_grid=4, wmax=0.8)

    def test_stein_exhaustion_has_two_positive_directions(self):
        table, summary = levi.completeness_scan(
            ExhaustionSpec.stein(), self.sampling, required=2
        )
        assert len(table) == 36
        assert summary["points"] == 36
        assert summary["min_positive_count"] == 2
        assert summary["certificate"]
        assert summary["stein"]
        assert summary["hermitian_residual"] < 1e-9

    def test_oka_exhaustion_certificate(self):
        _, summary = levi.completeness_scan(
            ExhaustionSpec.oka(1.0), self.sampling
        )
        assert summary["min_positive_count"] >= 1
        assert summary["certificate"]

    def test_function_without_positive_directions(self):
        spec = ExhaustionSpec("0", with_fibre=False)
        table, summary = levi.completeness_scan(spec, self.sampling)
        assert (table["positive_count"] == 0).all()
        assert not summary["certificate"]
        assert not summary["stein"]

    def test_grid_outside_the_domain(self):
        with pytest.raises(ValueError, match="outside the domain"):
            levi.completeness_scan(ExhaustionSpec.oka(0.5), self.sampling)

    def test_trivial_connection_is_accepted(self):
        _, summary = levi.completeness_scan(
            ExhaustionSpec.stein(),
            self.sampling,
            conn=connection.preset("trivial"),
        )
        assert summary["min_positive_count"] == 2

    def test_columns(self):
        table, _ = levi.completeness_scan(
            ExhaustionSpec.stein(), self.sampling
        )
        assert list(table.columns) == [
            "z",
            "w",
            "positive_count",
            "eigenvalues",
            "hermitian_residual",
        ]
