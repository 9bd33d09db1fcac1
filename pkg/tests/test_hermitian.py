# -*- coding: utf-8 -

"""Tests of the twistor metric, the connection D and sectional curvature.

SPDX-License-Identifier: MIT
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from oemof.twistor import connection
from oemof.twistor import hermitian
from oemof.twistor import plumbing
from oemof.twistor import symplin
from oemof.twistor import twistor
from oemof.twistor.options import MetricParams
from oemof.twistor.twistor import TwistorPoint


def test_chart_field_needs_four_components():
    with pytest.raises(ValueError, match="four components"):
        hermitian.ChartField(["1", "0"])


def test_metric_value_repr():
    value = hermitian.TwistorMetricValue(0.5, 1.0, 2.0)
    assert repr(value) == "<TwistorMetricValue tau=0.5 Omega=1 g=2>"


class TestSplitForm:
    @classmethod
    def setup_class(cls):
        cls.rng = np.random.default_rng(31)
        cls.conn = connection.preset("sphere")

    def test_join_inverts_split(self):
        for _ in range(5):
            p = twistor.random_point(self.rng, self.conn, wmax=0.9)
            base = self.rng.normal(size=2)
            b = symplin.vertical_basis(p.j)[1].matrix
            u = hermitian.join_tangent(self.conn, p, base, b)
            assert u.residual() < 1e-10
            x, b2 = hermitian.split_tangent(self.conn, p, u)
            assert_allclose(x, base)
            assert_allclose(b2, b, atol=1e-10)

    def test_horizontal_lifts_have_no_vertical_part(self):
        p = twistor.random_point(self.rng, self.conn, wmax=0.9)
        u = twistor.horizontal_lift(self.conn, p, [0.3, -1.2])
        projected = hermitian.vertical_projection(self.conn, p, u)
        assert plumbing.max_abs(projected.matrix) < 1e-12

    def test_structure_acts_by_j(self):
        p = twistor.random_point(self.rng, self.conn, wmax=0.9)
        u = twistor.random_tangent(self.rng, p)
        x, b = hermitian.split_tangent(self.conn, p, u)
        jx, jb = hermitian.split_tangent(
            self.conn, p, twistor.acs_apply(self.conn, p, u)
        )
        j = p.j.matrix
        assert_allclose(jx, j @ x, atol=1e-10)
        assert_allclose(jb, j @ b, atol=1e-10)

    def test_derivative_of_the_tautological_section(self):
        for _ in range(3):
            p = twistor.random_point(self.rng, self.conn, wmax=0.9)
            u = twistor.random_tangent(self.rng, p)
            assert hermitian.D_phi_residual(self.conn, p, u) < 1e-12


class TestMetric:
    @classmethod
    def setup_class(cls):
        cls.rng = np.random.default_rng(37)
        cls.params = MetricParams(t=0.7)
        cls.connections = [
            connection.preset("trivial"),
            connection.preset("sphere"),
            connection.preset("log_example"),
        ]

    def test_positive_and_symmetric(self):
        for conn in self.connections:
            for _ in range(5):
                p = twistor.random_point(self.rng, conn, wmax=0.9)
                g = hermitian.chart_metric(conn, self.params, p.chart())
                assert_allclose(g, g.T, atol=1e-10)
                assert np.linalg.eigvalsh(g)[0] > 0

    def test_hermitian(self):
        for conn in self.connections:
            p = twistor.random_point(self.rng, conn, wmax=0.9)
            u = twistor.random_tangent(self.rng, p)
            v = twistor.random_tangent(self.rng, p)
            ju = twistor.acs_apply(conn, p, u)
            jv = twistor.acs_apply(conn, p, v)
            plain = hermitian.metric(conn, self.params, p, u, v)
            moved = hermitian.metric(conn, self.params, p, ju, jv)
            assert moved.inner == pytest.approx(plain.inner)
            assert moved.symplectic == pytest.approx(plain.symplectic)
            paired = hermitian.metric(conn, self.params, p, u, jv)
            assert paired.symplectic == pytest.approx(plain.inner)

    def test_tau_is_the_vertical_part(self):
        conn = self.connections[1]
        p = twistor.random_point(self.rng, conn, wmax=0.9)
        u = twistor.random_tangent(self.rng, p)
        v = twistor.random_tangent(self.rng, p)
        value = hermitian.metric(conn, self.params, p, u, v)
        assert hermitian.tau(conn, p, u, v) == pytest.approx(value.tau)

    def test_horizontal_and_vertical_are_orthogonal(self):
        conn = self.connections[1]
        p = twistor.random_point(self.rng, conn, wmax=0.9)
        h = twistor.horizontal_lift(conn, p, [1.0, 2.0])
        b = symplin.vertical_basis(p.j)[0].matrix
        v = hermitian.join_tangent(conn, p, np.zeros(2), b)
        assert abs(hermitian.metric(conn, self.params, p, h, v).inner) < 1e-12

    def test_dtau(self):
        for conn in self.connections:
            p = twistor.random_point(self.rng, conn, wmax=0.7)
            vectors = [self.rng.normal(size=4) for _ in range(3)]
            res = hermitian.dtau_residual(conn, self.params, p, *vectors)
            assert res < 5e-4

    def test_omega_is_closed_for_the_flat_connection(self):
        res = hermitian.closedness_check(
            self.connections[0], self.params, self.rng, samples=3
        )
        assert res["d_omega"] < 1e-6
        assert res["curvature"] == 0

    def test_omega_is_not_closed_for_the_sphere(self):
        res = hermitian.closedness_check(
            self.connections[1], self.params, self.rng, samples=5
        )
        assert res["d_omega"] > 1e-3
        assert res["curvature"] > 1e-8


class TestConnectionD:
    @classmethod
    def setup_class(cls):
        cls.rng = np.random.default_rng(41)
        cls.conn = connection.preset("sphere")
        cls.params = MetricParams()

    def test_torsion(self):
        for _ in range(3):
            p = twistor.random_point(self.rng, self.conn, wmax=0.7)
            u, v = self.rng.normal(size=4), self.rng.normal(size=4)
            s, b = hermitian.D_torsion(self.conn, p, u, v)
            es, eb = hermitian.D_torsion_expected(
                self.conn,
                p,
                twistor.TwistorTangent.from_chart(p, u),
                twistor.TwistorTangent.from_chart(p, v),
            )
            assert plumbing.max_abs(s - es) < 1e-6
            assert plumbing.max_abs(b - eb) < 1e-6

    def test_curvature_is_of_type_one_one(self):
        for _ in range(3):
            p = twistor.random_point(self.rng, self.conn, wmax=0.9)
            u = twistor.random_tangent(self.rng, p)
            v = twistor.random_tangent(self.rng, p)
            assert hermitian.rd_type_residual(self.conn, p, u, v) < 1e-8

    def test_chart_field_and_constant_vector_agree(self):
        p = TwistorPoint.from_w([0.3, 0.1], 0.2 - 0.3j)
        u = [0.5, -1.0, 0.2, 0.4]
        field = hermitian.ChartField(["1", "2", "0", "0"])
        first = hermitian.D_derivative(self.conn, p, u, field)
        second = hermitian.D_derivative(self.conn, p, u, [1.0, 2.0, 0, 0])
        assert_allclose(first.chart(), second.chart(), atol=1e-10)

    def test_translations_are_holomorphic_on_flat_space(self):
        conn = connection.preset("trivial")
        p = TwistorPoint.from_w([0.2, -0.4], 0.5j)
        for field in ([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]):
            for u in np.eye(4):
                res = hermitian.holomorphic_field_residual(conn, p, u, field)
                assert res < 1e-10

    def test_levi_civita_is_torsion_free(self):
        for conn in (connection.preset("trivial"), self.conn):
            p = twistor.random_point(self.rng, conn, wmax=0.6)
            u, v = self.rng.normal(size=4), self.rng.normal(size=4)
            res = hermitian.levi_civita_torsion(conn, self.params, p, u, v)
            assert res < 1e-6

    def test_levi_civita_preserves_the_metric(self):
        for conn in (connection.preset("trivial"), self.conn):
            p = twistor.random_point(self.rng, conn, wmax=0.6)
            u, v, w = (self.rng.normal(size=4) for _ in range(3))
            res = hermitian.metric_compatibility_residual(
                conn, self.params, p, u, v, w
            )
            assert res < 1e-6

    def test_fibres_are_totally_geodesic_on_flat_space(self):
        conn = connection.preset("trivial")
        for _ in range(3):
            p = twistor.random_point(self.rng, conn, wmax=0.6)
            a, b = self.rng.normal(size=2), self.rng.normal(size=2)
            res = hermitian.fibre_geodesic_residual(conn, self.params, p, a, b)
            assert res < 1e-6

    def test_structure_is_parallel_on_flat_space(self):
        conn = connection.preset("trivial")
        for _ in range(3):
            p = twistor.random_point(self.rng, conn, wmax=0.6)
            u, v = self.rng.normal(size=4), self.rng.normal(size=4)
            res = hermitian.acs_parallel_residual(conn, self.params, p, u, v)
            assert res < 1e-6

    def test_structure_is_not_parallel_for_the_sphere(self):
        worst = 0.0
        for _ in range(5):
            p = twistor.random_point(self.rng, self.conn, wmax=0.6)
            for u in np.eye(4):
                for v in np.eye(4):
                    res = hermitian.acs_parallel_residual(
                        self.conn, self.params, p, u, v
                    )
                    worst = max(worst, res)
        assert worst > 1e-4


class TestSectionalCurvature:
    @classmethod
    def setup_class(cls):
        cls.params = MetricParams()
        cls.conn = connection.preset("trivial")
        cls.p = TwistorPoint.from_w([0.1, 0.2], 0.0)
        cls.zero = np.zeros((2, 2))

    def test_horizontal_plane(self):
        k = hermitian.sectional_curvature(
            self.params, self.p, [1, 0], [0, 1], self.zero, self.zero
        )
        assert k == pytest.approx(2.0)

    def test_vertical_plane(self):
        a, b = (m.matrix for m in symplin.vertical_basis(self.p.j))
        k = hermitian.sectional_curvature(
            self.params, self.p, [0, 0], [0, 0], a, b
        )
        assert k <= 1e-12

    def test_plane_must_be_orthonormal(self):
        with pytest.raises(ValueError, match="orthonormal"):
            hermitian.sectional_curvature(
                self.params, self.p, [2, 0], [0, 1], self.zero, self.zero
            )

    def test_formula_against_the_chart_metric(self):
        u = hermitian.join_tangent(self.conn, self.p, [1.0, 0.0], self.zero)
        v = hermitian.join_tangent(self.conn, self.p, [0.0, 1.0], self.zero)
        k = hermitian.riemann_sectional_fd(
            self.conn, self.params, self.p, u, v
        )
        assert k == pytest.approx(2.0, abs=1e-3)
