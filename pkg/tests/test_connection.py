# -*- coding: utf-8 -

"""Tests of symplectic connections, their curvature and pullbacks.

SPDX-License-Identifier: MIT
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from oemof.twistor import connection
from oemof.twistor import exprfield
from oemof.twistor import plumbing


def test_trivial_preset():
    conn = connection.preset("trivial", n=2)
    assert conn.is_trivial
    assert conn.dim == 4
    assert connection.curvature(conn, np.zeros(4)).norm() == 0


def test_unknown_preset():
    with pytest.raises(ValueError, match="Unknown preset"):
        connection.preset("torus")


def test_sphere_needs_n1():
    with pytest.raises(ValueError, match="n=1"):
        connection.preset("sphere", n=2)


def test_coefficient_conversion_is_invertible():
    rng = np.random.default_rng(1)
    for a, b, c, d in rng.normal(size=(10, 4)):
        alpha, beta = connection.real_to_alpha_beta(a, b, c, d)
        assert_allclose(
            connection.alpha_beta_to_real(alpha, beta), [a, b, c, d]
        )


def test_alpha_beta_round_trip_through_the_connection():
    conn = connection.from_alpha_beta("1+2*i", "0.5")
    alpha, beta = conn.alpha_beta([0.3, -0.2])
    assert complex(alpha) == pytest.approx(1 + 2j)
    assert complex(beta) == pytest.approx(0.5)


def test_alpha_beta_needs_n1():
    with pytest.raises(ValueError, match="n=1"):
        connection.preset("trivial", n=2).alpha_beta(np.zeros(4))


def test_log_example_samples_stay_in_domain():
    conn = connection.preset("log_example")
    points = conn.sample(np.random.default_rng(2), 30)
    assert len(points) == 30
    assert (points[:, 0] > 0).all()


def test_describe():
    data = connection.preset("sphere").describe()
    assert data["label"] == "sphere"
    assert data["kind"] == "alpha_beta"
    assert isinstance(data["alpha"], str)


def test_general_gamma_with_torsion_is_rejected():
    zero = [["0", "0"], ["0", "0"]]
    gamma = [[["0", "1"], ["0", "0"]], zero]
    with pytest.raises(ValueError, match="do not define"):
        connection.from_general_gamma(gamma, 1)


def test_constant_a_needs_cubic_shape():
    with pytest.raises(ValueError, match="shape"):
        connection.from_constant_a(np.zeros((2, 2, 3)))


class TestFieldConnections:
    @classmethod
    def setup_class(cls):
        cls.rng = np.random.default_rng(5)
        cls.connections = [
            connection.preset("sphere"),
            connection.preset("round_sphere"),
            connection.preset("log_example"),
            connection.from_alpha_beta("z*zb - i*z", "exp(zb)/3"),
        ]

    def test_torsion_free_and_symplectic(self):
        for conn in self.connections:
            res = connection.check_invariants(conn, self.rng, samples=10)
            assert res["torsion"] < 1e-12, conn
            assert res["symplectic"] < 1e-10, conn
            assert res["sp_curvature"] < 1e-8, conn

    def test_curvature_identities(self):
        for conn in self.connections:
            for x in conn.sample(self.rng, 5):
                res = connection.curvature(conn, x).residuals()
                for name, value in res.items():
                    assert value < 1e-8, (conn, name)

    def test_weyl_part_vanishes_in_two_dimensions(self):
        for conn in self.connections:
            for x in conn.sample(self.rng, 5):
                w = connection.curvature(conn, x).W
                assert plumbing.max_abs(w) < 1e-8, conn

    def test_curvature_against_finite_differences(self):
        for conn in self.connections:
            for x in conn.sample(self.rng, 3):
                exact = connection.curvature(conn, x)
                approx = connection.curvature_fd(conn, x)
                scale = max(1.0, exact.norm())
                diff = plumbing.max_abs(exact.R - approx)
                assert diff < 1e-4 * scale, conn


class TestConstantConnections:
    @classmethod
    def setup_class(cls):
        rng = np.random.default_rng(9)
        s = connection.random_symmetric_tensor(rng, 4)
        cls.a = connection.constant_from_symmetric(s)
        cls.conn = connection.from_constant_a(cls.a, label="random")
        cls.rng = rng

    def test_kind_and_source(self):
        assert self.conn.kind == "constant_A"
        assert_allclose(self.conn.source["A"], self.a)
        assert not self.conn.is_trivial

    def test_invariants(self):
        res = connection.check_invariants(self.conn, self.rng, samples=3)
        assert res["torsion"] < 1e-12
        assert res["symplectic"] < 1e-12
        assert res["sp_curvature"] < 1e-10

    def test_curvature_is_the_commutator(self):
        value = connection.curvature(self.conn, np.zeros(4))
        a = self.a
        expected = a[0] @ a[1] - a[1] @ a[0]
        assert_allclose(value.R[0, 1], expected, atol=1e-12)

    def test_curvature_identities(self):
        res = connection.curvature(self.conn, np.zeros(4)).residuals()
        for name, value in res.items():
            assert value < 1e-10, name

    def test_lowered_tensor_is_symmetric(self):
        low = connection.lowered(self.conn, np.zeros(4))
        assert_allclose(low, low.transpose(1, 0, 2), atol=1e-12)
        assert_allclose(low, low.transpose(0, 2, 1), atol=1e-12)

    def test_decomposition_adds_up(self):
        value = connection.curvature(self.conn, np.zeros(4))
        assert_allclose(value.E + value.W, value.lowered, atol=1e-12)


def test_trivial_connection_satisfies_field_equations():
    conn = connection.preset("trivial")
    assert connection.field_eq_residual(conn, [0.2, 0.4]) == 0


class TestPullback:
    @classmethod
    def setup_class(cls):
        cls.sigma = ["x", "y + x^2"]
        cls.inverse = ["x", "y - x^2"]
        cls.rng = np.random.default_rng(4)

    def test_identity_map_keeps_coefficients(self):
        conn = connection.preset("sphere")
        pulled = connection.pullback(["x", "y"], ["x", "y"], conn)
        for x in conn.sample(self.rng, 5):
            assert_allclose(
                pulled.christoffel(x), conn.christoffel(x), atol=1e-12
            )

    def test_trivial_connection_stays_flat(self):
        conn = connection.preset("trivial")
        pulled = connection.pullback(self.sigma, self.inverse, conn)
        assert not pulled.is_trivial
        for y in plumbing.random_box(self.rng, 5, [(-1, 1), (-1, 1)]):
            assert connection.curvature(pulled, y).norm() < 1e-10

    def test_symplectic_map_keeps_invariants(self):
        conn = connection.preset("sphere")
        pulled = connection.pullback(self.sigma, self.inverse, conn)
        res = connection.check_invariants(pulled, self.rng, samples=5)
        assert res["torsion"] < 1e-10
        assert res["symplectic"] < 1e-10

    def test_naturality(self):
        conn = connection.preset("sphere")
        pulled = connection.pullback(self.sigma, self.inverse, conn)
        for x in plumbing.random_box(self.rng, 5, [(-1, 1), (-1, 1)]):
            res = connection.naturality_residual(
                self.sigma, conn, pulled, x
            )
            assert res < 1e-8

    def test_needs_both_maps(self):
        with pytest.raises(ValueError, match="inverse"):
            connection.pullback(
                self.sigma, None, connection.preset("trivial")
            )

    def test_evaluate_map(self):
        components = [exprfield.as_field(s) for s in self.sigma]
        y, jac = connection.evaluate_map(components, [1.0, 2.0])
        assert y.tolist() == [1.0, 3.0]
        assert jac.tolist() == [[1.0, 0.0], [2.0, 1.0]]


def test_real_and_complex_coefficients_give_one_connection():
    a, b, c, d = (
        exprfield.parse_expr(s)
        for s in ("x*y", "sin(x) + 1", "y^2 - x", "exp(y)/3")
    )
    real = connection.from_real_coeffs(a, b, c, d)
    alpha, beta = connection.real_to_alpha_beta(a, b, c, d)
    cplx = connection.from_alpha_beta(alpha, beta)
    box = [(-1.0, 1.0), (-1.0, 1.0)]
    for x in plumbing.random_box(np.random.default_rng(8), 100, box):
        assert_allclose(cplx.christoffel(x), real.christoffel(x), atol=1e-10)


def test_log_example_is_flat_on_a_grid():
    conn = connection.preset("log_example")
    for x in np.linspace(0.5, 3.0, 8):
        for y in np.linspace(-2.0, 2.0, 8):
            assert connection.curvature(conn, [x, y]).norm() < 1e-8
