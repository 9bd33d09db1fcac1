# -*- coding: utf-8 -

"""Tests of flat constant connections and their flattening maps.

SPDX-License-Identifier: MIT
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from oemof.twistor import connection
from oemof.twistor import flatmaps
from oemof.twistor import plumbing
from oemof.twistor.flatmaps import ConstantOneForm
from oemof.twistor.flatmaps import NotFlatError

BOX = [(-1.0, 1.0), (-1.0, 1.0)]


def test_abcd_round_trip():
    form = ConstantOneForm.from_abcd(1, 2, 3, 4)
    assert form.abcd() == (1, 2, 3, 4)


def test_form_outside_sp_is_rejected():
    with pytest.raises(ValueError, match="not in sp"):
        ConstantOneForm([[[1, 0], [0, 0]], [[0, 0], [0, 0]]])


def test_form_needs_cubic_shape():
    with pytest.raises(ValueError, match="shape"):
        ConstantOneForm(np.zeros((3, 3, 3)))


def test_frame_map_needs_square_entries():
    with pytest.raises(ValueError, match="2x2"):
        flatmaps.FrameMap([["1", "0"]])


def test_classification_of_the_excluded_point():
    res = flatmaps.ti_flat_classify((0, 0, 1, 0))
    assert res == {"on_curve": True, "excluded_point": True, "flat": False}


def test_classification_of_the_line():
    res = flatmaps.ti_flat_classify((0, 0, 1, 2))
    assert res["on_curve"]
    assert not res["flat"]
    assert not res["excluded_point"]


def test_classification_off_the_curve():
    res = flatmaps.ti_flat_classify((1, 1, 0, 0))
    assert not res["on_curve"]
    assert not res["flat"]


def test_zero_is_not_a_projective_point():
    with pytest.raises(ValueError, match="projective"):
        flatmaps.ti_flat_classify((0, 0, 0, 0))


@pytest.mark.parametrize("s,t", [(1, 0), (0, 1), (2, -1), (0.5, 3)])
def test_curve_points_are_flat(s, t):
    abcd = flatmaps.curve_point(s, t)
    assert flatmaps.ti_flat_classify(abcd)["flat"]
    form = ConstantOneForm.from_abcd(*abcd)
    assert form.wedge_residual()[0] < 1e-12
    conn = form.connection()
    assert connection.curvature(conn, [0.3, 0.7]).norm() < 1e-12


def test_non_flat_form_raises_with_the_pair():
    form = ConstantOneForm.from_abcd(0, 0, 1, 0)
    with pytest.raises(NotFlatError, match="not flat") as err:
        flatmaps.ti_flat_sigma(form)
    assert err.value.residual == pytest.approx(1.0)
    assert err.value.pair == (0, 1)


def test_random_n2_form_is_not_flat():
    rng = np.random.default_rng(0)
    s = connection.random_symmetric_tensor(rng, 4)
    form = ConstantOneForm.from_symmetric(s)
    with pytest.raises(NotFlatError):
        flatmaps.ti_flat_sigma_inverse(form)


class TestFlatteningMap:
    @classmethod
    def setup_class(cls):
        cls.form = ConstantOneForm.from_abcd(*flatmaps.curve_point(2, -1))
        cls.conn = cls.form.connection(label="curve")
        cls.sigma = flatmaps.ti_flat_sigma(cls.form)
        cls.inverse = flatmaps.ti_flat_sigma_inverse(cls.form)
        cls.frame = flatmaps.ExponentialFrame(cls.form)
        cls.points = plumbing.random_box(np.random.default_rng(6), 10, BOX)

    def test_frame_is_parallel(self):
        for x in self.points:
            res = flatmaps.frame_flat_residual(self.conn, self.frame, x)
            assert res < 1e-10

    def test_jacobian_equation(self):
        for x in self.points:
            res = flatmaps.jacobian_equation_residual(
                self.sigma, self.frame, x
            )
            assert res < 1e-10

    def test_inverse(self):
        for y in self.points:
            x, _ = connection.evaluate_map(self.inverse, y, order=0)
            back, _ = connection.evaluate_map(self.sigma, x, order=0)
            assert_allclose(back, y, atol=1e-12)

    def test_pullback_of_the_flat_connection(self):
        trivial = connection.preset("trivial")
        pulled = connection.pullback(self.sigma, self.inverse, trivial)
        for x in self.points:
            assert_allclose(
                pulled.christoffel(x), self.form.matrices, atol=1e-10
            )

    def test_schwarz_tensor_at_the_origin(self):
        assert flatmaps.schwarz_residual(self.frame, np.zeros(2)) < 1e-12


def test_exponential_frame_of_a_general_form():
    form = ConstantOneForm.from_abcd(0.3, -0.2, 0.5, 0.1)
    frame = flatmaps.ExponentialFrame(form)
    x = np.array([0.4, -0.6])
    g, dg = frame.jet(x)
    approx = plumbing.gradient(frame, x, h=1e-5)
    assert_allclose(dg, approx, atol=1e-8)
    assert_allclose(g @ np.linalg.inv(g), np.eye(2), atol=1e-12)


def test_log_example_frame():
    conn = connection.preset("log_example")
    frame = flatmaps.log_example_frame()
    for x in conn.sample(np.random.default_rng(12), 10):
        assert flatmaps.frame_flat_residual(conn, frame, x) < 1e-9
        assert frame.symplectic_residual(x) < 1e-12


def test_sampled_curve_points():
    rng = np.random.default_rng(12)
    x = rng.normal(size=2)
    for s, t in rng.uniform(-1.0, 1.0, size=(50, 2)):
        form = ConstantOneForm.from_abcd(*flatmaps.curve_point(s, t))
        u, v = rng.normal(size=(2, 2))
        product = form.assemble(u) @ form.assemble(v)
        assert np.abs(product).max() < 1e-12
        conn = form.connection()
        assert connection.curvature(conn, x).norm() < 1e-10
        sigma = flatmaps.ti_flat_sigma(form)
        frame = flatmaps.ExponentialFrame(form)
        assert flatmaps.jacobian_equation_residual(sigma, frame, x) < 1e-10


def test_pullback_at_random_points():
    rng = np.random.default_rng(13)
    trivial = connection.preset("trivial")
    for s, t in rng.uniform(-1.0, 1.0, size=(3, 2)):
        form = ConstantOneForm.from_abcd(*flatmaps.curve_point(s, t))
        pulled = connection.pullback(
            flatmaps.ti_flat_sigma(form),
            flatmaps.ti_flat_sigma_inverse(form),
            trivial,
        )
        for x in plumbing.random_box(rng, 20, BOX):
            assert_allclose(pulled.christoffel(x), form.matrices, atol=1e-9)
