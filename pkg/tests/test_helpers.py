# -*- coding: utf-8 -

"""Tests of connection spec parsing.

SPDX-License-Identifier: MIT
"""

import numpy as np
import pytest

from oemof.twistor import helpers

SPHERE_TEXT = """
# round sphere in stereographic coordinates
n=1
kind=alpha_beta
alpha=-2*zb/(1+abs2(z))
beta=0
box=[[-2, 2], [-2, 2]]
"""


def test_parse_key_value_text():
    spec = helpers.parse_spec_text(SPHERE_TEXT)
    assert spec["alpha"] == "-2*zb/(1+abs2(z))"
    assert spec["box"] == [[-2, 2], [-2, 2]]


def test_parse_json_text():
    spec = helpers.parse_spec_text('{"kind": "preset", "name": "sphere"}')
    assert spec == {"kind": "preset", "name": "sphere"}


def test_json_must_be_an_object():
    with pytest.raises(ValueError):
        helpers.parse_spec_text("[1, 2]")


def test_line_without_equals_sign():
    with pytest.raises(ValueError, match="Line 2"):
        helpers.parse_spec_text("kind=preset\nname sphere")


def test_missing_file(tmpdir):
    with pytest.raises(ValueError, match="not found"):
        helpers.load_spec(str(tmpdir.join("missing.conn")))


def test_load_spec(tmpdir):
    path = tmpdir.join("sphere.conn")
    path.write(SPHERE_TEXT)
    conn = helpers.connection_from_spec(helpers.load_spec(str(path)))
    assert conn.kind == "alpha_beta"
    assert conn.box == [(-2.0, 2.0), (-2.0, 2.0)]
    alpha, _ = conn.alpha_beta([1.0, 0.0])
    assert complex(alpha) == pytest.approx(-1.0)


def test_missing_kind():
    with pytest.raises(ValueError, match="misses the key 'kind'"):
        helpers.connection_from_spec({"n": 1})


def test_unknown_kind():
    with pytest.raises(ValueError, match="Unknown connection kind"):
        helpers.connection_from_spec({"kind": "torsion"})


def test_missing_coefficient():
    with pytest.raises(ValueError, match="misses \\['d'\\]"):
        helpers.connection_from_spec(
            {"kind": "real_coeffs", "a": "0", "b": "0", "c": "0"}
        )


def test_real_coeffs_need_n1():
    spec = {"kind": "real_coeffs", "n": 2}
    spec.update(a="0", b="0", c="0", d="0")
    with pytest.raises(ValueError, match="n=1 only"):
        helpers.connection_from_spec(spec)


def test_constant_a_spec():
    a = np.zeros((4, 4, 4)).tolist()
    conn = helpers.connection_from_spec({"kind": "constant_A", "n": 2, "A": a})
    assert conn.n == 2
    assert conn.is_trivial


def test_constant_a_size_mismatch():
    a = np.zeros((2, 2, 2)).tolist()
    with pytest.raises(ValueError, match="do not match"):
        helpers.connection_from_spec({"kind": "constant_A", "n": 2, "A": a})


def test_preset_with_box():
    spec = {"kind": "preset", "name": "sphere", "box": [[-1, 1], [0, 1]]}
    conn = helpers.connection_from_spec(spec)
    assert conn.label == "sphere"
    assert conn.box == [(-1.0, 1.0), (0.0, 1.0)]


def test_general_gamma_with_density():
    g1 = "(-2*x/(1+x^2+y^2))"
    g2 = "(2*y/(1+x^2+y^2))"
    spec = {
        "kind": "general_gamma",
        "gamma": [
            [[g1, "-" + g2], ["-" + g2, "-" + g1]],
            [[g2, g1], [g1, "-" + g2]],
        ],
        "density": "4/(1+abs2(z))^2",
        "label": "round",
    }
    conn = helpers.connection_from_spec(spec)
    assert conn.label == "round"
    assert conn.density is not None


def test_parse_numbers():
    assert helpers.parse_numbers("1, 2,3", count=3) == [1.0, 2.0, 3.0]
    with pytest.raises(ValueError, match="Expected 4 numbers"):
        helpers.parse_numbers("1,2", count=4)
    with pytest.raises(ValueError, match="comma separated"):
        helpers.parse_numbers("1;2")
