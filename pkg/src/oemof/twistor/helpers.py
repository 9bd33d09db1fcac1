# -*- coding: utf-8 -*-

"""
Helper functions for reading connection specs and command line values.

A connection spec is a JSON object or a text of ``key=value`` lines::

    n=1
    kind=alpha_beta
    alpha=-2*zb/(1+abs2(z))
    beta=0

``kind`` is one of ``alpha_beta``, ``real_coeffs``, ``constant_A``,
``general_gamma`` or ``preset`` (with ``name``).

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import json
import os
from warnings import warn

from oemof.tools import debugging

from oemof.twistor import connection

COMMON_KEYS = ("n", "kind", "domain", "box", "label")

KIND_KEYS = {
    "alpha_beta": (("alpha", "beta"), ()),
    "real_coeffs": (("a", "b", "c", "d"), ()),
    "constant_A": (("A",), ()),
    "general_gamma": (("gamma",), ("density",)),
    "preset": (("name",), ()),
}


def _value(text):
    text = text.strip()
    if text[:1] in "[{":
        return json.loads(text)
    return text


def parse_spec_text(text):
    """Parse the text of a connection spec into a dict.

    Examples
    --------
    >>> spec = parse_spec_text("n=1\\nkind=preset\\n# comment\\nname=sphere")
    >>> spec == {"n": "1", "kind": "preset", "name": "sphere"}
    True
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        spec = json.loads(stripped)
        if not isinstance(spec, dict):
            raise ValueError("A JSON connection spec must be an object.")
        return spec
    spec = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(
                "Line {0} of the connection spec is not 'key=value': "
                "{1!r}".format(number, line)
            )
        key, value = line.split("=", 1)
        spec[key.strip()] = _value(value)
    return spec


def load_spec(path):
    """Read a connection spec file (UTF-8)."""
    if not os.path.isfile(path):
        raise ValueError("Connection spec file {0} not found.".format(path))
    with open(path, encoding="utf-8") as f:
        return parse_spec_text(f.read())


def _check_keys(spec, kind):
    required, optional = KIND_KEYS[kind]
    missing = [key for key in required if key not in spec]
    if missing:
        raise ValueError(
            "Connection spec of kind '{0}' misses {1}.".format(kind, missing)
        )
    unknown = sorted(
        set(spec) - set(COMMON_KEYS) - set(required) - set(optional)
    )
    if unknown:
        msg = (
            "Unknown keys {0} in a connection spec of kind '{1}' are"
            " ignored.".format(unknown, kind)
        )
        warn(msg, debugging.SuspiciousUsageWarning)


def connection_from_spec(spec):
    """Build a :class:`SymplecticConnection` from a parsed spec.

    Raises
    ------
    ValueError
        For a missing key, an unknown kind or a spec that does not define a
        symplectic connection.

    Examples
    --------
    >>> conn = connection_from_spec({"kind": "preset", "name": "trivial"})
    >>> conn.is_trivial
    True
    """
    if "kind" not in spec:
        raise ValueError("Connection spec misses the key 'kind'.")
    kind = spec["kind"]
    if kind not in KIND_KEYS:
        raise ValueError(
            "Unknown connection kind '{0}', use one of {1}.".format(
                kind, sorted(KIND_KEYS)
            )
        )
    _check_keys(spec, kind)
    n = int(spec.get("n", 1))
    box = spec.get("box")
    if box is not None:
        box = [tuple(float(v) for v in pair) for pair in box]
    domain = spec.get("domain")
    label = spec.get("label")
    if kind == "preset":
        conn = connection.preset(spec["name"], n=n)
        if box is not None:
            conn.box = box
        return conn
    if kind != "general_gamma" and kind != "constant_A" and n != 1:
        raise ValueError("Kind '{0}' is defined for n=1 only.".format(kind))
    if kind == "alpha_beta":
        return connection.from_alpha_beta(
            spec["alpha"], spec["beta"], domain=domain, box=box, label=label
        )
    if kind == "real_coeffs":
        return connection.from_real_coeffs(
            *(spec[key] for key in "abcd"),
            domain=domain,
            box=box,
            label=label
        )
    if kind == "constant_A":
        conn = connection.from_constant_a(spec["A"], box=box, label=label)
        if conn.n != n:
            raise ValueError(
                "Matrices of size {0} do not match n={1}.".format(
                    conn.dim, n
                )
            )
        return conn
    return connection.from_general_gamma(
        spec["gamma"],
        n,
        density=spec.get("density"),
        domain=domain,
        box=box,
        label=label,
    )


def parse_numbers(text, count=None):
    """Comma separated floats, e.g. ``--abcd 1,0,0,0``.

    >>> parse_numbers("1,0, 2.5")
    [1.0, 0.0, 2.5]
    """
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(
            "Expected comma separated numbers, got {0!r}.".format(text)
        )
    if count is not None and len(values) != count:
        raise ValueError(
            "Expected {0} numbers, got {1}.".format(count, len(values))
        )
    return values
