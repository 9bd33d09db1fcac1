# -*- coding: utf-8 -*-

"""Plumbing stuff: sample generators and finite-difference stencils.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import numpy as np

GOLDEN_ANGLE = np.pi * (3 - np.sqrt(5))


def derivative(func, point, direction, h=1e-4, accuracy=4):
    """Directional derivative of an array valued function.

    Central differences of second or fourth order.

    Examples
    --------
    >>> round(float(derivative(np.sin, 0.0, 1.0)), 10)
    1.0
    """
    point = np.asarray(point, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if accuracy == 2:
        return (
            np.asarray(func(point + h * direction))
            - np.asarray(func(point - h * direction))
        ) / (2 * h)
    if accuracy == 4:
        return (
            -np.asarray(func(point + 2 * h * direction))
            + 8 * np.asarray(func(point + h * direction))
            - 8 * np.asarray(func(point - h * direction))
            + np.asarray(func(point - 2 * h * direction))
        ) / (12 * h)
    raise ValueError("Only accuracy 2 and 4 are available.")


def gradient(func, point, h=1e-4, accuracy=4):
    """Stack of the partial derivatives along every coordinate."""
    point = np.asarray(point, dtype=float)
    basis = np.eye(len(point))
    return np.array(
        [derivative(func, point, e, h=h, accuracy=accuracy) for e in basis]
    )


def random_box(rng, count, box, domain=None, max_tries=100):
    """Uniform points in a box, rejecting those outside ``domain``.

    ``box`` is a sequence of ``(low, high)`` pairs.
    """
    box = np.asarray(box, dtype=float)
    points = []
    tries = 0
    while len(points) < count:
        tries += 1
        if tries > max_tries * max(count, 1):
            raise ValueError(
                "Could not find {0} sample points inside '{1}'.".format(
                    count, domain
                )
            )
        p = rng.uniform(box[:, 0], box[:, 1])
        if domain is None or domain.contains(p):
            points.append(p)
    return np.array(points)


def random_disk(rng, count, radius):
    """Uniform complex numbers with modulus below ``radius``."""
    r = radius * np.sqrt(rng.uniform(0, 1, count))
    theta = rng.uniform(0, 2 * np.pi, count)
    return r * np.exp(1j * theta)


def random_annulus(rng, count, inner, outer):
    """Complex numbers with ``inner <= |z| <= outer``, uniform in ``|z|``."""
    r = rng.uniform(inner, outer, count)
    theta = rng.uniform(0, 2 * np.pi, count)
    return r * np.exp(1j * theta)


def spiral_disk(count, radius):
    """Deterministic, evenly spread points of a closed disk.

    >>> len(spiral_disk(12, 0.95))
    12
    """
    k = np.arange(count)
    r = radius * np.sqrt((k + 0.5) / count)
    return r * np.exp(1j * k * GOLDEN_ANGLE)


def square_grid(size, half_width, centre=(0.0, 0.0)):
    """``size x size`` points of the square of the given half width."""
    axis = np.linspace(-half_width, half_width, size)
    xs, ys = np.meshgrid(axis + centre[0], axis + centre[1], indexing="ij")
    return np.column_stack([xs.ravel(), ys.ravel()])


def complex_to_real(values):
    """``[z_1, ..., z_n]`` to ``[x_1, y_1, ..., x_n, y_n]``."""
    values = np.atleast_1d(np.asarray(values, dtype=complex))
    out = np.empty(2 * len(values))
    out[0::2] = values.real
    out[1::2] = values.imag
    return out


def real_to_complex(values):
    values = np.asarray(values, dtype=float)
    return values[0::2] + 1j * values[1::2]


def max_abs(value):
    """Largest modulus of the entries, 0 for empty input."""
    value = np.asarray(value)
    return float(np.max(np.abs(value))) if value.size else 0.0
