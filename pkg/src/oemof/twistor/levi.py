# -*- coding: utf-8 -*-

"""Levi forms of exhaustion functions on the flat twistor space.

For the trivial connection on ``R^2`` the functions ``xi = w zb - z`` and
``w`` are global holomorphic coordinates of the twistor space; the
``levi`` chart of :mod:`oemof.twistor.exprfield` uses
``(Re xi, Im xi, Re w, Im w)``. An exhaustion function is
``psi = h + phi o pi`` with ``h`` the squared hyperbolic distance in the
fibre to a reference section.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import logging

import numpy as np
import pandas as pd
from scipy import linalg

from oemof.twistor import exprfield
from oemof.twistor import plumbing
from oemof.twistor import symplin

POSITIVE_TOL = 1e-9
EXHAUSTIONS = ("oka", "stein", "custom")


class ChartUnavailableError(ValueError):
    """No holomorphic chart is known for the requested connection."""


def _check_chart(conn):
    if conn is not None and not conn.is_trivial:
        raise ChartUnavailableError(
            "A holomorphic chart of the twistor space is only available for"
            " the trivial connection, not for '{0}'.".format(conn.label)
        )


def oka_phi(eps, x):
    """``-log(eps^2 - |x|^2)`` on the open ball of radius ``eps``.

    >>> oka_phi(1.0, [0.0, 0.0])
    0.0
    """
    r2 = float(np.dot(x, x))
    if r2 >= eps**2:
        raise exprfield.DomainError(
            "Oka function outside the ball of radius {0}".format(eps),
            "-log({0}^2 - abs2(z))".format(eps),
        )
    return float(np.log(1.0 / (eps**2 - r2)))


def fibre_distance_sq(w, w_ref=0.0):
    """Squared hyperbolic distance ``artanh(|w - a| / |1 - conj(a) w|)^2``.

    >>> round(fibre_distance_sq(0.5), 5)
    0.30174
    """
    for value in (w, w_ref):
        if abs(value) >= 1:
            raise symplin.MembershipError(
                "|w| = {0:.4g} is outside the fibre disk.".format(abs(value))
            )
    ratio = abs(w - w_ref) / abs(1 - np.conj(w_ref) * w)
    return float(np.arctanh(ratio) ** 2)


def mobius(w, a, theta=0.0):
    """Disk automorphism ``e^(i theta) (w - a) / (1 - conj(a) w)``."""
    return np.exp(1j * theta) * (w - a) / (1 - np.conj(a) * w)


def mobius_residual(w, w_ref, a, theta=0.0):
    """Change of the fibre distance under a disk automorphism."""
    moved = fibre_distance_sq(mobius(w, a, theta), mobius(w_ref, a, theta))
    return abs(moved - fibre_distance_sq(w, w_ref))


def levi_chart_point(z, w):
    """Levi chart coordinates of the twistor point ``(z, w)``."""
    xi = w * np.conj(z) - z
    return np.array([xi.real, xi.imag, w.real, w.imag])


def fibre_distance_expr(section="0"):
    """``h`` as a field of the levi chart; ``section`` is ``w_ref(z)``."""
    ref = exprfield.as_field(section, 1, chart="levi")
    names = exprfield.chart_names(1, "levi")
    w = names["w"]
    ratio = exprfield.div(
        exprfield.func("abs2", w - ref),
        exprfield.func("abs2", 1 - exprfield.conj(ref) * w),
    )
    return exprfield.func("atanhsq", ratio)


class ExhaustionSpec:
    """
    Parameters
    ----------
    phi : Expr or str
        Base function in the levi chart (``z``, ``zb`` or ``xi``, ``xib``).
    section : Expr or str
        Reference section ``w_ref(z)`` of the fibre distance.
    with_fibre : bool
        Adds the fibre distance ``h`` to ``phi``.
    domain : str or None
        Predicate on the base chart that grid points must satisfy.
    """

    def __init__(
        self, phi, section="0", with_fibre=True, domain=None, label="custom"
    ):
        self.phi = exprfield.as_field(phi, 1, chart="levi")
        self.section = exprfield.as_field(section, 1, chart="levi")
        self.with_fibre = with_fibre
        if isinstance(domain, str):
            domain = exprfield.Domain.parse(domain)
        self.domain = domain
        self.label = label
        psi = self.phi
        if with_fibre:
            psi = psi + fibre_distance_expr(self.section)
        self.psi = psi

    @classmethod
    def oka(cls, eps=1.0, section="0"):
        """``psi = h - log(eps^2 - |z|^2)``."""
        return cls(
            "-log({0!r}^2 - abs2(z))".format(float(eps)),
            section=section,
            domain="abs2(z) < {0!r}".format(float(eps) ** 2),
            label="oka",
        )

    @classmethod
    def stein(cls, section="0"):
        """``psi = |xi|^2 + h``."""
        return cls("abs2(xi)", section=section, label="stein")

    def contains(self, z):
        return self.domain is None or self.domain.contains([z.real, z.imag])

    def value(self, z, w):
        return exprfield.eval_jet(
            self.psi, levi_chart_point(z, w), order=0
        ).value.real


class LeviValue:
    """Levi matrix of a function at a chart point.

    Attributes
    ----------
    matrix : ndarray
        ``4 d^2 f / d zeta_k d zetab_l`` with ``zeta = (xi, w)``.
    eigenvalues : ndarray
        Sorted descending.
    positive_count : int
        Eigenvalues above the threshold after scaling the matrix to a
        unit largest entry.
    """

    def __init__(self, matrix, threshold=POSITIVE_TOL):
        self.matrix = np.asarray(matrix, dtype=complex)
        self.hermitian_residual = plumbing.max_abs(
            self.matrix - self.matrix.conj().T
        )
        hermitian = 0.5 * (self.matrix + self.matrix.conj().T)
        self.eigenvalues = linalg.eigvalsh(hermitian)[::-1]
        scale = plumbing.max_abs(hermitian)
        if scale == 0:
            self.positive_count = 0
        else:
            self.positive_count = int(
                np.sum(self.eigenvalues / scale > threshold)
            )


def levi_form(f, point, conn=None, threshold=POSITIVE_TOL):
    """Levi form of ``f`` at a levi chart point.

    Raises
    ------
    ChartUnavailableError
        For a connection other than the trivial one.

    Examples
    --------
    >>> value = levi_form("abs2(xi)", [0.3, 0.1, 0.2, 0.0])
    >>> value.positive_count
    1
    """
    _check_chart(conn)
    f = exprfield.as_field(f, 1, chart="levi")
    fv = exprfield.eval_jet(f, point, order=2)
    return LeviValue(4 * fv.dz_dzb(), threshold=threshold)


def fibre_restriction_residual(spec, z0, w):
    """Levi form of ``psi`` along the fibre over ``z0`` against the Levi
    form of the restriction ``w -> psi(w zb0 - z0, w)``."""
    z0, w = complex(z0), complex(w)
    point = levi_chart_point(z0, w)
    value = levi_form(spec.psi, point)
    tangent = np.array([np.conj(z0), 1.0])
    restricted = tangent @ value.matrix @ tangent.conj()
    w_expr = exprfield.complex_coordinate(1)
    fibre = exprfield.compose_complex(
        spec.psi, {0: w_expr * np.conj(z0) - z0}
    )
    intrinsic = 4 * exprfield.eval_jet(fibre, point, order=2).dz_dzb()[1, 1]
    return float(abs(restricted - intrinsic))


def completeness_scan(
    spec,
    sampling,
    conn=None,
    half_width=0.65,
    centre=(0.0, 0.0),
    required=1,
):
    """Positive Levi eigenvalue counts of ``spec.psi`` over a grid.

    Parameters
    ----------
    spec : ExhaustionSpec
    sampling : Sampling
        ``base_grid``, ``fibre_grid`` and ``wmax`` define the grid.
    required : int
        Count needed at every point for the completeness certificate.

    Returns
    -------
    tuple
        ``(table, summary)``: one row per grid point and the minimum
        count with the certificate flags.
    """
    _check_chart(conn)
    base = plumbing.square_grid(sampling.base_grid, half_width, centre)
    fibre = plumbing.spiral_disk(sampling.fibre_grid, sampling.wmax)
    rows = []
    for x, y in base:
        z = complex(x, y)
        if not spec.contains(z):
            raise ValueError(
                "Grid point z = {0:.4g} is outside the domain '{1}' of the"
                " exhaustion.".format(z, spec.domain)
            )
        for w in fibre:
            value = levi_form(spec.psi, levi_chart_point(z, w))
            rows.append(
                {
                    "z": z,
                    "w": complex(w),
                    "positive_count": value.positive_count,
                    "eigenvalues": value.eigenvalues.tolist(),
                    "hermitian_residual": value.hermitian_residual,
                }
            )
    table = pd.DataFrame(rows)
    min_count = int(table["positive_count"].min())
    summary = {
        "points": len(table),
        "min_positive_count": min_count,
        "required": required,
        "certificate": min_count >= required,
        "stein": min_count >= 2,
        "hermitian_residual": float(table["hermitian_residual"].max()),
    }
    logging.info(
        "Levi scan of %s over %d points: min positive count %d.",
        spec.label,
        len(table),
        min_count,
    )
    return table, summary
