# -*- coding: utf-8 -*-

"""Configuration objects for sweeps, thresholds and the metric scale.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

from warnings import warn

import numpy as np
from oemof.tools import debugging

#: Pass thresholds before scaling.
THRESHOLDS = {
    "algebra": 1e-10,
    "invariant": 1e-9,
    "identity": 1e-12,
    "curvature": 1e-8,
    "curvature_fd": 1e-4,
    "field_equations": 1e-6,
    "naturality": 1e-6,
    "nijenhuis": 5e-4,
    "non_integrable": 1e-3,
    "holomorphy": 1e-9,
    "pullback_holomorphy": 1e-6,
    "fd_exterior": 5e-4,
    "flat_exterior": 1e-6,
    "non_closed": 1e-3,
    "levi_civita": 1e-6,
    "sectional_fd": 1e-3,
    "witness": 1e-8,
    "levi": 1e-9,
    "hermitian": 1e-10,
}


class Tolerances:
    """
    Parameters
    ----------
    scale : float
        Multiplier applied to every threshold (``--tol``).
    overrides : dict
        Replacement base thresholds by name.
    """

    def __init__(self, scale=1.0, **overrides):
        self.scale = scale
        self.base = dict(THRESHOLDS)
        self.base.update(overrides)
        self._check_scale()

    def _check_scale(self):
        if not self.scale > 0:
            e1 = "The tolerance scale must be positive, got {0}.".format(
                self.scale
            )
            raise AttributeError(e1)

    def __getitem__(self, name):
        return self.base[name] * self.scale

    def table(self):
        return {key: self[key] for key in sorted(self.base)}


class Sampling:
    """
    Parameters
    ----------
    seed : int
        Seed of every random sweep.
    samples : int
        Default number of random samples.
    wmax : float
        Largest modulus of sampled fibre coordinates.
    base_grid : int
        Base grid size of Levi-form scans (``N`` for an ``NxN`` grid).
    fibre_grid : int
        Number of fibre points per base point of Levi-form scans.
    step : float
        Finite-difference step of the numerical cross-checks.
    """

    def __init__(
        self,
        seed=42,
        samples=200,
        wmax=0.95,
        base_grid=15,
        fibre_grid=12,
        step=1e-4,
    ):
        self.seed = seed
        self.samples = samples
        self.wmax = wmax
        self.base_grid = base_grid
        self.fibre_grid = fibre_grid
        self.step = step
        self._check_counts()
        self._check_wmax()

    def _check_counts(self):
        for name in ("samples", "base_grid", "fibre_grid"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                e1 = "'{0}' must be a positive integer, got {1}.".format(
                    name, value
                )
                raise AttributeError(e1)
        if not self.step > 0:
            raise AttributeError("The finite-difference step must be > 0.")

    def _check_wmax(self):
        if not 0 < self.wmax < 1:
            e2 = (
                "Fibre samples must stay inside the unit disk, "
                "'wmax' = {0} is not in (0, 1).".format(self.wmax)
            )
            raise AttributeError(e2)
        if self.wmax > 0.95:
            msg = (
                "Sampling up to |w| = {0} puts finite-difference stencils"
                " close to the boundary of the fibre disk."
            ).format(self.wmax)
            warn(msg, debugging.SuspiciousUsageWarning)

    def rng(self, offset=0):
        return np.random.default_rng(self.seed + offset)


class MetricParams:
    """
    Parameters
    ----------
    t : float
        Scale of the pulled back symplectic form in
        ``Omega = t * pi^*omega - tau``.
    """

    def __init__(self, t=1.0):
        self.t = t
        self._check_t()

    def _check_t(self):
        if not self.t > 0:
            e1 = "The metric scale t must be positive, got {0}.".format(
                self.t
            )
            raise AttributeError(e1)
        if not 1e-3 <= self.t <= 1e3:
            msg = (
                "A metric scale t = {0} makes horizontal and vertical"
                " lengths differ by orders of magnitude."
            ).format(self.t)
            warn(msg, debugging.SuspiciousUsageWarning)
