# -*- coding: utf-8 -*-

"""Flat symplectic connections and their trivialising maps.

A frame map ``g`` is parallel for ``nabla = nabla0 + A`` iff
``A = g dg^-1`` and a diffeomorphism ``sigma`` flattens ``nabla`` iff
``g o sigma = Jac sigma``. For translation invariant connections (constant
``A``) both are explicit: ``g = exp(-A(x))`` and
``sigma(x) = x - A(x) x / 2``.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import logging

import numpy as np
from scipy import linalg

from oemof.twistor import connection
from oemof.twistor import exprfield
from oemof.twistor.exprfield import Const
from oemof.twistor.exprfield import Var
from oemof.twistor.symplin import symplectic_matrix

FLAT_TOL = 1e-12
NILPOTENT_TOL = 1e-14
CURVE_TOL = 1e-12
EXCLUDED_POINT = (0.0, 0.0, 1.0, 0.0)


class NotFlatError(ValueError):
    """A constant 1-form with ``A(X) A(Y) != 0`` for a basis pair."""

    def __init__(self, pair, residual):
        self.pair = pair
        self.residual = residual
        super().__init__(
            "A(X)A(Y) != 0 for X=d{0}, Y=d{1} (max entry {2:.3g}); the"
            " connection is not flat.".format(
                pair[0] + 1, pair[1] + 1, residual
            )
        )


class FrameMap:
    """A matrix valued map given by coefficient fields.

    Parameters
    ----------
    entries : nested sequence
        ``entries[r][c]`` is the field (or source text) of ``g[r, c]``.
    n : int
    symplectic : bool
        Declares ``g^T Omega g = Omega``; checked by
        :meth:`symplectic_residual`.

    Examples
    --------
    >>> g = FrameMap([["1", "x"], ["0", "1"]])
    >>> float(g([2.0, 0.0])[0, 1])
    2.0
    """

    def __init__(self, entries, n=1, symplectic=False):
        dim = 2 * n
        self.n = n
        self.symplectic = symplectic
        if any(len(row) != dim for row in entries) or len(entries) != dim:
            raise ValueError("A frame map needs {0}x{0} entries.".format(dim))
        self.entries = [
            [exprfield.as_field(entries[r][c], n) for c in range(dim)]
            for r in range(dim)
        ]
        self._flat = [e for row in self.entries for e in row]

    def jet(self, x):
        """``(g(x), dg)`` with ``dg[c] = d_c g``."""
        dim = 2 * self.n
        values = exprfield.eval_many(self._flat, x, order=1)
        g = np.array([fv.value.real for fv in values]).reshape(dim, dim)
        dg = np.array([fv.gradient.real for fv in values])
        return g, dg.T.reshape(dim, dim, dim)

    def __call__(self, x):
        return self.jet(x)[0]

    def symplectic_residual(self, x):
        g = self(x)
        omega = symplectic_matrix(self.n)
        return float(np.abs(g.T @ omega @ g - omega).max())


class ConstantOneForm:
    """The values ``A_i = A(d_i)`` of a constant ``sp``-valued 1-form.

    The lowered tensor ``omega(A(X) Y, Z)`` has to be totally symmetric,
    which makes ``nabla0 + A`` a torsion free symplectic connection.
    """

    def __init__(self, matrices, tol=1e-10):
        matrices = np.asarray(matrices, dtype=float)
        dim = matrices.shape[0]
        if dim % 2 or matrices.shape != (dim, dim, dim):
            raise ValueError("Expected an array of shape (2n, 2n, 2n).")
        self.matrices = matrices
        self.n = dim // 2
        omega = symplectic_matrix(self.n)
        for i, a in enumerate(matrices):
            if np.abs(a.T @ omega + omega @ a).max() > tol:
                raise ValueError("A(d{0}) is not in sp.".format(i + 1))
        low = self.lowered()
        perms = [(0, 2, 1), (1, 0, 2), (2, 1, 0)]
        if max(np.abs(low - low.transpose(p)).max() for p in perms) > tol:
            raise ValueError(
                "omega(A(X)Y, Z) is not totally symmetric; the form does"
                " not give a torsion free symplectic connection."
            )

    @classmethod
    def from_abcd(cls, a, b, c, d):
        """``A(dx) = [[b, c], [-a, -b]]`` and ``A(dy) = [[c, d], [-b, -c]]``.

        >>> ConstantOneForm.from_abcd(1, 0, 0, 0).matrices[0].tolist()
        [[0.0, 0.0], [-1.0, 0.0]]
        """
        return cls([[[b, c], [-a, -b]], [[c, d], [-b, -c]]])

    @classmethod
    def from_symmetric(cls, s):
        return cls(connection.constant_from_symmetric(s))

    def abcd(self):
        if self.n != 1:
            raise ValueError("Real coefficients are defined for n=1 only.")
        a0, a1 = self.matrices
        return -a0[1, 0], a0[0, 0], a0[0, 1], a1[0, 1]

    def lowered(self):
        return np.einsum(
            "ikj,kl->ijl", self.matrices, symplectic_matrix(self.n)
        )

    def assemble(self, x):
        """``B = A(x) = sum_i x_i A_i``."""
        x = np.asarray(x, dtype=float)
        return np.einsum("i,ikj->kj", x, self.matrices)

    def wedge_residual(self):
        """Worst entry of the products ``A_i A_j`` and its index pair."""
        worst, pair = 0.0, None
        dim = len(self.matrices)
        for i in range(dim):
            for j in range(dim):
                value = np.abs(self.matrices[i] @ self.matrices[j]).max()
                if value > worst:
                    worst, pair = float(value), (i, j)
        return worst, pair

    def connection(self, label=None):
        return connection.from_constant_a(self.matrices, label=label)


class ExponentialFrame:
    """``g(x) = exp(-A(x))`` for a constant 1-form.

    Uses ``1 - B`` exactly when ``B^2`` vanishes, else the scaling and
    squaring exponential with its Frechet derivative.
    """

    def __init__(self, form):
        self.form = form
        self.n = form.n

    def jet(self, x):
        b = self.form.assemble(x)
        if np.abs(b @ b).max() < NILPOTENT_TOL:
            g = np.eye(len(b)) - b
            return g, -self.form.matrices.copy()
        g = linalg.expm(-b)
        dg = np.array(
            [
                linalg.expm_frechet(-b, -a, compute_expm=False)
                for a in self.form.matrices
            ]
        )
        return g, dg

    def __call__(self, x):
        return self.jet(x)[0]


def log_example_frame():
    """A parallel frame of the connection ``b = -1/(2x)``, ``d = x``."""
    return FrameMap(
        [
            [
                "sqrt(2*x)/2*exp(-y/sqrt(2))",
                "-sqrt(x)*exp(y/sqrt(2))",
            ],
            [
                "1/(2*sqrt(x))*exp(-y/sqrt(2))",
                "sqrt(2)/(2*sqrt(x))*exp(y/sqrt(2))",
            ],
        ]
    )


# ----------------------------------------------------------- residuals


def frame_connection(g, x):
    """``(g dg^-1)(d_c) = -(d_c g) g^-1`` stacked along c."""
    value, dg = g.jet(x)
    if abs(np.linalg.det(value)) < 1e-14:
        raise ValueError("Frame map is singular at {0}.".format(list(x)))
    inverse = np.linalg.inv(value)
    return -np.einsum("cij,jk->cik", dg, inverse)


def frame_flat_residual(conn, g, x):
    """Largest entry of ``A_x(X) - (g dg^-1)_x(X)`` over coordinate X."""
    return float(np.abs(conn.christoffel(x) - frame_connection(g, x)).max())


def jacobian_equation_residual(sigma, g, x):
    """Largest entry of ``g(sigma(x)) - Jac sigma(x)``.

    >>> sigma = [exprfield.parse_expr("x"), exprfield.parse_expr("y")]
    >>> double = FrameMap([["2", "0"], ["0", "2"]])
    >>> jacobian_equation_residual(sigma, double, [0.1, 0.2])
    1.0
    """
    sigma = [exprfield.as_field(s, g.n) for s in sigma]
    y, jac = connection.evaluate_map(sigma, x)
    return float(np.abs(g(y) - jac).max())


def schwarz_tensor(g, x):
    """``S[j, a, b] = sum_i (d_i g[j, a] g[i, b] - d_i g[j, b] g[i, a])``."""
    value, dg = g.jet(x)
    half = np.einsum("ija,ib->jab", dg, value)
    return half - half.transpose(0, 2, 1)


def schwarz_residual(g, x):
    return float(np.abs(schwarz_tensor(g, x)).max())


# ---------------------------------------------------- invariant forms


def _normalized(abcd):
    v = np.asarray(abcd, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("(a, b, c, d) = 0 is not a projective point.")
    return v / norm


def ti_flat_classify(abcd):
    """Position of ``[a:b:c:d]`` with respect to the flat curve.

    Parameters
    ----------
    abcd : sequence or ConstantOneForm

    Returns
    -------
    dict
        ``on_curve`` (``bc - ad = b^2 - ac = 0``), ``excluded_point``
        (proportional to ``(0, 0, 1, 0)``) and ``flat`` (``R = 0``, which
        holds on the twisted cubic only).

    Examples
    --------
    >>> ti_flat_classify((1, 0, 0, 0))["on_curve"]
    True
    >>> ti_flat_classify((0, 0, 1, 0))["excluded_point"]
    True
    """
    if isinstance(abcd, ConstantOneForm):
        abcd = abcd.abcd()
    a, b, c, d = _normalized(abcd)
    on_curve = (
        abs(b * c - a * d) < CURVE_TOL and abs(b * b - a * c) < CURVE_TOL
    )
    excluded = (
        max(abs(a), abs(b), abs(d)) < CURVE_TOL and abs(abs(c) - 1) < CURVE_TOL
    )
    flat = on_curve and abs(b * d - c * c) < CURVE_TOL
    return {
        "on_curve": bool(on_curve),
        "excluded_point": bool(excluded),
        "flat": bool(flat),
    }


def curve_point(s, t):
    """``[s^3 : s^2 t : s t^2 : t^3]`` on the flat component.

    >>> curve_point(1, 1)
    (1, 1, 1, 1)
    """
    return s**3, s**2 * t, s * t**2, t**3


def _check_flat(form):
    worst, pair = form.wedge_residual()
    if worst > FLAT_TOL:
        raise NotFlatError(pair, worst)


def _quadratic_map(form, sign):
    """Components of ``x + sign * A(x) x / 2`` as coefficient fields."""
    dim = len(form.matrices)
    components = []
    for k in range(dim):
        expr = Var(k)
        for i in range(dim):
            for j in range(dim):
                coefficient = 0.5 * sign * form.matrices[i, k, j]
                if coefficient != 0:
                    expr = expr + Const(coefficient) * Var(i) * Var(j)
        components.append(expr)
    return components


def ti_flat_sigma(form):
    """The flattening map ``sigma(x) = x - A(x) x / 2``.

    Raises
    ------
    NotFlatError
        If ``A(X) A(Y) != 0`` for some basis pair.

    Examples
    --------
    >>> sigma = ti_flat_sigma(ConstantOneForm.from_abcd(1, 0, 0, 0))
    >>> [float(e.evaluate([2.0, 1.0]).real) for e in sigma]
    [2.0, 3.0]
    """
    _check_flat(form)
    logging.debug("Built the flattening map of a constant 1-form.")
    return _quadratic_map(form, -1)


def ti_flat_sigma_inverse(form):
    """``sigma^-1(y) = y + A(y) y / 2``."""
    _check_flat(form)
    return _quadratic_map(form, 1)
