# -*- coding: utf-8 -*-

"""Pointwise symplectic linear algebra.

All matrices are stated in the ordered basis
``(dx_1, dy_1, ..., dx_n, dy_n)``. A compatible complex structure ``j``
satisfies ``j @ j = -1``, ``j.T @ Omega @ j = Omega`` and has the
positive definite metric ``Omega @ j``. Its Siegel coordinate is the
complex symmetric matrix ``W`` whose columns span the ``-i``-eigenspace
through ``v_k = dzb_k + sum_l W[l, k] dz_l``.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import numpy as np
from scipy import linalg

SYMMETRY_TOL = 1e-12
POSITIVITY_TOL = 1e-10


class MembershipError(ValueError):
    """A Siegel coordinate outside the domain ``1 - W W^* > 0``."""


class SignatureError(ValueError):
    """A matrix that is not a positive compatible complex structure."""


class SympForm:
    """The standard symplectic form of ``R^2n``.

    >>> SympForm(1)([1, 0], [0, 1])
    1.0
    """

    def __init__(self, n):
        self.n = n
        self.matrix = symplectic_matrix(n)

    def __call__(self, u, v):
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))


def symplectic_matrix(n):
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n), block)


def standard_structure(n):
    """``J0``: ``dx -> dy``, ``dy -> -dx`` in every block."""
    block = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(np.eye(n), block)


def _dz_matrices(n):
    """Columns ``dz_l`` and ``dzb_l`` as complex vectors of ``R^2n``."""
    dz = np.zeros((2 * n, n), complex)
    for k in range(n):
        dz[2 * k, k] = 0.5
        dz[2 * k + 1, k] = -0.5j
    return dz, dz.conj()


def _as_siegel(w):
    w = np.asarray(w, dtype=complex)
    if w.ndim == 0:
        w = w.reshape(1, 1)
    return w


class CompatJ:
    """A compatible complex structure with its Siegel coordinate.

    Parameters
    ----------
    matrix : array_like
        The real ``2n x 2n`` matrix ``j``.
    siegel : array_like or None
        Complex symmetric ``n x n`` matrix ``W``; computed on first access
        when not given.
    """

    def __init__(self, matrix, siegel=None):
        self.matrix = np.asarray(matrix, dtype=float)
        self.n = self.matrix.shape[0] // 2
        self._siegel = None if siegel is None else _as_siegel(siegel)

    @property
    def siegel(self):
        if self._siegel is None:
            self._siegel = matrix_to_fibre(self)
        return self._siegel

    @property
    def w(self):
        """The scalar Siegel coordinate for ``n = 1``."""
        if self.n != 1:
            raise ValueError("A scalar fibre coordinate needs n=1.")
        return complex(self.siegel[0, 0])

    @property
    def metric(self):
        """Matrix of ``omega(., j .)``."""
        return symplectic_matrix(self.n) @ self.matrix

    def residuals(self):
        """Residuals of the three defining conditions."""
        j = self.matrix
        omega = symplectic_matrix(self.n)
        square = np.linalg.norm(j @ j + np.eye(2 * self.n))
        compat = np.linalg.norm(j.T @ omega @ j - omega)
        metric = omega @ j
        positivity = np.linalg.eigvalsh(0.5 * (metric + metric.T)).min()
        return {
            "square": square,
            "compatibility": compat,
            "min_eigenvalue": positivity,
        }

    def check(self, tol=POSITIVITY_TOL):
        res = self.residuals()
        if res["square"] > tol or res["compatibility"] > tol:
            raise SignatureError(
                "Not a compatible complex structure: |j^2 + 1| = {0:.3g},"
                " |j^T Omega j - Omega| = {1:.3g}.".format(
                    res["square"], res["compatibility"]
                )
            )
        if res["min_eigenvalue"] <= tol:
            raise SignatureError(
                "omega(., j .) is not positive definite (smallest"
                " eigenvalue {0:.3g}); only the l=0 component is"
                " modelled.".format(res["min_eigenvalue"])
            )
        return self


class VerticalMatrix:
    """An element of ``m_j``: ``A`` in ``sp`` with ``A j = -j A``."""

    def __init__(self, matrix, anchor, tol=POSITIVITY_TOL):
        self.matrix = np.asarray(matrix, dtype=float)
        self.anchor = anchor
        residual = vertical_residual(self.matrix, anchor)
        scale = max(1.0, np.abs(self.matrix).max())
        if residual > tol * scale:
            raise ValueError(
                "Matrix is not vertical at its anchor (residual"
                " {0:.3g}).".format(residual)
            )


def _anchor_matrix(j):
    return j.matrix if isinstance(j, CompatJ) else np.asarray(j, float)


def vertical_residual(a, j):
    """Largest violation of ``A in sp`` and ``A j = -j A``."""
    j = _anchor_matrix(j)
    omega = symplectic_matrix(j.shape[0] // 2)
    return max(
        np.abs(a.T @ omega + omega @ a).max(), np.abs(a @ j + j @ a).max()
    )


def siegel_membership(w):
    """Membership in the Siegel domain ``1 - W W^* > 0``.

    Parameters
    ----------
    w : complex or array_like
        Scalar for ``n = 1``, else a complex symmetric matrix.

    Returns
    -------
    tuple
        ``(inside, margin)`` with the smallest eigenvalue as margin.

    Examples
    --------
    >>> siegel_membership(0)
    (True, 1.0)
    """
    w = _as_siegel(w)
    if w.shape[0] != w.shape[1]:
        raise ValueError("A Siegel coordinate must be a square matrix.")
    asymmetry = np.abs(w - w.T).max()
    if asymmetry > SYMMETRY_TOL:
        raise ValueError(
            "Siegel coordinate is not symmetric (|W - W^T| = {0:.3g}).".format(
                asymmetry
            )
        )
    gram = np.eye(len(w)) - w @ w.conj().T
    margin = float(np.linalg.eigvalsh(0.5 * (gram + gram.conj().T)).min())
    return margin > 0, margin


def fibre_to_matrix(w):
    """The compatible complex structure of a Siegel coordinate.

    >>> np.allclose(fibre_to_matrix(0).matrix, standard_structure(1))
    True
    """
    w = _as_siegel(w)
    inside, margin = siegel_membership(w)
    if not inside:
        raise MembershipError(
            "Siegel coordinate outside the domain, smallest eigenvalue of"
            " 1 - W W^* is {0:.3g}.".format(margin)
        )
    n = len(w)
    w = 0.5 * (w + w.T)
    dz, dzb = _dz_matrices(n)
    v = dzb + dz @ w
    basis = np.hstack([v, v.conj()])
    eig = np.diag(np.concatenate([-1j * np.ones(n), 1j * np.ones(n)]))
    j = basis @ eig @ np.linalg.inv(basis)
    return CompatJ(j.real, siegel=w)


def matrix_to_fibre(j):
    """The Siegel coordinate of a compatible complex structure."""
    if not isinstance(j, CompatJ):
        j = CompatJ(j)
    j.check()
    n = j.n
    values, vectors = np.linalg.eig(j.matrix)
    minus = vectors[:, values.imag < 0]
    if minus.shape[1] != n:
        raise SignatureError("Eigenvalues of j are not +-i.")
    dz_coeff = minus[0::2, :] + 1j * minus[1::2, :]
    dzb_coeff = minus[0::2, :] - 1j * minus[1::2, :]
    w = dz_coeff @ np.linalg.inv(dzb_coeff)
    return 0.5 * (w + w.T)


def fibre_velocity(w, dw):
    """Derivative of ``fibre_to_matrix`` at ``w`` in direction ``dw``."""
    w = _as_siegel(w)
    dw = _as_siegel(dw)
    n = len(w)
    dz, dzb = _dz_matrices(n)
    v = dzb + dz @ w
    dv = dz @ dw
    basis = np.hstack([v, v.conj()])
    dbasis = np.hstack([dv, dv.conj()])
    j = fibre_to_matrix(w).matrix
    velocity = dbasis @ np.linalg.inv(basis) @ j - j @ dbasis @ np.linalg.inv(
        basis
    )
    return velocity.real


def siegel_increment(w, velocity):
    """Inverse of :func:`fibre_velocity` for ``n = 1``.

    Maps a vertical tangent ``dj`` (real or complexified) to the complex
    increments ``(dw, dwb)`` of the fibre coordinate.
    """
    w = complex(np.asarray(w).ravel()[0])
    velocity = np.asarray(velocity)
    v = np.array([0.5 * (1 + w), 0.5j * (1 - w)])
    real = velocity.real
    imag = velocity.imag if np.iscomplexobj(velocity) else 0 * real

    def increment(vel):
        u = vel @ v
        a = u[0] + 1j * u[1]
        b = u[0] - 1j * u[1]
        return 0.5j * (a - w * b)

    d1, d2 = increment(real), increment(imag)
    return d1 + 1j * d2, np.conj(d1) + 1j * np.conj(d2)


def type_projections(j):
    """``(j+, j-) = (1 - i j, 1 + i j) / 2``."""
    j = _anchor_matrix(j)
    one = np.eye(len(j))
    return 0.5 * (one - 1j * j), 0.5 * (one + 1j * j)


def split(a, j):
    """``(A_m, A_u)``: anticommuting and commuting parts of ``A``."""
    j = _anchor_matrix(j)
    jaj = j @ a @ j
    return 0.5 * (a + jaj), 0.5 * (a - jaj)


def vertical_part(a, j):
    return split(a, j)[0]


def trace_pairing(a, b):
    """``<A, B> = Tr(A B) / 2``."""
    return 0.5 * float(np.trace(np.asarray(a) @ np.asarray(b)).real)


def vertical_basis(j):
    """Orthonormal basis of ``m_j`` for ``<A, B> = Tr(A B) / 2``.

    Returns
    -------
    list of VerticalMatrix
        ``n (n + 1)`` elements.
    """
    if not isinstance(j, CompatJ):
        j = CompatJ(j)
    jm = j.matrix
    m = len(jm)
    omega = symplectic_matrix(m // 2)
    rows = []
    for p in range(m):
        for q in range(m):
            e = np.zeros((m, m))
            e[p, q] = 1.0
            rows.append(
                np.concatenate(
                    [
                        (e.T @ omega + omega @ e).ravel(),
                        (e @ jm + jm @ e).ravel(),
                    ]
                )
            )
    kernel = linalg.null_space(np.array(rows).T)
    mats = [kernel[:, k].reshape(m, m) for k in range(kernel.shape[1])]
    gram = np.array([[trace_pairing(a, b) for b in mats] for a in mats])
    values, vectors = linalg.eigh(gram)
    basis = []
    for k in range(len(values)):
        combo = sum(c * a for c, a in zip(vectors[:, k], mats))
        basis.append(VerticalMatrix(combo / np.sqrt(values[k]), j))
    expected = (m // 2) * (m // 2 + 1)
    if len(basis) != expected:
        raise ValueError(
            "Vertical space has dimension {0}, expected {1}.".format(
                len(basis), expected
            )
        )
    return basis


def adjoint(c, j):
    """Adjoint with respect to the metric ``omega(., j .)``."""
    g = (j if isinstance(j, CompatJ) else CompatJ(j)).metric
    return np.linalg.solve(g, c.T @ g)


def random_symmetric(rng, n, norm):
    """Random complex symmetric matrix with the given operator norm."""
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    w = a + a.T
    return norm * w / np.linalg.norm(w, 2)


def random_structure(rng, n, radius=0.9):
    """Random compatible complex structure, Siegel norm below radius."""
    norm = radius * rng.uniform(0, 1)
    return fibre_to_matrix(random_symmetric(rng, n, norm))
