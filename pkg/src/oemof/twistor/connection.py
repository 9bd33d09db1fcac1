# -*- coding: utf-8 -*-

"""Symplectic connections ``nabla = nabla0 + A`` on ``R^2n``.

The coefficients are kept as Christoffel symbols ``Gamma^k_ij`` (with
``nabla_{d_i} d_j = sum_k Gamma^k_ij d_k``), one coefficient field each.
``christoffel`` returns the endomorphism valued 1-form as an array
``A[i, k, j] = Gamma^k_ij``, so ``A[i]`` is the matrix of ``A(d_i)``.

Curvature follows ``R(X, Y) = d_X A(Y) - d_Y A(X) + [A(X), A(Y)]``.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import logging

import numpy as np

from oemof.twistor import exprfield
from oemof.twistor import plumbing
from oemof.twistor.exprfield import Const
from oemof.twistor.symplin import symplectic_matrix

PRESETS = ("trivial", "sphere", "round_sphere", "log_example")

KINDS = ("alpha_beta", "real_coeffs", "constant_A", "general_gamma")


class SymplecticConnection:
    """
    Parameters
    ----------
    n : int
        Half the dimension of the base.
    gamma : nested sequence of Expr
        ``gamma[k][i][j]`` is the field ``Gamma^k_ij``.
    kind : str
        The coefficient source, one of :data:`KINDS`.
    source : dict
        The coefficient fields the connection was built from.
    domain : Domain or None
        Working domain predicate.
    density : Expr or None
        ``lambda`` if the connection preserves ``lambda * omega0`` instead
        of ``omega0`` (only ``n = 1``).
    box : sequence of (low, high)
        Sampling box of the working domain.
    label : str
    """

    def __init__(
        self,
        n,
        gamma,
        kind="general_gamma",
        source=None,
        domain=None,
        density=None,
        box=None,
        label=None,
    ):
        dim = 2 * n
        self.n = n
        self.dim = dim
        self.gamma = tuple(
            tuple(
                tuple(exprfield.as_expr(gamma[k][i][j]) for j in range(dim))
                for i in range(dim)
            )
            for k in range(dim)
        )
        self.kind = kind
        self.source = source or {}
        self.domain = domain
        self.density = density
        if density is not None and n != 1:
            raise ValueError("Density forms are only supported for n=1.")
        self.box = box if box is not None else [(-1.0, 1.0)] * dim
        self.label = label or kind
        self._flat = [
            self.gamma[k][i][j]
            for k in range(dim)
            for i in range(dim)
            for j in range(dim)
        ]

    def __repr__(self):
        return "<SymplecticConnection '{0}' n={1}>".format(self.label, self.n)

    @property
    def is_trivial(self):
        return all(
            isinstance(e, Const) and e.value == 0 for e in self._flat
        )

    def contains(self, x):
        return self.domain is None or self.domain.contains(x)

    def sample(self, rng, count):
        """Random points of the sampling box inside the domain."""
        return plumbing.random_box(rng, count, self.box, self.domain)

    def jets(self, x, order=2):
        """``A``, ``dA[c] = d_c A`` and ``ddA[c, d] = d_c d_d A`` at x."""
        dim = self.dim
        values = exprfield.eval_many(self._flat, x, order=order)
        shape = (dim, dim, dim)
        a = np.empty(shape)
        da = np.empty((dim,) + shape) if order >= 1 else None
        dda = np.empty((dim, dim) + shape) if order >= 2 else None
        index = 0
        for k in range(dim):
            for i in range(dim):
                for j in range(dim):
                    fv = values[index]
                    a[i, k, j] = fv.value.real
                    if order >= 1:
                        da[:, i, k, j] = fv.gradient.real
                    if order >= 2:
                        dda[:, :, i, k, j] = fv.hessian.real
                    index += 1
        return a, da, dda

    def christoffel(self, x):
        return self.jets(x, order=0)[0]

    def density_jet(self, x):
        """``(lambda, d lambda)`` at x; ``(1, 0)`` without density."""
        if self.density is None:
            return 1.0, np.zeros(self.dim)
        fv = exprfield.eval_jet(self.density, x, order=1)
        return fv.value.real, fv.gradient.real

    def omega(self, x):
        """Matrix of the preserved symplectic form at x."""
        return self.density_jet(x)[0] * symplectic_matrix(self.n)

    def alpha_beta(self, x):
        """The complex coefficients at x (``n = 1``)."""
        if self.n != 1:
            raise ValueError("alpha and beta are defined for n=1 only.")
        a_matrix = self.christoffel(x)
        b = a_matrix[0, 0, 0]
        c = a_matrix[0, 0, 1]
        a = -a_matrix[0, 1, 0]
        d = a_matrix[1, 0, 1]
        return real_to_alpha_beta(a, b, c, d)

    def describe(self):
        """Plain data echo of the connection for reports."""
        out = {"label": self.label, "kind": self.kind, "n": self.n}
        for key, value in sorted(self.source.items()):
            out[key] = value if isinstance(value, (int, float)) else str(value)
        if self.domain is not None:
            out["domain"] = str(self.domain)
        if self.density is not None:
            out["density"] = str(self.density)
        return out


# ------------------------------------------------------------ builders


def _real(e):
    if isinstance(e, exprfield.Expr):
        return exprfield.real_part(e)
    return np.real(e)


def _imag(e):
    if isinstance(e, exprfield.Expr):
        return exprfield.imag_part(e)
    return np.imag(e)


def real_to_alpha_beta(a, b, c, d):
    """Real coefficients to ``(alpha, beta)``.

    Works on numbers and on coefficient fields alike.

    >>> alpha, beta = real_to_alpha_beta(0, 1, 0, 0)
    >>> alpha.real, beta.real
    (-0.25, 0.75)
    """
    alpha = -(b + d) / 4 - 1j * (a + c) / 4
    beta = (3 * b - d) / 4 - 1j * (3 * c - a) / 4
    return alpha, beta


def alpha_beta_to_real(alpha, beta):
    """``(alpha, beta)`` to the real coefficients ``(a, b, c, d)``."""
    a = _imag(beta) - 3 * _imag(alpha)
    b = _real(beta) - _real(alpha)
    c = -_imag(alpha) - _imag(beta)
    d = -3 * _real(alpha) - _real(beta)
    return a, b, c, d


def _gamma_from_real(a, b, c, d):
    return [[[b, c], [c, d]], [[-a, -b], [-b, -c]]]


def _domain(domain, n=1):
    if domain is None or isinstance(domain, exprfield.Domain):
        return domain
    return exprfield.Domain.parse(domain, n=n)


def from_real_coeffs(a, b, c, d, domain=None, box=None, label=None):
    """Connection of the real coefficients (``n = 1``)."""
    a, b, c, d = (exprfield.as_field(v) for v in (a, b, c, d))
    return SymplecticConnection(
        1,
        _gamma_from_real(a, b, c, d),
        kind="real_coeffs",
        source={"a": a, "b": b, "c": c, "d": d},
        domain=_domain(domain),
        box=box,
        label=label,
    )


def from_alpha_beta(alpha, beta, domain=None, box=None, label=None):
    """Connection with ``nabla_dz dz = alpha dz + beta dzb`` (``n = 1``).

    Examples
    --------
    >>> conn = from_alpha_beta("0", "0")
    >>> float(abs(conn.christoffel([0.3, 0.1])).max())
    0.0
    """
    alpha = exprfield.as_field(alpha)
    beta = exprfield.as_field(beta)
    a, b, c, d = alpha_beta_to_real(alpha, beta)
    return SymplecticConnection(
        1,
        _gamma_from_real(a, b, c, d),
        kind="alpha_beta",
        source={"alpha": alpha, "beta": beta},
        domain=_domain(domain),
        box=box,
        label=label,
    )


def from_constant_a(a_matrices, box=None, label=None):
    """Translation invariant connection ``nabla0 + A`` with constant A.

    ``a_matrices[i]`` is the matrix of ``A(d_i)``.
    """
    a_matrices = np.asarray(a_matrices, dtype=float)
    dim = a_matrices.shape[0]
    if a_matrices.shape != (dim, dim, dim) or dim % 2:
        raise ValueError("Expected an array of shape (2n, 2n, 2n).")
    gamma = [
        [[Const(a_matrices[i, k, j]) for j in range(dim)] for i in range(dim)]
        for k in range(dim)
    ]
    return SymplecticConnection(
        dim // 2,
        gamma,
        kind="constant_A",
        source={"A": a_matrices.tolist()},
        box=box,
        label=label,
    )


def constant_from_symmetric(s):
    """Constant 1-form whose lowered tensor is the symmetric ``s``.

    ``A(e_i) e_j = Omega s[i, j, :]`` is torsion free and symplectic for
    every totally symmetric ``s``.
    """
    s = np.asarray(s, dtype=float)
    dim = s.shape[0]
    omega = symplectic_matrix(dim // 2)
    a = np.empty((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            a[i, :, j] = omega @ s[i, j, :]
    return a


def random_symmetric_tensor(rng, dim, scale=1.0):
    """Totally symmetric 3-tensor with normal entries."""
    t = rng.normal(scale=scale, size=(dim, dim, dim))
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return sum(t.transpose(p) for p in perms) / 6


def from_general_gamma(
    gamma,
    n,
    density=None,
    domain=None,
    box=None,
    label=None,
    validate=True,
    tol=1e-9,
):
    """Connection from Christoffel symbol fields ``gamma[k][i][j]``."""
    dim = 2 * n
    fields = [
        [
            [exprfield.as_field(gamma[k][i][j], n=n) for j in range(dim)]
            for i in range(dim)
        ]
        for k in range(dim)
    ]
    conn = SymplecticConnection(
        n,
        fields,
        kind="general_gamma",
        source={},
        domain=_domain(domain, n),
        density=None if density is None else exprfield.as_field(density, n),
        box=box,
        label=label,
    )
    if validate:
        res = check_invariants(conn, np.random.default_rng(0), samples=5)
        if res["torsion"] > tol or res["symplectic"] > tol:
            raise ValueError(
                "Christoffel symbols do not define a symplectic connection"
                " (torsion {0:.3g}, symplectic residual {1:.3g}).".format(
                    res["torsion"], res["symplectic"]
                )
            )
    return conn


def preset(name, n=1):
    """A named connection.

    ``trivial`` (any ``n``), ``sphere`` (``alpha = -2 zb / (1 + |z|^2)``),
    ``round_sphere`` (Levi-Civita connection of ``4|dz|^2/(1+|z|^2)^2``)
    and ``log_example`` (``a = c = 0``, ``b = -1/(2x)``, ``d = x``).
    """
    if name == "trivial":
        dim = 2 * n
        conn = from_constant_a(np.zeros((dim, dim, dim)), label="trivial")
        return conn
    if n != 1:
        raise ValueError("Preset '{0}' is defined for n=1.".format(name))
    if name == "sphere":
        return from_alpha_beta(
            "-2*zb/(1+abs2(z))",
            "0",
            box=[(-2.0, 2.0), (-2.0, 2.0)],
            label="sphere",
        )
    if name == "round_sphere":
        g1 = "(-2*x/(1+x^2+y^2))"
        g2 = "(2*y/(1+x^2+y^2))"
        gamma = [
            [[g1, "-" + g2], ["-" + g2, "-" + g1]],
            [[g2, g1], [g1, "-" + g2]],
        ]
        return from_general_gamma(
            gamma,
            1,
            density="4/(1+abs2(z))^2",
            box=[(-2.0, 2.0), (-2.0, 2.0)],
            label="round_sphere",
        )
    if name == "log_example":
        return from_real_coeffs(
            "0",
            "-1/(2*x)",
            "0",
            "x",
            domain="x > 0",
            box=[(0.5, 3.0), (-2.0, 2.0)],
            label="log_example",
        )
    raise ValueError(
        "Unknown preset '{0}', use one of {1}.".format(name, PRESETS)
    )


# ----------------------------------------------------------- curvature


def christoffel(conn, x):
    """The matrices ``A_x(d_i)`` stacked along the first axis."""
    return conn.christoffel(x)


def torsion(conn, x):
    """``T[a, b] = A(d_a) d_b - A(d_b) d_a``."""
    a = conn.christoffel(x)
    return a.transpose(0, 2, 1) - a.transpose(2, 0, 1)


def symplectic_residual(conn, x):
    """Largest entry of ``A^T Omega + Omega A - d log(lambda) Omega``."""
    a = conn.christoffel(x)
    omega = symplectic_matrix(conn.n)
    lam, dlam = conn.density_jet(x)
    worst = 0.0
    for i in range(conn.dim):
        res = a[i].T @ omega + omega @ a[i] - dlam[i] / lam * omega
        worst = max(worst, float(np.abs(res).max()))
    return worst


def lowered(conn, x):
    """``A_(i, j, l) = omega(A(d_i) d_j, d_l)``."""
    a = conn.christoffel(x)
    return np.einsum("ikj,kl->ijl", a, conn.omega(x))


def _curvature_from_jets(a, da):
    return (
        da
        - da.transpose(1, 0, 2, 3)
        + np.einsum("aij,bjk->abik", a, a)
        - np.einsum("bij,ajk->abik", a, a)
    )


class CurvatureValue:
    """Curvature data at one point.

    Attributes
    ----------
    R : ndarray
        ``R[a, b]`` is the endomorphism ``R(d_a, d_b)``.
    lowered : ndarray
        ``omega(R(d_a, d_b) d_c, d_d)``.
    ricci : ndarray
        ``r(d_a, d_b) = Tr(Z -> R(d_a, Z) d_b)``.
    E, W : ndarray
        The Ricci-type part and the Weyl part, ``lowered = E + W``.
    """

    def __init__(self, r_tensor, omega):
        dim = len(omega)
        n = dim // 2
        self.R = r_tensor
        self.omega = omega
        self.lowered = np.einsum("abkc,kd->abcd", r_tensor, omega)
        self.ricci = np.einsum("akkb->ab", r_tensor)
        o, r = omega, self.ricci
        self.E = (
            -1.0
            / (2 * (n + 1))
            * (
                2 * np.einsum("ab,cd->abcd", o, r)
                + np.einsum("ac,bd->abcd", o, r)
                + np.einsum("ad,bc->abcd", o, r)
                - np.einsum("bc,ad->abcd", o, r)
                - np.einsum("bd,ac->abcd", o, r)
            )
        )
        self.W = self.lowered - self.E

    def endomorphism(self, x_vec, y_vec):
        """``R(X, Y)`` for arbitrary (possibly complex) vectors."""
        return np.einsum("a,b,abij->ij", x_vec, y_vec, self.R)

    def norm(self):
        return float(np.abs(self.R).max())

    def weyl_trace(self):
        """Contraction of ``W`` in the Ricci slots."""
        inverse = np.linalg.inv(self.omega)
        return np.einsum("dc,acbd->ab", inverse, self.W)

    def residuals(self):
        """The algebraic identities every curvature tensor satisfies."""
        # moved[a, b, c, k] = (R(d_a, d_b) d_c)^k
        moved = self.R.transpose(0, 1, 3, 2)
        cyclic = (
            moved
            + moved.transpose(1, 2, 0, 3)
            + moved.transpose(2, 0, 1, 3)
        )
        worst_bianchi = np.abs(cyclic).max()
        low = self.lowered
        return {
            "antisymmetry": float(
                np.abs(low + low.transpose(1, 0, 2, 3)).max()
            ),
            "pair_symmetry": float(
                np.abs(low - low.transpose(0, 1, 3, 2)).max()
            ),
            "bianchi": float(worst_bianchi),
            "ricci_symmetry": float(np.abs(self.ricci - self.ricci.T).max()),
            "weyl_trace": float(np.abs(self.weyl_trace()).max()),
        }


def curvature(conn, x):
    """Curvature of ``conn`` at ``x``.

    Returns
    -------
    CurvatureValue
    """
    a, da, _ = conn.jets(x, order=1)
    return CurvatureValue(_curvature_from_jets(a, da), conn.omega(x))


def curvature_fd(conn, x, h=1e-4):
    """Curvature with finite-difference derivatives of the coefficients."""
    a = conn.christoffel(x)
    da = plumbing.gradient(conn.christoffel, x, h=h)
    return _curvature_from_jets(a, da)


def ricci_decomposition(conn, x):
    """``(r, E, W)`` at ``x``."""
    value = curvature(conn, x)
    return value.ricci, value.E, value.W


def covariant_ricci(conn, x):
    """``nabla r[c, a, b] = (nabla_{d_c} r)(d_a, d_b)``."""
    a, da, dda = conn.jets(x, order=2)
    r_tensor = _curvature_from_jets(a, da)
    dr_tensor = (
        dda
        - dda.transpose(0, 2, 1, 3, 4)
        + np.einsum("caij,bjk->cabik", da, a)
        + np.einsum("aij,cbjk->cabik", a, da)
        - np.einsum("cbij,ajk->cabik", da, a)
        - np.einsum("bij,cajk->cabik", a, da)
    )
    ricci = np.einsum("akkb->ab", r_tensor)
    dricci = np.einsum("cakkb->cab", dr_tensor)
    return (
        dricci
        - np.einsum("cka,kb->cab", a, ricci)
        - np.einsum("ckb,ak->cab", a, ricci)
    )


def field_eq_residual(conn, x):
    """Largest cyclic sum ``(nabla_X r)(Y, Z) + cyclic``.

    Zero for connections of Ricci type.
    """
    nr = covariant_ricci(conn, x)
    cyclic = nr + nr.transpose(1, 2, 0) + nr.transpose(2, 0, 1)
    return float(np.abs(cyclic).max())


def check_invariants(conn, rng, samples=20, points=None):
    """Worst torsion and symplectic residuals over sampled points."""
    if points is None:
        points = conn.sample(rng, samples)
    worst = {"torsion": 0.0, "symplectic": 0.0, "sp_curvature": 0.0}
    omega = symplectic_matrix(conn.n)
    for x in points:
        worst["torsion"] = max(
            worst["torsion"], float(np.abs(torsion(conn, x)).max())
        )
        worst["symplectic"] = max(
            worst["symplectic"], symplectic_residual(conn, x)
        )
        rt = curvature(conn, x).R
        # R(X, Y) in sp(omega) makes R^T omega symmetric; sp(lambda omega)
        # is the same algebra.
        sp = np.einsum("abki,kj->abij", rt, omega)
        worst["sp_curvature"] = max(
            worst["sp_curvature"],
            float(np.abs(sp - sp.transpose(0, 1, 3, 2)).max()),
        )
    logging.debug(
        "Invariants of %s over %d points: %s", conn, len(points), worst
    )
    return worst


# ------------------------------------------------------------ pullback


def _jacobian_exprs(components, dim):
    return [[exprfield.diff(components[a], i) for i in range(dim)]
            for a in range(dim)]


def pullback(sigma, sigma_inverse, conn, box=None, domain=None, label=None):
    """The connection ``sigma . nabla`` in the coordinates ``y = sigma(x)``.

    Parameters
    ----------
    sigma : sequence of Expr
        Real components of the diffeomorphism in the ``x`` coordinates.
    sigma_inverse : sequence of Expr
        Real components of its inverse in the ``y`` coordinates.
    conn : SymplecticConnection

    Returns
    -------
    SymplecticConnection
        With coefficients
        ``dy^k/dx^c (Gamma^c_ab dx^a/dy^i dx^b/dy^j + d2x^c/dy^i dy^j)``.
    """
    dim = conn.dim
    if sigma is None or sigma_inverse is None:
        raise ValueError("pullback needs sigma and its inverse.")
    sigma = [exprfield.as_field(s, conn.n) for s in sigma]
    inverse = [exprfield.as_field(s, conn.n) for s in sigma_inverse]
    if len(sigma) != dim or len(inverse) != dim:
        raise ValueError(
            "sigma needs {0} real components.".format(dim)
        )
    at_inverse = dict(enumerate(inverse))
    jac_inv = _jacobian_exprs(inverse, dim)
    hess_inv = [
        [[exprfield.diff(jac_inv[c][i], j) for j in range(dim)]
         for i in range(dim)]
        for c in range(dim)
    ]
    jac = [
        [exprfield.substitute(e, at_inverse) for e in row]
        for row in _jacobian_exprs(sigma, dim)
    ]
    gamma = [
        [
            [exprfield.substitute(conn.gamma[c][a][b], at_inverse)
             for b in range(dim)]
            for a in range(dim)
        ]
        for c in range(dim)
    ]
    new = []
    for k in range(dim):
        plane = []
        for i in range(dim):
            row = []
            for j in range(dim):
                total = Const(0)
                for c in range(dim):
                    inner = hess_inv[c][i][j]
                    for a in range(dim):
                        for b in range(dim):
                            inner = inner + (
                                gamma[c][a][b] * jac_inv[a][i] * jac_inv[b][j]
                            )
                    total = total + jac[k][c] * inner
                row.append(total)
            plane.append(row)
        new.append(plane)
    density = None
    if conn.density is not None:
        det = jac_inv[0][0] * jac_inv[1][1] - jac_inv[0][1] * jac_inv[1][0]
        density = exprfield.substitute(conn.density, at_inverse) * det
    logging.info("Pulled back %s through a diffeomorphism.", conn)
    return SymplecticConnection(
        conn.n,
        new,
        kind="general_gamma",
        source={"pulled_back": conn.label},
        domain=domain,
        density=density,
        box=box if box is not None else conn.box,
        label=label or "pullback({0})".format(conn.label),
    )


def evaluate_map(components, x, order=1):
    """Value and Jacobian of a map given by real component fields."""
    values = exprfield.eval_many(components, x, order=order)
    y = np.array([fv.value.real for fv in values])
    if order == 0:
        return y, None
    return y, np.array([fv.gradient.real for fv in values])


def naturality_residual(sigma, conn, pulled, x):
    """``|R'(J d_a, J d_b) J - J R(d_a, d_b)|`` with ``J = Jac sigma(x)``."""
    sigma = [exprfield.as_field(s, conn.n) for s in sigma]
    y, jac = evaluate_map(sigma, x)
    if abs(np.linalg.det(jac)) < 1e-12:
        raise ValueError("Jacobian of sigma is singular at {0}.".format(x))
    r_old = curvature(conn, x).R
    r_new = curvature(pulled, y).R
    lhs = np.einsum("ca,db,cdij,jk->abik", jac, jac, r_new, jac)
    rhs = np.einsum("ij,abjk->abik", jac, r_old)
    return float(np.abs(lhs - rhs).max())
