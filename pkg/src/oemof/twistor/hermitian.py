# -*- coding: utf-8 -*-

"""Hermitian geometry of the twistor space.

Tangents are handled in split form ``(X, B)``: ``X`` is the base part and
``B = P(U)`` the vertical part as an element of ``m_j``, related to the
fibre velocity by ``[B, j] = V + [A(X), j]``. In split form the twistor
structure is ``(X, B) -> (j X, j B)`` and

* ``tau(U, V) = Tr(B_U j B_V) / 2``,
* ``Omega(U, V) = t omega(X_U, X_V) - tau(U, V)``,
* ``<U, V> = t omega(X_U, j X_V) + Tr(B_U B_V) / 2 = Omega(U, J V)``.

Covariant derivatives of fields are taken in the ``n = 1`` chart
``(x, y, Re w, Im w)`` with constant chart fields or callables
``q -> chart vector``.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import logging

import numpy as np

from oemof.twistor import connection
from oemof.twistor import exprfield
from oemof.twistor import plumbing
from oemof.twistor import symplin
from oemof.twistor.twistor import TwistorPoint
from oemof.twistor.twistor import TwistorTangent
from oemof.twistor.twistor import acs_apply
from oemof.twistor.twistor import chart_acs
from oemof.twistor.twistor import connection_matrix
from oemof.twistor.twistor import random_point


def _commutator(a, b):
    return a @ b - b @ a


class TwistorMetricValue:
    """``tau``, ``Omega`` and ``<,>`` evaluated on one pair of tangents."""

    def __init__(self, tau, symplectic, inner):
        self.tau = tau
        self.symplectic = symplectic
        self.inner = inner

    def __repr__(self):
        text = "<TwistorMetricValue tau={0:.6g} Omega={1:.6g} g={2:.6g}>"
        return text.format(self.tau, self.symplectic, self.inner)


class ChartField:
    """Vector field of the ``n = 1`` chart given by coefficient fields.

    >>> field = ChartField(["1", "0", "0", "0"])
    >>> field([0.1, 0.2, 0.0, 0.3]).tolist()
    [1.0, 0.0, 0.0, 0.0]
    """

    def __init__(self, components):
        if len(components) != 4:
            raise ValueError("A chart field needs four components.")
        self.components = [
            exprfield.as_field(c, 1, chart="twistor") for c in components
        ]

    def __call__(self, q):
        values = exprfield.eval_many(self.components, q, order=0)
        return np.array([fv.value.real for fv in values])


def constant_field(vector):
    vector = np.asarray(vector, dtype=float)
    return lambda q: vector


def _chart_vector(u):
    if isinstance(u, TwistorTangent):
        return u.chart()
    return np.asarray(u, dtype=float)


def _tangent(p, u):
    if isinstance(u, TwistorTangent):
        return u
    return TwistorTangent.from_chart(p, u)


# ------------------------------------------------------------ splitting


def vertical_projection(conn, p, u):
    """``P(U) = -(V + [A(X), j]) j / 2`` as an element of ``m_j``.

    Vanishes exactly on horizontal lifts; ``[P(U), j]`` is the covariant
    derivative of the tautological section along ``U``.

    Returns
    -------
    VerticalMatrix
    """
    j = p.j.matrix
    a = connection_matrix(conn, p.x, u.base)
    relative = u.vertical + _commutator(a, j)
    return symplin.VerticalMatrix(-0.5 * relative @ j, p.j)


def phi_derivative(conn, p, u):
    """``(pi^* nabla)_U Phi = V + [A(X), j]``."""
    a = connection_matrix(conn, p.x, u.base)
    return u.vertical + _commutator(a, p.j.matrix)


def split_tangent(conn, p, u):
    """``(X, P(U))`` of a tangent, vertical part as a plain matrix."""
    j = p.j.matrix
    a = connection_matrix(conn, p.x, u.base)
    b = -0.5 * (u.vertical + _commutator(a, j)) @ j
    return np.asarray(u.base), b


def join_tangent(conn, p, base, b):
    """Tangent with base part ``base`` and ``P = b``."""
    j = p.j.matrix
    a = connection_matrix(conn, p.x, base)
    return TwistorTangent(p, base, _commutator(b, j) - _commutator(a, j))


# --------------------------------------------------------------- metric


def tau(conn, p, u, v):
    """``tau(U, V) = Tr(P(U) j P(V)) / 2``."""
    _, bu = split_tangent(conn, p, u)
    _, bv = split_tangent(conn, p, v)
    return 0.5 * float(np.trace(bu @ p.j.matrix @ bv).real)


def metric(conn, params, p, u, v):
    """``tau``, ``Omega = t omega - tau`` and ``<U, V> = Omega(U, J V)``.

    Returns
    -------
    TwistorMetricValue
    """
    xu, bu = split_tangent(conn, p, u)
    xv, bv = split_tangent(conn, p, v)
    j = p.j.matrix
    omega = conn.omega(p.x)
    t = params.t
    tau_value = 0.5 * float(np.trace(bu @ j @ bv).real)
    return TwistorMetricValue(
        tau_value,
        t * float(xu @ omega @ xv) - tau_value,
        t * float(xu @ omega @ j @ xv)
        + 0.5 * float(np.trace(bu @ bv).real),
    )


def _chart_form(conn, params, q, which):
    p = TwistorPoint.from_chart(q)
    basis = [TwistorTangent.from_chart(p, e) for e in np.eye(4)]
    out = np.empty((4, 4))
    for a, u in enumerate(basis):
        for b, v in enumerate(basis):
            out[a, b] = getattr(metric(conn, params, p, u, v), which)
    return out


def chart_metric(conn, params, q):
    """Gram matrix of ``<,>`` on the chart basis at ``q``."""
    return _chart_form(conn, params, q, "inner")


def chart_symplectic(conn, params, q):
    return _chart_form(conn, params, q, "symplectic")


def chart_tau(conn, params, q):
    return _chart_form(conn, params, q, "tau")


def exterior_derivative(form, q, h=1e-4):
    """``dF[a, b, c]`` of a chart 2-form ``q -> F(q)``."""
    q = np.asarray(q, dtype=float)
    df = plumbing.gradient(form, q, h=h)
    return df - df.transpose(1, 0, 2) + df.transpose(1, 2, 0)


def _trilinear(tensor, u, v, w):
    return float(np.einsum("abc,a,b,c->", tensor, u, v, w))


# ------------------------------------------------------------ identities


def dtau_residual(conn, params, p, u, v, w, h=1e-4):
    """``|d tau(U, V, W) + Tr(R(X, Y) [P(Z), j] + cyclic) / 4|``.

    The exterior derivative is taken by central differences on constant
    chart fields.
    """
    q = p.chart()
    tangents = [_tangent(p, x) for x in (u, v, w)]
    vectors = [t.chart() for t in tangents]
    lhs = _trilinear(
        exterior_derivative(lambda y: chart_tau(conn, params, y), q, h),
        *vectors
    )
    value = connection.curvature(conn, p.x)
    j = p.j.matrix
    rhs = 0.0
    for first, second, third in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        r = value.endomorphism(tangents[first].base, tangents[second].base)
        _, b = split_tangent(conn, p, tangents[third])
        rhs += np.trace(r @ _commutator(b, j)).real
    return abs(lhs + 0.25 * rhs)


def closedness_check(conn, params, rng, samples=20, wmax=0.8, h=1e-4):
    """Largest ``|d Omega|`` on chart basis triples and largest ``|R|``.

    ``Omega`` is closed exactly for flat connections, so the check
    passes when both maxima are small or both are not.
    """
    worst_domega, worst_r = 0.0, 0.0
    for _ in range(samples):
        p = random_point(rng, conn, wmax=wmax)
        domega = exterior_derivative(
            lambda y: chart_symplectic(conn, params, y), p.chart(), h
        )
        worst_domega = max(worst_domega, plumbing.max_abs(domega))
        worst_r = max(worst_r, connection.curvature(conn, p.x).norm())
    logging.info(
        "Closedness over %d points: |d Omega| <= %.3g, |R| <= %.3g",
        samples,
        worst_domega,
        worst_r,
    )
    return {"d_omega": worst_domega, "curvature": worst_r}


# ------------------------------------------------------------ connection D


def _split_field(conn, field):
    def split(q):
        p = TwistorPoint.from_chart(q)
        base, b = split_tangent(
            conn, p, TwistorTangent.from_chart(p, field(q))
        )
        return np.concatenate([base, b.ravel()])

    return split


def _as_field(field):
    if callable(field):
        return field
    return constant_field(field)


def D_split(conn, p, u, field, h=1e-4):
    """Split form ``(s, B)`` of ``D_U W``."""
    field = _as_field(field)
    u = _tangent(p, u)
    split = _split_field(conn, field)
    q = p.chart()
    here = split(q)
    d = plumbing.derivative(split, q, u.chart(), h=h)
    s, b = here[:2], here[2:].reshape(2, 2)
    xu, bu = split_tangent(conn, p, u)
    a = connection_matrix(conn, p.x, xu)
    return (
        d[:2] + a @ s - bu @ s,
        d[2:].reshape(2, 2) + _commutator(a, b) - _commutator(bu, b),
    )


def D_derivative(conn, p, u, field, h=1e-4):
    """``D_U W`` for ``D = pi^* nabla - P``.

    Parameters
    ----------
    u : TwistorTangent or chart vector
    field : callable or chart vector
        ``q -> chart vector``; constant when a vector is given.

    Returns
    -------
    TwistorTangent
    """
    s, b = D_split(conn, p, u, field, h=h)
    return join_tangent(conn, p, s, b)


def D_phi_residual(conn, p, u):
    """Largest entry of ``D_U Phi = V + [A(X), j] - [P(U), j]``."""
    _, b = split_tangent(conn, p, u)
    res = phi_derivative(conn, p, u) - _commutator(b, p.j.matrix)
    return plumbing.max_abs(res)


def D_torsion(conn, p, u, v, h=1e-4):
    """Torsion of ``D`` on two constant chart fields, in split form."""
    u, v = _tangent(p, u), _tangent(p, v)
    su, bu = D_split(conn, p, u, v.chart(), h=h)
    sv, bv = D_split(conn, p, v, u.chart(), h=h)
    return su - sv, bu - bv


def D_torsion_expected(conn, p, u, v):
    """``(-(P(U) X_V - P(V) X_U), R(X_U, X_V)_m)``."""
    xu, bu = split_tangent(conn, p, u)
    xv, bv = split_tangent(conn, p, v)
    r = connection.curvature(conn, p.x).endomorphism(xu, xv)
    return -(bu @ xv - bv @ xu), symplin.vertical_part(r, p.j)


def curvature_D(conn, p, u, v):
    """``R^D = R - R_m - [P(U), P(V)]`` on the pulled back tangent bundle."""
    xu, bu = split_tangent(conn, p, u)
    xv, bv = split_tangent(conn, p, v)
    r = connection.curvature(conn, p.x).endomorphism(xu, xv)
    return r - symplin.vertical_part(r, p.j) - _commutator(bu, bv)


def rd_type_residual(conn, p, u, v):
    """Largest entry of the (0,2) part of ``R^D`` on ``(U, V)``."""
    ju, jv = acs_apply(conn, p, u), acs_apply(conn, p, v)
    res = (
        curvature_D(conn, p, u, v)
        - curvature_D(conn, p, ju, jv)
        + 1j * (curvature_D(conn, p, ju, v) + curvature_D(conn, p, u, jv))
    )
    return plumbing.max_abs(res)


def holomorphic_field_residual(conn, p, u, field, h=1e-4):
    """``D_X Y + J D_{JX} Y - 2 P(Y) X`` in split form.

    Vanishes for every ``X`` exactly when the field ``Y`` is holomorphic.
    """
    field = _as_field(field)
    u = _tangent(p, u)
    j = p.j.matrix
    ju = acs_apply(conn, p, u)
    s1, b1 = D_split(conn, p, u, field, h=h)
    s2, b2 = D_split(conn, p, ju, field, h=h)
    y = TwistorTangent.from_chart(p, field(p.chart()))
    _, by = split_tangent(conn, p, y)
    s = s1 + j @ s2 - 2 * by @ u.base
    b = b1 + j @ b2
    return max(plumbing.max_abs(s), plumbing.max_abs(b))


# ------------------------------------------------------ Levi-Civita


def S_v(params, p, x_vec, y_vec, omega=None):
    """The vertical part of the Levi-Civita correction on horizontals.

    ``-(t/2)(omega(X,.) jY + omega(jY,.) X + omega(jX,.) Y + omega(Y,.) jX)``

    Symmetric in ``(X, Y)`` with values in ``m_j``.
    """
    if omega is None:
        omega = symplin.symplectic_matrix(p.n)
    j = p.j.matrix
    x_vec, y_vec = np.asarray(x_vec), np.asarray(y_vec)
    jx, jy = j @ x_vec, j @ y_vec
    return -0.5 * params.t * (
        np.outer(jy, x_vec @ omega)
        + np.outer(x_vec, jy @ omega)
        + np.outer(y_vec, jx @ omega)
        + np.outer(jx, y_vec @ omega)
    )


def S_h(conn, params, p, x_vec, b):
    """Horizontal ``s`` with ``<s, Y> = <R(X, Y)_m, B> / 2`` for every Y."""
    value = connection.curvature(conn, p.x)
    dim = len(p.x)
    rhs = np.empty(dim)
    for k, e in enumerate(np.eye(dim)):
        r = symplin.vertical_part(value.endomorphism(x_vec, e), p.j)
        rhs[k] = 0.25 * np.trace(r @ b).real
    gram = params.t * conn.omega(p.x) @ p.j.matrix
    return np.linalg.solve(gram, rhs)


def levi_civita_split(conn, params, p, u, field, h=1e-4):
    """Split form of the Levi-Civita derivative ``D^_U W``."""
    field = _as_field(field)
    u = _tangent(p, u)
    w = TwistorTangent.from_chart(p, field(p.chart()))
    s, b = D_split(conn, p, u, field, h=h)
    xu, bu = split_tangent(conn, p, u)
    xw, bw = split_tangent(conn, p, w)
    r = connection.curvature(conn, p.x).endomorphism(xu, xw)
    s = (
        s
        - bw @ xu
        + S_h(conn, params, p, xu, bw)
        + S_h(conn, params, p, xw, bu)
    )
    b = (
        b
        - 0.5 * symplin.vertical_part(r, p.j)
        + S_v(params, p, xu, xw, omega=conn.omega(p.x))
    )
    return s, b


def levi_civita(conn, params, p, u, field, h=1e-4):
    """``D^_U W = D_U W - P(W) X_U - R(X_U, X_W)_m / 2 + S(U, W)``.

    Returns
    -------
    TwistorTangent
    """
    s, b = levi_civita_split(conn, params, p, u, field, h=h)
    return join_tangent(conn, p, s, b)


def levi_civita_torsion(conn, params, p, u, v, h=1e-4):
    """``D^_U V - D^_V U`` on constant chart fields."""
    u, v = _tangent(p, u), _tangent(p, v)
    su, bu = levi_civita_split(conn, params, p, u, v.chart(), h=h)
    sv, bv = levi_civita_split(conn, params, p, v, u.chart(), h=h)
    return max(plumbing.max_abs(su - sv), plumbing.max_abs(bu - bv))


def metric_compatibility_residual(conn, params, p, u, v, w, h=1e-4):
    """``|U <V, W> - <D^_U V, W> - <V, D^_U W>|`` on constant fields."""
    u, v, w = (_tangent(p, x) for x in (u, v, w))
    q = p.chart()
    dg = plumbing.derivative(
        lambda y: chart_metric(conn, params, y), q, u.chart(), h=h
    )
    lhs = float(v.chart() @ dg @ w.chart())
    dv = levi_civita(conn, params, p, u, v.chart(), h=h)
    dw = levi_civita(conn, params, p, u, w.chart(), h=h)
    rhs = metric(conn, params, p, dv, w).inner
    rhs += metric(conn, params, p, v, dw).inner
    return abs(lhs - rhs)


def fibre_geodesic_residual(conn, params, p, a, b, h=1e-4):
    """Horizontal part of ``D^_A B`` for vertical ``A`` and ``B``.

    ``a`` and ``b`` are fibre velocities ``(Re dw, Im dw)``; ``B`` is
    extended as a constant chart field, which stays tangent to the fibres.
    Zero when the fibres are totally geodesic.
    """
    u = np.concatenate([np.zeros(2), np.asarray(a, dtype=float)])
    field = np.concatenate([np.zeros(2), np.asarray(b, dtype=float)])
    s, _ = levi_civita_split(conn, params, p, u, field, h=h)
    return plumbing.max_abs(s)


def acs_parallel_residual(conn, params, p, u, v, h=1e-4):
    """Largest chart entry of ``(D^_U J) V = D^_U (J V) - J D^_U V``.

    ``V`` is extended as a constant chart field.
    """
    u, v = _tangent(p, u), _tangent(p, v)
    vector = v.chart()

    def turned(q):
        return chart_acs(conn, q) @ vector

    q = p.chart()
    moved = levi_civita(conn, params, p, u, turned, h=h).chart()
    plain = levi_civita(conn, params, p, u, vector, h=h).chart()
    return plumbing.max_abs(moved - chart_acs(conn, q) @ plain)


# ------------------------------------------------ sectional curvature


def _hnorm2(params, g, x_vec):
    return params.t * float(x_vec @ g @ x_vec)


def _adjoint_norm2(c, g):
    return 0.5 * float(np.trace(np.linalg.solve(g, c.T @ g) @ c))


def sectional_curvature(params, p, x_vec, y_vec, a, b, tol=1e-9):
    """Sectional curvature of the plane ``{X + A, Y + B}`` (flat case).

    ``X``, ``Y`` are horizontal parts, ``A``, ``B`` vertical parts in
    ``m_j``; the pair has to be orthonormal.

    Raises
    ------
    ValueError
        If the pair is not orthonormal.
    """
    g = p.j.metric
    omega = symplin.symplectic_matrix(p.n)
    t = params.t
    x_vec, y_vec = np.asarray(x_vec, float), np.asarray(y_vec, float)
    a, b = np.asarray(a, float), np.asarray(b, float)

    def inner(x1, a1, x2, a2):
        return t * float(x1 @ g @ x2) + symplin.trace_pairing(a1, a2)

    gram = [
        inner(x_vec, a, x_vec, a) - 1,
        inner(y_vec, b, y_vec, b) - 1,
        inner(x_vec, a, y_vec, b),
    ]
    if max(abs(v) for v in gram) > tol:
        raise ValueError(
            "The plane basis is not orthonormal (Gram defect {0:.3g}).".format(
                max(abs(v) for v in gram)
            )
        )
    c = _commutator(a, b)
    w_xy = float(x_vec @ omega @ y_vec)
    h_xy = t * float(x_vec @ g @ y_vec)
    return (
        0.5
        * (
            _hnorm2(params, g, x_vec) * _hnorm2(params, g, y_vec)
            + 3 * t**2 * w_xy**2
            - h_xy**2
        )
        + _hnorm2(params, g, b @ x_vec - a @ y_vec)
        + 2 * t * float((c @ x_vec) @ g @ y_vec)
        - _adjoint_norm2(c, g)
    )


def chart_christoffel(conn, params, q, h=1e-4):
    """``Gamma[a, b, c]`` of the chart metric by central differences."""
    q = np.asarray(q, dtype=float)
    g = chart_metric(conn, params, q)
    dg = plumbing.gradient(lambda y: chart_metric(conn, params, y), q, h=h)
    # lowered[d, b, c] = (d_b g_dc + d_c g_db - d_d g_bc) / 2
    lowered = 0.5 * (
        dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg
    )
    return np.einsum("ad,dbc->abc", np.linalg.inv(g), lowered)


def riemann_sectional_fd(conn, params, p, u, v, h=1e-3):
    """Sectional curvature of ``span(U, V)`` from the chart metric.

    Second derivatives of the metric come from nested central
    differences; a numerical oracle for :func:`sectional_curvature`.
    """
    q = p.chart()
    cu, cv = _chart_vector(u), _chart_vector(v)
    gamma = chart_christoffel(conn, params, q, h=h)
    dgamma = plumbing.gradient(
        lambda y: chart_christoffel(conn, params, y, h=h), q, h=h
    )
    # riemann[a, b, c, d] = (R(e_c, e_d) e_b)^a
    riemann = (
        np.einsum("cadb->abcd", dgamma)
        - np.einsum("dacb->abcd", dgamma)
        + np.einsum("ace,edb->abcd", gamma, gamma)
        - np.einsum("ade,ecb->abcd", gamma, gamma)
    )
    g = chart_metric(conn, params, q)
    r_uvvu = np.einsum("abcd,b,c,d,ae,e->", riemann, cv, cu, cv, g, cu)
    area = (cu @ g @ cu) * (cv @ g @ cv) - (cu @ g @ cv) ** 2
    return float(r_uvvu / area)
