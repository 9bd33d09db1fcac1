# -*- coding: utf-8 -*-

"""The twistor bundle of compatible complex structures in chart form.

A point is a base point ``x`` with a compatible ``j``, a tangent is a
base vector ``X`` with a fibre velocity ``V = dj`` (``V j = -j V``). The
connection splits the tangent space: the horizontal lift of ``X`` has
fibre velocity ``-[A_x(X), j]``. The almost complex structure acts by
``j`` on the base part and by left multiplication with ``j`` on the
vertical part relative to that lift.

For ``n = 1`` the fibre is the unit disk with coordinate ``w`` and the
chart ``(x, y, Re w, Im w)`` is used for finite-difference checks.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import logging

import numpy as np

from oemof.twistor import connection
from oemof.twistor import exprfield
from oemof.twistor import plumbing
from oemof.twistor import symplin
from oemof.twistor.symplin import CompatJ


class TwistorPoint:
    """
    Parameters
    ----------
    x : array_like
        Base point in ``R^2n``.
    j : CompatJ
        Fibre element.
    """

    def __init__(self, x, j):
        self.x = np.asarray(x, dtype=float)
        self.j = j if isinstance(j, CompatJ) else CompatJ(j)
        if len(self.x) != len(self.j.matrix):
            raise ValueError("Base point and fibre have different dimension.")

    @classmethod
    def from_w(cls, x, w):
        """Point of the chart ``(x, w)``; ``w`` is a scalar for ``n = 1``."""
        return cls(x, symplin.fibre_to_matrix(w))

    @classmethod
    def from_chart(cls, q):
        """``q = (x, y, Re w, Im w)``."""
        q = np.asarray(q, dtype=float)
        return cls.from_w(q[:2], complex(q[2], q[3]))

    @property
    def n(self):
        return self.j.n

    @property
    def w(self):
        return self.j.w

    @property
    def z(self):
        return complex(self.x[0], self.x[1])

    def chart(self):
        w = self.w
        return np.array([self.x[0], self.x[1], w.real, w.imag])

    def __repr__(self):
        return "<TwistorPoint x={0} n={1}>".format(list(self.x), self.n)


class TwistorTangent:
    """A tangent vector ``(X, V)`` at a twistor point.

    ``V`` may be complex for complexified tangents.
    """

    def __init__(self, point, base, vertical, horizontal=False):
        self.point = point
        self.base = np.asarray(base)
        self.vertical = np.asarray(vertical)
        self.horizontal = horizontal

    def residual(self):
        """Largest violation of ``V in sp`` and ``V j = -j V``."""
        v = self.vertical
        return max(
            symplin.vertical_residual(v.real, self.point.j),
            symplin.vertical_residual(np.imag(v), self.point.j),
        )

    def chart(self):
        """Chart components ``(X, Re dw, Im dw)`` (``n = 1``, real)."""
        dw, _ = symplin.siegel_increment(self.point.w, self.vertical)
        return np.array([self.base[0], self.base[1], dw.real, dw.imag])

    @classmethod
    def from_chart(cls, point, vector):
        vector = np.asarray(vector, dtype=float)
        dw = complex(vector[2], vector[3])
        return cls(point, vector[:2], symplin.fibre_velocity(point.w, dw))

    def __sub__(self, other):
        return TwistorTangent(
            self.point,
            self.base - other.base,
            self.vertical - other.vertical,
        )

    def norm(self):
        return max(
            plumbing.max_abs(self.base), plumbing.max_abs(self.vertical)
        )


def _commutator(a, b):
    return a @ b - b @ a


def connection_matrix(conn, x, vector):
    """``A_x(X)`` for a (possibly complex) vector X."""
    return np.einsum("i,ikj->kj", vector, conn.christoffel(x))


def horizontal_lift(conn, p, vector):
    """The horizontal tangent over ``vector``.

    Examples
    --------
    >>> from oemof.twistor.connection import preset
    >>> p = TwistorPoint.from_w([0.2, 0.1], 0.3j)
    >>> u = horizontal_lift(preset("trivial"), p, [1.0, 0.0])
    >>> float(abs(u.vertical).max())
    0.0
    """
    vector = np.asarray(vector)
    a = connection_matrix(conn, p.x, vector)
    return TwistorTangent(
        p, vector, -_commutator(a, p.j.matrix), horizontal=True
    )


def vertical_component(conn, p, u):
    """Fibre velocity of ``u`` relative to the horizontal lift of its base."""
    a = connection_matrix(conn, p.x, u.base)
    return u.vertical + _commutator(a, p.j.matrix)


def acs_apply(conn, p, u, companion=False):
    """``J U`` for the twistor structure of ``conn``.

    ``companion=True`` applies the structure with the vertical part
    reversed, which is never integrable.
    """
    j = p.j.matrix
    relative = vertical_component(conn, p, u)
    sign = -1.0 if companion else 1.0
    lifted = horizontal_lift(conn, p, j @ u.base)
    return TwistorTangent(
        p, lifted.base, lifted.vertical + sign * j @ relative
    )


def companion_acs(conn, p, u):
    return acs_apply(conn, p, u, companion=True)


def chart_acs(conn, q, companion=False):
    """Matrix of the structure in the chart ``(x, y, Re w, Im w)``."""
    p = TwistorPoint.from_chart(q)
    columns = []
    for e in np.eye(4):
        u = TwistorTangent.from_chart(p, e)
        columns.append(acs_apply(conn, p, u, companion=companion).chart())
    return np.array(columns).T


def fibre_drift(conn, z, w):
    """``(P, Q)``: fibre components of the lift of ``dzb + w dz``.

    The horizontal lift of ``dzb + w dz`` is
    ``dzb + w dz + P dw + Q dwb``; ``P`` drives the holomorphy equations.
    """
    z = complex(z)
    p = TwistorPoint.from_w([z.real, z.imag], w)
    v = np.array([0.5 * (1 + w), 0.5j * (1 - w)])
    a = connection_matrix(conn, p.x, v)
    velocity = -_commutator(a, p.j.matrix)
    return symplin.siegel_increment(w, velocity)


def cubic_P(conn, z, w):
    """``-conj(beta) + 3 conj(alpha) w - 3 alpha w^2 + beta w^3``.

    Defined for ``omega0``-symplectic connections of ``R^2``.

    >>> from oemof.twistor.connection import from_alpha_beta
    >>> cubic_P(from_alpha_beta("1", "0"), 0, 0.5j)
    (0.75+1.5j)
    """
    if conn.density is not None:
        raise ValueError(
            "The cubic needs an omega0-symplectic connection; use"
            " fibre_drift for connections with a density."
        )
    inside, margin = symplin.siegel_membership(w)
    if not inside:
        raise symplin.MembershipError(
            "|w| >= 1 (margin {0:.3g}).".format(margin)
        )
    z = complex(z)
    alpha, beta = conn.alpha_beta([z.real, z.imag])
    return complex(
        -np.conj(beta)
        + 3 * np.conj(alpha) * w
        - 3 * alpha * w**2
        + beta * w**3
    )


def _torsion_value(conn, x, u, v):
    return (
        connection_matrix(conn, x, u) @ v - connection_matrix(conn, x, v) @ u
    )


def curvature_integrability_residual(conn, p, vectors=None):
    """Largest ``j+ T(j- X, j- Y)`` or ``j+ R(j- X, j- Y) j-`` entry.

    Parameters
    ----------
    vectors : tuple or None
        ``(X, Y)``; every pair of coordinate directions when omitted.
    """
    plus, minus = symplin.type_projections(p.j)
    value = connection.curvature(conn, p.x)
    dim = len(p.x)
    if vectors is None:
        basis = np.eye(dim)
        pairs = [(basis[a], basis[b]) for a in range(dim) for b in range(a)]
    else:
        pairs = [tuple(np.asarray(v) for v in vectors)]
    worst = 0.0
    for x_vec, y_vec in pairs:
        u, v = minus @ x_vec, minus @ y_vec
        torsion = plus @ _torsion_value(conn, p.x, u, v)
        curv = plus @ value.endomorphism(u, v) @ minus
        worst = max(worst, plumbing.max_abs(torsion), plumbing.max_abs(curv))
    return worst


def _as_chart_vector(u):
    if isinstance(u, TwistorTangent):
        return u.chart()
    return np.asarray(u, dtype=float)


def nijenhuis_residual(conn, p, u, v, h=1e-4, companion=False):
    """Norm of the Nijenhuis tensor of the chart structure on ``(U, V)``.

    ``U`` and ``V`` are extended as constant chart fields and the
    derivatives of the structure are fourth order central differences.
    """
    if p.n != 1:
        raise ValueError("The Nijenhuis check works in the n=1 chart.")
    q = p.chart()
    u = _as_chart_vector(u)
    v = _as_chart_vector(v)

    def acs(point):
        return chart_acs(conn, point, companion=companion)

    j = acs(q)
    ju, jv = j @ u, j @ v
    reach = 2 * h * max(
        np.abs(vec[2:]).sum() for vec in (u, v, ju, jv)
    )
    if abs(p.w) + reach >= 1:
        raise ValueError(
            "Difference stencil leaves the fibre disk at |w| = {0:.4f};"
            " use a smaller step or |w|.".format(abs(p.w))
        )

    def d(direction):
        return plumbing.derivative(acs, q, direction, h=h)

    n_uv = d(ju) @ v - d(jv) @ u + j @ (d(v) @ u) - j @ (d(u) @ v)
    return float(np.linalg.norm(n_uv))


def holo_function_residual(conn, f, z, w):
    """``max(|f_wb|, |f_zb + w f_z + P f_w|)`` at ``(z, w)``.

    Parameters
    ----------
    f : Expr or str
        Function in the twistor chart (``z``, ``zb``, ``w``, ``wb``).

    Examples
    --------
    >>> from oemof.twistor.connection import preset
    >>> holo_function_residual(preset("trivial"), "w*zb - z", 0.3, 0.2j)
    0.0
    """
    f = exprfield.as_field(f, 1, chart="twistor")
    z, w = complex(z), complex(w)
    drift, _ = fibre_drift(conn, z, w)
    fv = exprfield.eval_jet(f, [z.real, z.imag, w.real, w.imag], order=1)
    return float(
        max(
            abs(fv.dzb(1)),
            abs(fv.dzb(0) + w * fv.dz(0) + drift * fv.dz(1)),
        )
    )


def holo_section_residual(conn, section, z):
    """``|w_zb + w w_z - P(z, w(z))|`` for a section ``w(z)``.

    >>> from oemof.twistor.connection import preset
    >>> holo_section_residual(preset("trivial"), "zb/2", 0.1 + 0.2j)
    0.5
    """
    section = exprfield.as_field(section, 1)
    z = complex(z)
    fv = exprfield.eval_jet(section, [z.real, z.imag], order=1)
    w = complex(fv.value)
    inside, margin = symplin.siegel_membership(w)
    if not inside:
        raise symplin.MembershipError(
            "Section leaves the fibre disk at z = {0} (|w| = {1:.4f}).".format(
                z, abs(w)
            )
        )
    drift, _ = fibre_drift(conn, z, w)
    return float(abs(fv.dzb(0) + w * fv.dz(0) - drift))


def sigma_lift(sigma, p):
    """``Sigma(x, j) = (sigma(x), d sigma j d sigma^-1)``."""
    sigma = [exprfield.as_field(s, p.n) for s in sigma]
    y, jac = connection.evaluate_map(sigma, p.x)
    if abs(np.linalg.det(jac)) < 1e-12:
        raise ValueError(
            "Jacobian of sigma is singular at {0}.".format(list(p.x))
        )
    moved = CompatJ(jac @ p.j.matrix @ np.linalg.inv(jac)).check()
    return TwistorPoint(y, moved)


def sigma_holomorphy_residual(sigma, conn, pulled, p, h=1e-4):
    """``|d Sigma J - J' d Sigma|`` in the ``n = 1`` chart.

    ``pulled`` is the connection ``sigma . nabla``; the differential of
    the lift is taken by central differences.
    """
    sigma = [exprfield.as_field(s, 1) for s in sigma]

    def lift(q):
        return sigma_lift(sigma, TwistorPoint.from_chart(q)).chart()

    q = p.chart()
    jac = plumbing.gradient(lift, q, h=h).T
    image = lift(q)
    lhs = jac @ chart_acs(conn, q)
    rhs = chart_acs(pulled, image) @ jac
    return float(np.abs(lhs - rhs).max())


# ------------------------------------------------------------ inversion

#: ``sigma(z) = 1/z`` in real coordinates.
INVERSION = ("x/(x^2+y^2)", "-y/(x^2+y^2)")


def inversion_fibre(z, w):
    """The fibre coordinate ``w1 = zb^2 w / z^2`` over ``z1 = 1/z``.

    The differential of ``1/z`` sends ``d/dzb + w d/dz`` to a multiple of
    ``d/dzb1 + w1 d/dz1``.

    >>> abs(inversion_fibre(1 + 1j, 0.5) + 0.5) < 1e-15
    True
    """
    z = complex(z)
    if z == 0:
        raise ValueError("The inversion is not defined over z = 0.")
    return z.conjugate() ** 2 / z ** 2 * complex(w)


def inversion_pullback(f):
    """``f(1/z, zb^2 w / z^2)`` as a function in the twistor chart."""
    f = exprfield.as_field(f, 1, chart="twistor")
    names = exprfield.chart_names(1, chart="twistor")
    z, w = names["z"], names["w"]
    return exprfield.compose_complex(
        f, {0: 1 / z, 1: exprfield.conj(z) ** 2 / z ** 2 * w}
    )


def inversion_residual(conn, f, z, w):
    """Holomorphy residual of ``f`` pulled back through the inversion.

    ``f`` is read in the coordinates ``(z1, w1)`` over the other pole and
    ``conn`` is used in both charts. If ``conn`` is invariant under
    ``1/z`` and ``f`` is holomorphic at ``(1/z, w1)`` the residual
    vanishes.
    """
    return holo_function_residual(conn, inversion_pullback(f), z, w)


def inversion_equivariance_residual(conn, p, h=1e-4):
    """``|d Sigma J - J d Sigma|`` for ``sigma = 1/z`` and one connection."""
    if p.z == 0:
        raise ValueError("The inversion is not defined over z = 0.")
    return sigma_holomorphy_residual(INVERSION, conn, conn, p, h=h)


def random_point(rng, conn, wmax=0.95, x=None):
    """Twistor point over a sampled (or given) base point."""
    if x is None:
        x = conn.sample(rng, 1)[0]
    if conn.n == 1:
        w = plumbing.random_disk(rng, 1, wmax)[0]
        return TwistorPoint.from_w(x, w)
    return TwistorPoint(x, symplin.random_structure(rng, conn.n, wmax))


def random_tangent(rng, p):
    """Tangent with normal base part and vertical part in ``m_j``."""
    base = rng.normal(size=len(p.x))
    basis = symplin.vertical_basis(p.j)
    vertical = sum(rng.normal() * b.matrix for b in basis)
    return TwistorTangent(p, base, vertical)


def acs_injectivity_witness(conn1, conn2, rng, budget=1000, tol=1e-8):
    """A point and horizontal chart vector where the structures differ.

    Returns
    -------
    dict or None
        ``point``, ``tangent`` (base vector with zero fibre velocity) and
        the ``difference``; None if every sample agrees.
    """
    if conn1.n != conn2.n:
        raise ValueError("Connections live on different dimensions.")
    dim = conn1.dim
    for _ in range(budget):
        p = random_point(rng, conn1, wmax=0.9)
        if not conn2.contains(p.x):
            continue
        for vector in np.eye(dim):
            u = TwistorTangent(p, vector, np.zeros((dim, dim)))
            diff = (acs_apply(conn1, p, u) - acs_apply(conn2, p, u)).norm()
            if diff > tol:
                logging.debug("Found a witness at %s.", p)
                return {"point": p, "tangent": vector, "difference": diff}
    logging.info("No witness within a budget of %d points.", budget)
    return None
