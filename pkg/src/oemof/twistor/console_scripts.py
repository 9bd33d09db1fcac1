# -*- coding: utf-8 -*-

"""Command line front end ``oemof_twistor``.

Every subcommand samples one group of identities, writes a verification
report to stdout (JSON with ``--json``, a fixed-width table otherwise) and
exits with 0 if all checks pass, 1 if a check fails and 2 on usage errors.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import argparse
import logging
import os
import sys

import numpy as np
from oemof.tools import logger

from oemof.twistor import __version__
from oemof.twistor import connection
from oemof.twistor import flatmaps
from oemof.twistor import helpers
from oemof.twistor import hermitian
from oemof.twistor import levi
from oemof.twistor import plumbing
from oemof.twistor import symplin
from oemof.twistor import twistor
from oemof.twistor.options import MetricParams
from oemof.twistor.options import Sampling
from oemof.twistor.options import Tolerances
from oemof.twistor.processing import VerificationReport

SPHERE_NOTE = (
    "The alpha-beta sphere connection has the drift"
    " P = {0:.6g} w (w zb - z) / (1 + |z|^2) from its horizontal lift; the"
    " coefficient 2 belongs to the Levi-Civita connection of the round"
    " metric (preset 'round_sphere')."
)

SPHERE_FIELD_NOTE = (
    " The Levi-Civita connection of the round metric (preset"
    " 'round_sphere') solves them."
)

INVERSION_NOTE = (
    "The lift of z -> 1/z does not commute with J for this connection;"
    " the round metric (preset 'round_sphere') is invariant under it."
)

#: Holomorphic functions of the round sphere twistor chart.
ROUND_SPHERE_FUNCTIONS = (
    "(z - zb*w)/(1 + zb^2*w)",
    "(z - zb*w)/(z^2 + w)",
    "((z - zb*w)/(1 + zb^2*w))^3 - 2*(z - zb*w)/(1 + zb^2*w)",
    "exp((z - zb*w)/(z^2 + w)/4)",
)


class UsageError(Exception):
    """Invalid combination of command line options."""


def _sweep(items, func):
    """``(count, max func(item))`` over a list of items."""
    items = list(items)
    worst = max((float(func(item)) for item in items), default=0.0)
    return len(items), worst


def _check(report, tol, name, anchor, key, evaluate, passed=None):
    """Run ``evaluate() -> (samples, residual)`` and record the outcome.

    ``passed(residual, threshold)`` replaces the default comparison. A
    ValueError is recorded as a failing check.
    """
    try:
        samples, residual = evaluate()
    except ValueError as e:
        report.add_failure(name, anchor, e)
        return None
    threshold = tol[key]
    outcome = None if passed is None else passed(residual, threshold)
    report.add_check(name, anchor, samples, residual, threshold, outcome)
    return residual


def _above(residual, threshold):
    return residual > threshold


def _require_n1(conn, command):
    if conn.n != 1:
        raise ValueError(
            "{0} works in the n=1 chart, got n={1}.".format(command, conn.n)
        )


def _points(rng, conn, count, wmax):
    return [twistor.random_point(rng, conn, wmax=wmax) for _ in range(count)]


# ---------------------------------------------------- analyze-connection


def analyze_connection(report, conn, args, sampling, tol, params):
    """Torsion, symplecticity and the algebra of the curvature."""
    points = conn.sample(sampling.rng(), sampling.samples)

    _check(
        report,
        tol,
        "torsion",
        "torsion free: A(X)Y = A(Y)X",
        "invariant",
        lambda: _sweep(
            points, lambda x: plumbing.max_abs(connection.torsion(conn, x))
        ),
    )
    _check(
        report,
        tol,
        "symplectic",
        "nabla omega = 0",
        "invariant",
        lambda: _sweep(
            points, lambda x: connection.symplectic_residual(conn, x)
        ),
    )
    values = [connection.curvature(conn, x) for x in points]
    anchors = {
        "antisymmetry": "R(X, Y) = -R(Y, X)",
        "pair_symmetry": "omega(R(X, Y)Z, T) symmetric in (Z, T)",
        "bianchi": "first Bianchi identity",
        "ricci_symmetry": "Ricci tensor is symmetric",
        "weyl_trace": "Weyl part is trace free",
    }
    for key, anchor in anchors.items():
        _check(
            report,
            tol,
            "curvature_" + key,
            anchor,
            "curvature",
            lambda key=key: _sweep(values, lambda v: v.residuals()[key]),
        )

    def relative_fd(x):
        exact = connection.curvature(conn, x).R
        approx = connection.curvature_fd(conn, x, h=sampling.step)
        return plumbing.max_abs(exact - approx) / max(
            1.0, plumbing.max_abs(exact)
        )

    _check(
        report,
        tol,
        "curvature_fd",
        "curvature from exact derivatives matches central differences",
        "curvature_fd",
        lambda: _sweep(points[:20], relative_fd),
    )
    weyl = max(plumbing.max_abs(v.W) for v in values)
    report.add_value("curvature_max", max(v.norm() for v in values))
    report.add_value("weyl_max", weyl)
    if conn.n == 1:
        _check(
            report,
            tol,
            "weyl_vanishes",
            "W = 0 in dimension two",
            "curvature",
            lambda: (len(values), weyl),
        )
    field = _sweep(
        points[:20], lambda x: connection.field_eq_residual(conn, x)
    )
    report.add_value("field_equation_residual", field[1])
    if conn.n > 1 and weyl <= tol["curvature"]:
        _check(
            report,
            tol,
            "field_equations",
            "Ricci type connections solve the field equations",
            "field_equations",
            lambda: field,
        )
    elif field[1] > tol["field_equations"]:
        report.add_note(
            "The cyclic sum of nabla r does not vanish; the connection does"
            " not solve the field equations."
            + (SPHERE_FIELD_NOTE if conn.label == "sphere" else "")
        )
    if conn.n == 1 and conn.density is None:
        alpha, beta = conn.alpha_beta(points[0])
        report.add_value("alpha_at_first_sample", complex(alpha))
        report.add_value("beta_at_first_sample", complex(beta))


# ------------------------------------------------------------ flat-solve


def _constant_form(conn, args):
    if args.abcd is not None:
        return flatmaps.ConstantOneForm.from_abcd(
            *helpers.parse_numbers(args.abcd, count=4)
        )
    if conn.kind == "constant_A":
        return flatmaps.ConstantOneForm(conn.source["A"])
    raise ValueError(
        "flat-solve needs --abcd or a connection of kind 'constant_A'."
    )


def flat_solve(report, conn, args, sampling, tol, params):
    """Flatness of a constant 1-form and its flattening map."""
    try:
        form = _constant_form(conn, args)
    except ValueError as e:
        report.add_failure("constant_form", "translation invariant 1-form", e)
        return
    flat_conn = form.connection(label="constant")
    points = flat_conn.sample(sampling.rng(), sampling.samples)
    wedge, pair = form.wedge_residual()
    count, curv = _sweep(
        points, lambda x: connection.curvature(flat_conn, x).norm()
    )
    report.add_value("wedge_residual", wedge)
    report.add_value("curvature_max", curv)
    classes = None
    if form.n == 1 and np.any(form.matrices):
        classes = flatmaps.ti_flat_classify(form)
        report.add_value("abcd", list(form.abcd()))
        for key, value in classes.items():
            report.add_value(key, value)
        if classes["excluded_point"]:
            report.add_note("[a:b:c:d] is the excluded point [0:0:1:0].")
    is_flat = wedge <= flatmaps.FLAT_TOL
    report.add_value("products_vanish", is_flat)
    if not is_flat:
        report.add_note(str(flatmaps.NotFlatError(pair, wedge)))
        _check(
            report,
            tol,
            "flat_criterion",
            "constant A is flat iff A(X)A(Y) = 0",
            "curvature",
            lambda: (count, curv),
            passed=_above,
        )
        if classes is not None:
            report.add_check(
                "curve_classification",
                "flat constant 1-forms lie on the twisted cubic",
                1,
                wedge,
                flatmaps.FLAT_TOL,
                passed=not classes["flat"],
            )
        return

    sigma = flatmaps.ti_flat_sigma(form)
    inverse = flatmaps.ti_flat_sigma_inverse(form)
    report.add_value("sigma", [str(e) for e in sigma])
    report.add_value("sigma_inverse", [str(e) for e in inverse])
    frame = flatmaps.ExponentialFrame(form)
    _check(
        report,
        tol,
        "wedge",
        "A(X)A(Y) = 0",
        "identity",
        lambda: (len(form.matrices) ** 2, wedge),
    )
    _check(
        report,
        tol,
        "flat",
        "R = 0 for A(X)A(Y) = 0",
        "algebra",
        lambda: (count, curv),
    )
    _check(
        report,
        tol,
        "jacobian_equation",
        "1 - A(sigma(x)) = Jac sigma(x)",
        "algebra",
        lambda: _sweep(
            points,
            lambda x: flatmaps.jacobian_equation_residual(sigma, frame, x),
        ),
    )
    _check(
        report,
        tol,
        "frame_parallel",
        "A = g dg^-1 for g = exp(-A(x))",
        "algebra",
        lambda: _sweep(
            points,
            lambda x: flatmaps.frame_flat_residual(flat_conn, frame, x),
        ),
    )

    def pulled_residual():
        trivial = connection.preset("trivial", n=form.n)
        pulled = connection.pullback(sigma, inverse, trivial)
        return _sweep(
            points[:20],
            lambda y: plumbing.max_abs(pulled.christoffel(y) - form.matrices),
        )

    _check(
        report,
        tol,
        "pullback",
        "sigma . nabla0 = nabla0 + A",
        "invariant",
        pulled_residual,
    )
    if classes is not None:
        report.add_check(
            "curve_classification",
            "flat constant 1-forms lie on the twisted cubic",
            1,
            wedge,
            flatmaps.FLAT_TOL,
            passed=classes["on_curve"] and classes["flat"],
        )


# ----------------------------------------------------------- twistor-acs


def twistor_acs(report, conn, args, sampling, tol, params):
    """Algebraic properties of the twistor almost complex structure."""
    rng = sampling.rng()
    points = _points(rng, conn, sampling.samples, sampling.wmax)
    pairs = [(p, twistor.random_tangent(rng, p)) for p in points]

    def square(item):
        p, u = item
        jju = twistor.acs_apply(conn, p, twistor.acs_apply(conn, p, u))
        return max(
            plumbing.max_abs(jju.base + u.base),
            plumbing.max_abs(jju.vertical + u.vertical),
        )

    def projection(item):
        p, u = item
        ju = twistor.acs_apply(conn, p, u)
        return plumbing.max_abs(ju.base - p.j.matrix @ u.base)

    def vertical(item):
        p, u = item
        return twistor.acs_apply(conn, p, u).residual()

    def lift(item):
        p, u = item
        h = twistor.horizontal_lift(conn, p, u.base)
        return plumbing.max_abs(twistor.vertical_component(conn, p, h))

    checks = [
        ("acs_square", "J^2 = -1", square),
        ("acs_projection", "d pi J = j d pi", projection),
        ("acs_vertical", "J preserves the vertical bundle", vertical),
        ("horizontal_lift", "horizontal lifts parallel Phi", lift),
    ]
    for name, anchor, func in checks:
        _check(
            report,
            tol,
            name,
            anchor,
            "algebra",
            lambda func=func: _sweep(pairs, func),
        )
    if conn.n != 1:
        return

    def drift(p):
        oracle, _ = twistor.fibre_drift(conn, p.z, p.w)
        return abs(twistor.cubic_P(conn, p.z, p.w) - oracle)

    if conn.density is None:
        _check(
            report,
            tol,
            "cubic_drift",
            "closed form cubic equals the horizontal lift drift",
            "holomorphy",
            lambda: _sweep(points, drift),
        )
    if conn.label in ("sphere", "round_sphere"):
        z, w = 0.5 + 0.3j, 0.4j
        oracle, _ = twistor.fibre_drift(conn, z, w)
        coefficient = oracle / (w * (w * np.conj(z) - z) / (1 + abs(z) ** 2))
        report.add_value("drift_coefficient", complex(coefficient))
        if conn.label == "sphere":
            report.add_note(SPHERE_NOTE.format(coefficient.real))
        _inversion_checks(report, conn, sampling, tol)


def _inversion_checks(report, conn, sampling, tol):
    """The lift of ``1/z`` over ``1/2 <= |z| <= 2``."""
    if conn.label not in ("sphere", "round_sphere"):
        return
    rng = sampling.rng(3)
    count = min(sampling.samples, 20)
    points = [
        twistor.TwistorPoint.from_w(plumbing.complex_to_real(z), w)
        for z, w in zip(
            plumbing.random_annulus(rng, count, 0.5, 2.0),
            plumbing.random_disk(rng, count, 0.2),
        )
    ]

    def equivariance(p):
        return twistor.inversion_equivariance_residual(
            conn, p, h=sampling.step
        )

    def functions(p):
        return max(
            twistor.inversion_residual(conn, f, p.z, p.w)
            for f in ROUND_SPHERE_FUNCTIONS
        )

    if conn.label == "sphere":
        worst = _sweep(points, equivariance)[1]
        report.add_value("inversion_equivariance", worst)
        if worst > tol["curvature_fd"]:
            report.add_note(INVERSION_NOTE)
        return
    _check(
        report,
        tol,
        "inversion_equivariance",
        "the lift of 1/z commutes with J",
        "curvature_fd",
        lambda: _sweep(points, equivariance),
    )
    _check(
        report,
        tol,
        "inversion_holomorphy",
        "holomorphic functions pull back through the lift of 1/z",
        "pullback_holomorphy",
        lambda: _sweep(points, functions),
    )


# --------------------------------------------------- check-integrability


def check_integrability(report, conn, args, sampling, tol, params):
    """Integrability through the curvature and through Nijenhuis."""
    rng = sampling.rng()
    points = _points(rng, conn, sampling.samples, sampling.wmax)
    from_curvature = _check(
        report,
        tol,
        "integrability",
        "j+ T(j- X, j- Y) = 0 and j+ R(j- X, j- Y) j- = 0",
        "curvature",
        lambda: _sweep(
            points, lambda p: twistor.curvature_integrability_residual(conn, p)
        ),
    )
    weyl = max(
        plumbing.max_abs(connection.curvature(conn, p.x).W) for p in points
    )
    report.add_value("weyl_max", weyl)
    if from_curvature is not None:
        report.add_check(
            "weyl_consistency",
            "J integrable iff W = 0",
            len(points),
            from_curvature,
            tol["curvature"],
            passed=(from_curvature > tol["curvature"])
            == (weyl > tol["curvature"]),
        )
    if conn.n != 1:
        return
    near = [p for p in points if abs(p.w) <= 0.9][:10]
    vectors = [(rng.normal(size=4), rng.normal(size=4)) for _ in near]

    def nijenhuis(companion):
        def value(item):
            p, (u, v) = item
            return twistor.nijenhuis_residual(
                conn, p, u, v, h=sampling.step, companion=companion
            )

        return _sweep(zip(near, vectors), value)

    _check(
        report,
        tol,
        "nijenhuis",
        "Nijenhuis tensor of J vanishes",
        "nijenhuis",
        lambda: nijenhuis(False),
    )
    _check(
        report,
        tol,
        "companion_nijenhuis",
        "the structure with reversed fibre is never integrable",
        "non_integrable",
        lambda: nijenhuis(True),
        passed=_above,
    )


# --------------------------------------------------------- holo-residual


def holo_residual(report, conn, args, sampling, tol, params):
    """Holomorphy residuals of a function or a section."""
    _require_n1(conn, "holo-residual")
    rng = sampling.rng()
    bases = conn.sample(rng, sampling.samples)
    if args.f is not None:
        fibres = plumbing.random_disk(rng, len(bases), sampling.wmax)
        report.add_value("f", args.f)
        _check(
            report,
            tol,
            "holomorphic_function",
            "f_wb = 0 and f_zb + w f_z + P f_w = 0",
            "holomorphy",
            lambda: _sweep(
                zip(bases, fibres),
                lambda item: twistor.holo_function_residual(
                    conn, args.f, plumbing.real_to_complex(item[0])[0], item[1]
                ),
            ),
        )
    if args.section is not None:
        report.add_value("section", args.section)
        _check(
            report,
            tol,
            "holomorphic_section",
            "w_zb + w w_z = P(z, w(z))",
            "holomorphy",
            lambda: _sweep(
                bases,
                lambda x: twistor.holo_section_residual(
                    conn, args.section, plumbing.real_to_complex(x)[0]
                ),
            ),
        )


# --------------------------------------------------------- metric-report


def _orthonormal_horizontal(params, p):
    g = params.t * p.j.metric
    x = np.array([1.0, 0.0]) / np.sqrt(g[0, 0])
    y = np.array([0.0, 1.0])
    y = y - (x @ g @ y) * x
    return x, y / np.sqrt(y @ g @ y)


def _sectional_checks(report, conn, sampling, tol, params, points):
    zero = np.zeros((2, 2))
    horizontal, vertical, fd = [], [], []
    for p in points:
        x, y = _orthonormal_horizontal(params, p)
        a, b = (m.matrix for m in symplin.vertical_basis(p.j))
        k_h = hermitian.sectional_curvature(params, p, x, y, zero, zero)
        k_v = hermitian.sectional_curvature(params, p, 0 * x, 0 * y, a, b)
        horizontal.append(k_h)
        vertical.append(k_v)
        for (x1, a1), (x2, a2), k in (
            ((x, zero), (y, zero), k_h),
            ((0 * x, a), (0 * y, b), k_v),
        ):
            u = hermitian.join_tangent(conn, p, x1, a1)
            v = hermitian.join_tangent(conn, p, x2, a2)
            oracle = hermitian.riemann_sectional_fd(conn, params, p, u, v)
            fd.append(abs(oracle - k))
    report.add_value("sectional_horizontal_min", min(horizontal))
    report.add_value("sectional_vertical_max", max(vertical))
    report.add_check(
        "sectional_signs",
        "horizontal planes positive, vertical planes non-positive",
        len(points),
        max(0.0, -min(horizontal), max(vertical)),
        0.0,
    )
    _check(
        report,
        tol,
        "sectional_fd",
        "sectional curvature formula matches the chart Riemann tensor",
        "sectional_fd",
        lambda: (len(points), max(fd)),
    )


def _kahler_checks(report, conn, sampling, tol, params, points, flat):
    """Totally geodesic fibres and a parallel J; asserted when flat."""
    rng = sampling.rng(2)

    def geodesic(p):
        a, b = rng.normal(size=2), rng.normal(size=2)
        return hermitian.fibre_geodesic_residual(
            conn, params, p, a, b, h=sampling.step
        )

    def parallel(p):
        u, v = rng.normal(size=4), rng.normal(size=4)
        return hermitian.acs_parallel_residual(
            conn, params, p, u, v, h=sampling.step
        )

    checks = (
        ("fibre_geodesic", "the fibres are totally geodesic", geodesic),
        ("acs_parallel", "J is parallel for Levi-Civita", parallel),
    )
    for name, anchor, func in checks:
        if flat:
            _check(
                report,
                tol,
                name,
                anchor,
                "levi_civita",
                lambda: _sweep(points, func),
            )
        else:
            report.add_value(name, _sweep(points, func)[1])


def metric_report(report, conn, args, sampling, tol, params):
    """The Hermitian structure, its Levi-Civita connection and curvature."""
    _require_n1(conn, "metric-report")
    rng = sampling.rng()
    points = _points(rng, conn, sampling.samples, sampling.wmax)
    few = points[:10]
    report.add_value("t", params.t)

    eigen = [
        np.linalg.eigvalsh(hermitian.chart_metric(conn, params, p.chart()))[0]
        for p in points
    ]
    report.add_value("metric_min_eigenvalue", min(eigen))
    report.add_check(
        "metric_positive",
        "the induced metric is positive definite",
        len(points),
        max(0.0, -min(eigen)),
        0.0,
        passed=min(eigen) > 0,
    )

    def orthogonal(p):
        h = twistor.horizontal_lift(conn, p, rng.normal(size=2))
        b = symplin.vertical_basis(p.j)[0].matrix
        v = hermitian.join_tangent(conn, p, np.zeros(2), b)
        return abs(hermitian.metric(conn, params, p, h, v).inner)

    _check(
        report,
        tol,
        "horizontal_vertical_orthogonal",
        "H is orthogonal to V",
        "identity",
        lambda: _sweep(points, orthogonal),
    )

    def compatible(p):
        u, v = twistor.random_tangent(rng, p), twistor.random_tangent(rng, p)
        ju = twistor.acs_apply(conn, p, u)
        jv = twistor.acs_apply(conn, p, v)
        plain = hermitian.metric(conn, params, p, u, v)
        moved = hermitian.metric(conn, params, p, ju, jv)
        swapped = hermitian.metric(conn, params, p, v, u)
        return max(
            abs(moved.symplectic - plain.symplectic),
            abs(swapped.inner - plain.inner),
            abs(plain.symplectic + swapped.symplectic),
        )

    _check(
        report,
        tol,
        "hermitian",
        "Omega is J-invariant, <,> symmetric",
        "hermitian",
        lambda: _sweep(points, compatible),
    )
    triples = [
        (p, [rng.normal(size=4) for _ in range(3)]) for p in points[:20]
    ]
    _check(
        report,
        tol,
        "dtau",
        "d tau = -Tr(R(X, Y)[P(Z), j] + cyclic) / 4",
        "fd_exterior",
        lambda: _sweep(
            triples,
            lambda item: hermitian.dtau_residual(
                conn, params, item[0], *item[1], h=sampling.step
            ),
        ),
    )
    closed = hermitian.closedness_check(
        conn,
        params,
        sampling.rng(1),
        samples=10,
        wmax=min(sampling.wmax, 0.8),
    )
    report.add_value("d_omega_max", closed["d_omega"])
    report.add_check(
        "closedness",
        "Omega is closed iff nabla is flat",
        10,
        closed["d_omega"],
        tol["flat_exterior"],
        passed=(
            closed["d_omega"] <= tol["flat_exterior"]
            and closed["curvature"] <= tol["curvature"]
        )
        or (
            closed["d_omega"] > tol["non_closed"]
            and closed["curvature"] > tol["curvature"]
        ),
    )

    def d_torsion(p):
        u, v = rng.normal(size=4), rng.normal(size=4)
        s, b = hermitian.D_torsion(conn, p, u, v, h=sampling.step)
        tu = twistor.TwistorTangent.from_chart(p, u)
        tv = twistor.TwistorTangent.from_chart(p, v)
        es, eb = hermitian.D_torsion_expected(conn, p, tu, tv)
        return max(plumbing.max_abs(s - es), plumbing.max_abs(b - eb))

    _check(
        report,
        tol,
        "D_torsion",
        "torsion of D = pi^*nabla - P",
        "levi_civita",
        lambda: _sweep(few, d_torsion),
    )

    def rd_type(p):
        u, v = twistor.random_tangent(rng, p), twistor.random_tangent(rng, p)
        return hermitian.rd_type_residual(conn, p, u, v)

    _check(
        report,
        tol,
        "RD_type",
        "R^D is of type (1,1)",
        "curvature",
        lambda: _sweep(points, rd_type),
    )

    def lc_torsion(p):
        u, v = rng.normal(size=4), rng.normal(size=4)
        return hermitian.levi_civita_torsion(
            conn, params, p, u, v, h=sampling.step
        )

    def lc_metric(p):
        u, v, w = (rng.normal(size=4) for _ in range(3))
        return hermitian.metric_compatibility_residual(
            conn, params, p, u, v, w, h=sampling.step
        )

    _check(
        report,
        tol,
        "levi_civita_torsion",
        "the Levi-Civita connection is torsion free",
        "levi_civita",
        lambda: _sweep(few, lc_torsion),
    )
    _check(
        report,
        tol,
        "levi_civita_metric",
        "the Levi-Civita connection preserves the metric",
        "levi_civita",
        lambda: _sweep(few, lc_metric),
    )
    flat = closed["curvature"] <= tol["curvature"]
    _kahler_checks(report, conn, sampling, tol, params, few, flat)
    if flat:
        _sectional_checks(report, conn, sampling, tol, params, points[:3])
    else:
        report.add_note(
            "The sectional curvature formula is checked on flat connections"
            " only."
        )


# ------------------------------------------------------------- levi-scan


def _exhaustion(args):
    if args.exhaustion == "oka":
        return levi.ExhaustionSpec.oka(args.eps, section=args.section)
    if args.exhaustion == "stein":
        return levi.ExhaustionSpec.stein(section=args.section)
    if args.phi is None:
        raise UsageError("--exhaustion custom needs --phi.")
    return levi.ExhaustionSpec(args.phi, section=args.section)


def levi_scan(report, conn, args, sampling, tol, params):
    """Levi form eigenvalue counts of an exhaustion over a grid."""
    spec = _exhaustion(args)
    report.add_value("psi", str(spec.psi))
    try:
        table, summary = levi.completeness_scan(
            spec, sampling, conn=conn, required=args.require
        )
    except ValueError as e:
        report.add_failure("levi_scan", "Levi form eigenvalue counts", e)
        return
    for key, value in summary.items():
        report.add_value(key, value)
    if args.verbose:
        report.add_value(
            "grid",
            table[["z", "w", "positive_count", "eigenvalues"]].to_dict(
                "records"
            ),
        )
    _check(
        report,
        tol,
        "levi_hermitian",
        "the Levi form is Hermitian",
        "hermitian",
        lambda: (summary["points"], summary["hermitian_residual"]),
    )
    rows = table.head(5)
    _check(
        report,
        tol,
        "fibre_restriction",
        "restriction of the Levi form to a fibre",
        "levi",
        lambda: _sweep(
            zip(rows["z"], rows["w"]),
            lambda item: levi.fibre_restriction_residual(spec, *item),
        ),
    )
    report.add_check(
        "completeness",
        "positive Levi eigenvalues of psi = h + phi o pi",
        summary["points"],
        max(0, summary["required"] - summary["min_positive_count"]),
        0.0,
        passed=summary["certificate"],
    )


# ------------------------------------------------------------ the parser

COMMANDS = {
    "analyze-connection": (analyze_connection, 0.95),
    "flat-solve": (flat_solve, 0.95),
    "twistor-acs": (twistor_acs, 0.95),
    "check-integrability": (check_integrability, 0.95),
    "holo-residual": (holo_residual, 0.95),
    "metric-report": (metric_report, 0.8),
    "levi-scan": (levi_scan, 0.95),
}


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--conn", metavar="FILE", help="connection spec")
    source.add_argument(
        "--preset", choices=connection.PRESETS, help="named connection"
    )
    common.add_argument("--seed", type=int, default=42)
    common.add_argument(
        "--tol", type=float, default=1.0, help="threshold multiplier"
    )
    common.add_argument("--t", type=float, default=1.0, help="metric scale")
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--json", action="store_true")
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--logfile", metavar="PATH")
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="oemof_twistor",
        description="Sampled verification of symplectic twistor geometry.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True
    for name, (func, wmax) in COMMANDS.items():
        sub = commands.add_parser(
            name, parents=[common], help=func.__doc__.splitlines()[0]
        )
        sub.add_argument("--wmax", type=float, default=wmax)
        sub.set_defaults(func=func)
        if name == "flat-solve":
            sub.add_argument("--abcd", metavar="A,B,C,D")
        elif name == "holo-residual":
            sub.add_argument("--f", metavar="EXPR", help="function of z, w")
            sub.add_argument("--section", metavar="EXPR", help="w(z)")
        elif name == "levi-scan":
            sub.add_argument("--base-grid", type=int, default=15)
            sub.add_argument("--fibre-grid", type=int, default=12)
            sub.add_argument(
                "--exhaustion",
                choices=levi.EXHAUSTIONS,
                default="oka",
            )
            sub.add_argument("--phi", metavar="EXPR")
            sub.add_argument("--section", metavar="EXPR", default="0")
            sub.add_argument("--eps", type=float, default=1.0)
            sub.add_argument("--require", type=int, default=1)
    return parser


def _connection(args):
    """The connection and the echo of its source."""
    if args.conn is not None:
        spec = helpers.load_spec(args.conn)
        return helpers.connection_from_spec(spec), {
            "conn": os.path.basename(args.conn),
            "file": spec,
        }
    name = args.preset or "trivial"
    return connection.preset(name), {"preset": name}


def _options(args):
    return {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("func", "command", "conn", "preset", "logfile")
    }


def _usage(parser, message):
    parser.print_usage(sys.stderr)
    sys.stderr.write("{0}: error: {1}\n".format(parser.prog, message))
    return 2


def run(argv=None):
    """Parse ``argv``, run one subcommand and print its report.

    Returns
    -------
    int
        The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    if args.command == "holo-residual" and args.f is None:
        if args.section is None:
            return _usage(parser, "holo-residual needs --f or --section.")
    try:
        tolerances = Tolerances(args.tol)
        sampling = Sampling(
            seed=args.seed,
            samples=args.samples,
            wmax=args.wmax,
            base_grid=getattr(args, "base_grid", 15),
            fibre_grid=getattr(args, "fibre_grid", 12),
        )
        params = MetricParams(args.t)
    except AttributeError as e:
        return _usage(parser, str(e))
    if args.logfile is not None:
        path = os.path.abspath(args.logfile)
        logger.define_logging(
            logpath=os.path.dirname(path),
            logfile=os.path.basename(path),
            screen_level=logging.CRITICAL,
            file_level=logging.DEBUG if args.verbose else logging.INFO,
        )
    echo = {"options": _options(args)}
    try:
        conn, source = _connection(args)
        echo.update(source)
        echo["connection"] = conn.describe()
    except ValueError as e:
        conn = None
        report = VerificationReport(args.command, echo, args.seed, tolerances)
        report.add_failure("connection", "connection spec", e)
    if conn is not None:
        report = VerificationReport(args.command, echo, args.seed, tolerances)
        logging.info("Running %s on %s.", args.command, conn)
        try:
            args.func(report, conn, args, sampling, tolerances, params)
        except UsageError as e:
            return _usage(parser, str(e))
        except ValueError as e:
            report.add_failure(args.command, "evaluation", e)
    report.finish()
    if args.json:
        print(report.to_json())
    else:
        print(report.to_text())
    logging.info(
        "%s finished with exit code %d.", args.command, report.exit_code
    )
    return report.exit_code


def main():
    sys.exit(run(sys.argv[1:]))
