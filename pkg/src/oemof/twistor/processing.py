# -*- coding: utf-8 -*-

"""Collecting sampled residuals into verification reports.

A report holds one record per check. Records are kept as a pandas
DataFrame for the human readable table, the JSON form follows the
versioned ``stl-report/1`` layout.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import json
import logging
import math
import time

import numpy as np
import pandas as pd

SCHEMA = "stl-report/1"

REPORT_KEYS = (
    "schema",
    "command",
    "spec",
    "seed",
    "tolerances",
    "checks",
    "values",
    "notes",
    "passed",
    "wall_time",
)

CHECK_KEYS = (
    "check",
    "anchor",
    "samples",
    "max_residual",
    "threshold",
    "pass",
    "message",
)

COLUMNS = ["check", "anchor", "samples", "max_residual", "threshold", "pass"]


def _plain(value):
    """JSON friendly copy of numpy scalars, arrays and complex numbers."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": _plain(value.real), "im": _plain(value.imag)}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return str(value)
        return value
    return value


class VerificationReport:
    """Outcome of one verification command.

    Parameters
    ----------
    command : str
        Name of the subcommand.
    spec : dict
        Echo of the input (connection spec, preset and options).
    seed : int
    tolerances : Tolerances
        The effective thresholds are echoed in the report.

    Examples
    --------
    >>> from oemof.twistor.options import Tolerances
    >>> report = VerificationReport("demo", {}, 42, Tolerances())
    >>> report.add_check("zero", "a zero residual", 3, 0.0, 1e-9)
    >>> report.passed
    True
    """

    def __init__(self, command, spec, seed, tolerances):
        self.command = command
        self.spec = spec
        self.seed = seed
        self.tolerances = tolerances.table()
        self.records = []
        self.values = {}
        self.notes = []
        self._start = time.perf_counter()
        self.wall_time = None

    def add_check(
        self,
        check,
        anchor,
        samples,
        max_residual,
        threshold,
        passed=None,
        message=None,
    ):
        """Record a check; passes if ``max_residual <= threshold``.

        An explicit ``passed`` is used for checks that need a residual
        above a bound, e.g. negative controls.
        """
        max_residual = float(max_residual)
        if passed is None:
            passed = bool(max_residual <= threshold)
        record = {
            "check": check,
            "anchor": anchor,
            "samples": int(samples),
            "max_residual": max_residual,
            "threshold": float(threshold),
            "pass": bool(passed),
            "message": message,
        }
        self.records.append(record)
        level = logging.DEBUG if passed else logging.WARNING
        logging.log(
            level,
            "Check %s: residual %.3g, threshold %.3g.",
            check,
            max_residual,
            threshold,
        )

    def add_failure(self, check, anchor, error):
        """Record a check that could not be evaluated."""
        self.records.append(
            {
                "check": check,
                "anchor": anchor,
                "samples": 0,
                "max_residual": float("nan"),
                "threshold": float("nan"),
                "pass": False,
                "message": "{0}: {1}".format(type(error).__name__, error),
            }
        )
        logging.error("Check %s failed with %s", check, error)

    def add_value(self, name, value):
        """Store an informational value that does not affect passing."""
        self.values[name] = _plain(value)

    def add_note(self, text):
        self.notes.append(text)

    @property
    def passed(self):
        return all(r["pass"] for r in self.records)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def finish(self):
        self.wall_time = time.perf_counter() - self._start
        return self

    def table(self):
        """One row per check.

        Returns
        -------
        pandas.DataFrame
        """
        if not self.records:
            return pd.DataFrame(columns=COLUMNS)
        return pd.DataFrame(self.records)[COLUMNS]

    def failed_checks(self):
        return [r["check"] for r in self.records if not r["pass"]]

    def to_dict(self):
        if self.wall_time is None:
            self.finish()
        return {
            "schema": SCHEMA,
            "command": self.command,
            "spec": _plain(self.spec),
            "seed": self.seed,
            "tolerances": _plain(self.tolerances),
            "checks": [_plain(r) for r in self.records],
            "values": self.values,
            "notes": list(self.notes),
            "passed": self.passed,
            "wall_time": self.wall_time,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self):
        """Fixed-width table with a header and the overall outcome."""
        lines = [
            "{0}  (seed {1})".format(self.command, self.seed),
            "",
        ]
        table = self.table()
        if len(table):
            table = table.assign(
                max_residual=table["max_residual"].map("{0:.3e}".format),
                threshold=table["threshold"].map("{0:.1e}".format),
                **{"pass": table["pass"].map({True: "PASS", False: "FAIL"})}
            )
            lines.append(table.to_string(index=False))
        for key in sorted(self.values):
            lines.append("{0:<32} {1}".format(key, self.values[key]))
        for r in self.records:
            if r["message"]:
                lines.append("{0}: {1}".format(r["check"], r["message"]))
        for note in self.notes:
            lines.append("note: {0}".format(note))
        lines.append("")
        lines.append("overall: {0}".format("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def validate_report(data):
    """Raise ValueError if ``data`` does not follow ``stl-report/1``.

    >>> from oemof.twistor.options import Tolerances
    >>> report = VerificationReport("demo", {}, 1, Tolerances())
    >>> validate_report(json.loads(report.to_json()))
    True
    """
    if data.get("schema") != SCHEMA:
        raise ValueError(
            "Unknown report schema {0!r}.".format(data.get("schema"))
        )
    extra = set(data) - set(REPORT_KEYS)
    missing = set(REPORT_KEYS) - set(data)
    if extra or missing:
        raise ValueError(
            "Report fields differ: unknown {0}, missing {1}.".format(
                sorted(extra), sorted(missing)
            )
        )
    for record in data["checks"]:
        if set(record) != set(CHECK_KEYS):
            raise ValueError(
                "Check record fields differ: {0}.".format(sorted(record))
            )
    if data["passed"] != all(r["pass"] for r in data["checks"]):
        raise ValueError("Overall pass is not the conjunction of checks.")
    return True


def strip_wall_time(text):
    """JSON report text without the wall time, for comparisons."""
    data = json.loads(text)
    data.pop("wall_time", None)
    return json.dumps(data, indent=2, sort_keys=True)
