# -*- coding: utf-8 -

"""Tests of verification reports and their JSON layout.

SPDX-License-Identifier: MIT
"""

import json

import numpy as np
import pytest

from oemof.twistor import processing
from oemof.twistor.options import Tolerances
from oemof.twistor.processing import VerificationReport


class TestReport:
    @classmethod
    def setup_class(cls):
        cls.report = VerificationReport(
            "analyze-connection", {"preset": "sphere"}, 42, Tolerances()
        )
        cls.report.add_check("torsion", "nabla is torsion free", 10, 0, 1e-9)
        cls.report.add_check(
            "companion", "negative control", 5, 0.3, 1e-3, passed=True
        )
        cls.report.add_value("alpha", 1 + 2j)
        cls.report.add_value("grid", np.array([0.5, np.inf]))
        cls.report.add_note("Reported only.")
        cls.data = json.loads(cls.report.to_json())

    def test_passed(self):
        assert self.report.passed
        assert self.report.exit_code == 0
        assert self.report.failed_checks() == []

    def test_layout(self):
        assert self.data["schema"] == "stl-report/1"
        assert list(self.data) == sorted(processing.REPORT_KEYS)
        assert processing.validate_report(self.data)

    def test_values_are_plain(self):
        assert self.data["values"]["alpha"] == {"re": 1.0, "im": 2.0}
        assert self.data["values"]["grid"] == [0.5, "inf"]

    def test_echo(self):
        assert self.data["spec"] == {"preset": "sphere"}
        assert self.data["seed"] == 42
        assert self.data["tolerances"]["algebra"] == 1e-10
        assert self.data["notes"] == ["Reported only."]

    def test_table(self):
        table = self.report.table()
        assert list(table.columns) == processing.COLUMNS
        assert table["check"].tolist() == ["torsion", "companion"]

    def test_text(self):
        text = self.report.to_text()
        assert text.splitlines()[0] == "analyze-connection  (seed 42)"
        assert "PASS" in text
        assert text.endswith("overall: PASS")
        assert "note: Reported only." in text


def test_failing_check_fails_the_report():
    report = VerificationReport("demo", {}, 1, Tolerances())
    report.add_check("ok", "zero", 1, 0.0, 1e-9)
    report.add_check("bad", "large", 1, 1.0, 1e-9)
    assert not report.passed
    assert report.exit_code == 1
    assert report.failed_checks() == ["bad"]
    assert report.to_text().endswith("overall: FAIL")


def test_failure_record():
    report = VerificationReport("demo", {}, 1, Tolerances())
    report.add_failure("cubic", "the drift is a cubic", ValueError("boom"))
    data = json.loads(report.to_json())
    record = data["checks"][0]
    assert record["pass"] is False
    assert record["max_residual"] == "nan"
    assert record["message"] == "ValueError: boom"
    assert processing.validate_report(data)


def test_empty_report_table():
    report = VerificationReport("demo", {}, 1, Tolerances())
    assert report.table().empty
    assert report.passed


class TestValidation:
    @classmethod
    def setup_class(cls):
        report = VerificationReport("demo", {}, 1, Tolerances())
        report.add_check("ok", "zero", 1, 0.0, 1e-9)
        cls.text = report.to_json()

    def data(self):
        return json.loads(self.text)

    def test_unknown_schema(self):
        data = self.data()
        data["schema"] = "stl-report/2"
        with pytest.raises(ValueError, match="schema"):
            processing.validate_report(data)

    def test_unknown_field(self):
        data = self.data()
        data["extra"] = 1
        with pytest.raises(ValueError, match="unknown \\['extra'\\]"):
            processing.validate_report(data)

    def test_missing_field(self):
        data = self.data()
        del data["notes"]
        with pytest.raises(ValueError, match="missing \\['notes'\\]"):
            processing.validate_report(data)

    def test_check_record_fields(self):
        data = self.data()
        del data["checks"][0]["message"]
        with pytest.raises(ValueError, match="Check record"):
            processing.validate_report(data)

    def test_conjunction(self):
        data = self.data()
        data["passed"] = False
        with pytest.raises(ValueError, match="conjunction"):
            processing.validate_report(data)

    def test_strip_wall_time(self):
        stripped = json.loads(processing.strip_wall_time(self.text))
        assert "wall_time" not in stripped
        assert stripped["checks"] == self.data()["checks"]
