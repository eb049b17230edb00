"""Unit tests for report rendering."""

import json

import pytest
import yaml

from src.models.report import AxiomReport, VerificationReport
from src.services.free_extension import lift_hom
from src.services.reporter import (
    Reporter,
    check_summary,
    extension_summary,
    hom_summary,
    verification_summary,
)


@pytest.fixture
def failing_check():
    report = AxiomReport(subject="join-semilattice")
    report.add("commutative", 0, 1)
    return check_summary("broken", [report], [])


class TestReportModels:
    """Test AxiomReport and VerificationReport bookkeeping."""

    def test_axiom_report(self):
        report = AxiomReport(subject="s")
        report.add("S2", 2, 1, 0)
        report.add("S2", 3, 1, 0)
        report.add("S1", 0, 1)

        assert not report.ok
        assert report.axioms_violated() == ["S2", "S1"]
        assert report.first("S1").witness == (0, 1)
        assert report.first("S3") is None

    def test_verification_merge_keeps_order(self):
        total = VerificationReport("p")
        first = VerificationReport("p", instances_checked=2)
        first.fail("a", [1])
        second = VerificationReport("p", instances_checked=3)
        second.fail("b", [2])

        total.merge(first)
        total.merge(second)

        assert total.instances_checked == 5
        assert [f.instance for f in total.failures] == ["a", "b"]

    def test_findings_only_serialized_when_present(self):
        report = VerificationReport("p", instances_checked=1)

        assert "findings" not in report.to_json()
        assert report.to_json()["ok"] is True


class TestSummaries:
    """Test the dicts handed to the renderer."""

    def test_extension_summary(self, two_chain_extension):
        summary = extension_summary(two_chain_extension, "two-chain")

        assert summary["classes"] == 5
        assert summary["pairs"] == 8
        assert summary["upsilon"] == {"0": "[0,∅]", "1": "[1,∅]"}
        assert summary["class_table"][0] == {"class": "[0,∅]", "closure": "[0,{0}]", "members": 1}
        assert summary["class_table"][2]["members"] == 4

    def test_hom_summary(self, two_chain, two_chain_extension):
        lifted = lift_hom(two_chain_extension, two_chain, [0, 1])

        summary = hom_summary(lifted, "two-chain -> two-chain")

        assert summary["kind"] == "K-hom"
        assert summary["map"]["[1,{0}]"] == "1"

    def test_check_summary_fails(self, failing_check):
        assert failing_check["ok"] is False
        assert failing_check["axioms"][0]["violations"] == [{"axiom": "commutative", "witness": [0, 1]}]

    def test_verification_summary(self):
        assert verification_summary("s", [VerificationReport("p")])["ok"] is True


class TestReporter:
    """Test the three output formats."""

    def test_json_is_sorted(self, failing_check):
        text = Reporter.render(failing_check, "json")

        assert json.loads(text) == failing_check
        top_level = [line.split(":")[0].strip() for line in text.splitlines() if line.startswith('  "')]
        assert top_level == ['"axioms"', '"name"', '"ok"', '"properties"']
        assert text.endswith("\n")

    def test_yaml(self, failing_check):
        assert yaml.safe_load(Reporter.render(failing_check, "yaml")) == failing_check

    def test_text(self, failing_check):
        text = Reporter.render(failing_check, "text")

        assert text.splitlines()[:2] == ["name: broken", "ok: FAIL"]
        assert "        axiom: commutative" in text.splitlines()
        assert "properties: none" in text

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="Unknown format 'xml'"):
            Reporter.render({}, "xml")
