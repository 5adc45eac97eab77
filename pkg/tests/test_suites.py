import json

import pytest

from evaluation import (
    ALL_SUITES,
    PROFILES,
    SelftestReport,
    SuiteResult,
    export_report_to_json,
    get_suite_by_id,
    get_suites_by_tag,
    run_all_suites,
    run_suite,
)

FAST_SUITES = ["fox_identity", "relation_f32", "relation_f33", "relation_f34", "epsilon", "ideal_derivative", "e2_roundtrip"]


def test_registry_is_consistent():
    ids = [suite.suite_id for suite in ALL_SUITES]
    assert len(ids) == len(set(ids))
    for suite in ALL_SUITES:
        assert set(suite.samples) == set(PROFILES)
        assert suite.samples["small"] <= suite.samples["full"]
    assert get_suite_by_id("missing") is None
    assert {suite.suite_id for suite in get_suites_by_tag("relations")} == {
        "relation_f32", "relation_f33", "relation_f34",
    }


@pytest.mark.parametrize("suite_id", [suite.suite_id for suite in ALL_SUITES])
def test_suite_passes(suite_id):
    result = run_suite(get_suite_by_id(suite_id), seed=42, profile="small", samples=3)
    assert result.ok, result.failures


def test_same_seed_same_report():
    suites = [get_suite_by_id(suite_id) for suite_id in FAST_SUITES]
    first = run_all_suites(seed=7, suites=suites)
    second = run_all_suites(seed=7, suites=suites)
    assert json.dumps(first.to_dict(), sort_keys=True) == json.dumps(second.to_dict(), sort_keys=True)


def test_distinct_seeds_same_verdicts():
    suites = [get_suite_by_id(suite_id) for suite_id in FAST_SUITES]
    assert run_all_suites(seed=1, suites=suites).all_passed
    assert run_all_suites(seed=2, suites=suites).all_passed


def test_failures_are_report_content():
    suite = get_suite_by_id("fox_identity")
    broken = type(suite)(suite.suite_id, suite.name, suite.description, suite.tags, suite.samples,
                         lambda rng, sizes: 1 / 0)
    result = run_suite(broken, samples=2)
    assert result.failed == 2
    assert "ZeroDivisionError" in result.failures[0]


FULL_SAMPLE_COUNTS = {
    "fox_identity": 200, "chain_b": 100, "chain_c": 100,
    "relation_f32": 200, "relation_f33": 200, "relation_f34": 200,
    "epsilon": 200, "ideal_derivative": 100, "rank_one": 50, "eta_shape": 50,
    "kernel_b": 100, "kernel_c": 100, "e2_roundtrip": 500, "corollary2": 50,
}


class TestFullProfile:
    def test_sizes_reach_acceptance_bounds(self):
        full = PROFILES["full"]
        assert full["fox_degree"] == 5
        assert full["word_length"] == 4
        assert full["kernel_length"] == 4
        assert full["param_degree"] == 2
        assert full["eps_degree"] == 4
        assert (full["e2_factors"], full["e2_degree"]) == (12, 3)

    def test_small_never_exceeds_full(self):
        for key, value in PROFILES["small"].items():
            assert value <= PROFILES["full"][key], key

    @pytest.mark.parametrize("suite_id, count", sorted(FULL_SAMPLE_COUNTS.items()))
    def test_sample_counts(self, suite_id, count):
        assert get_suite_by_id(suite_id).sample_count("full") == count

    @pytest.mark.parametrize("suite_id", ["chain_b", "chain_c", "kernel_b", "kernel_c"])
    def test_long_words_pass(self, suite_id):
        result = run_suite(get_suite_by_id(suite_id), seed=11, profile="full", samples=2)
        assert result.ok, result.failures


class TestReport:
    @pytest.fixture
    def report(self):
        return SelftestReport(seed=3, profile="small", results=[
            SuiteResult("a", "Suite A", ["x"], 4, 4, 0),
            SuiteResult("b", "Suite B", ["y"], 2, 1, 1, ["sample 1: boom"]),
        ])

    def test_totals(self, report):
        assert not report.all_passed
        assert report.total_samples == 6
        assert report.total_failed == 1

    def test_summary_frame(self, report):
        frame = report.summary_frame()
        assert list(frame["status"]) == ["PASS", "FAIL"]
        assert frame["samples"].sum() == 6

    def test_json_export(self, report, tmp_path):
        path = tmp_path / "nested" / "report.json"
        export_report_to_json(report, str(path))
        data = json.loads(path.read_text())
        assert data["total_failed"] == 1
        assert data["results"][1]["failures"] == ["sample 1: boom"]
