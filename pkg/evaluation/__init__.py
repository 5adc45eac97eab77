"""
Self-test system.

Property suites exercising every layer of the algebra engine on seeded random
instances, plus report types with tabular and JSON summaries.
"""

from evaluation.report import (
    SuiteResult,
    SelftestReport,
    export_report_to_json,
)

from evaluation.suites import (
    PROFILES,
    PropertySuite,
    ALL_SUITES,
    run_suite,
    run_all_suites,
    get_suite_by_id,
    get_suites_by_tag,
)

__all__ = [
    # Suites
    "PROFILES",
    "PropertySuite",
    "ALL_SUITES",
    "run_suite",
    "run_all_suites",
    "get_suite_by_id",
    "get_suites_by_tag",

    # Reports
    "SuiteResult",
    "SelftestReport",
    "export_report_to_json",
]

__version__ = "1.0.0"
