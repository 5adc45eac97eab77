"""
Self-test results and their summaries.

Reports contain no timings or timestamps, so equal seeds and profiles give
byte-identical JSON.
"""

from dataclasses import dataclass, field
import json
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd


@dataclass
class SuiteResult:
    """Results from running one property suite."""
    suite_id: str
    name: str
    tags: List[str]
    samples: int
    passed: int
    failed: int
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite_id": self.suite_id,
            "name": self.name,
            "tags": self.tags,
            "samples": self.samples,
            "passed": self.passed,
            "failed": self.failed,
            "failures": self.failures,
        }


@dataclass
class SelftestReport:
    seed: int
    profile: str
    results: List[SuiteResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(result.ok for result in self.results)

    @property
    def total_samples(self) -> int:
        return sum(result.samples for result in self.results)

    @property
    def total_failed(self) -> int:
        return sum(result.failed for result in self.results)

    def summary_frame(self) -> pd.DataFrame:
        """One row per suite: id, name, samples, passed, failed, status."""
        return pd.DataFrame(
            [
                {
                    "suite_id": result.suite_id,
                    "name": result.name,
                    "samples": result.samples,
                    "passed": result.passed,
                    "failed": result.failed,
                    "status": "PASS" if result.ok else "FAIL",
                }
                for result in self.results
            ],
            columns=["suite_id", "name", "samples", "passed", "failed", "status"],
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "profile": self.profile,
            "total_suites": len(self.results),
            "total_samples": self.total_samples,
            "total_failed": self.total_failed,
            "all_passed": self.all_passed,
            "results": [result.to_dict() for result in self.results],
        }


def export_report_to_json(report: Any, filepath: str) -> None:
    """Write any report with a to_dict() to `filepath` as sorted, indented JSON."""
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
