"""
Verification reports shared by every suite
"""

import logging
import time
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from app.core.exceptions import VerificationFailure
from app.core.logger import get_logger

logger = get_logger(__name__, logging.INFO)

# failure records kept per report; the case counter keeps running past this
MAX_RECORDED_FAILURES = 25


@dataclass(frozen=True)
class CaseFailure:
    case: str
    detail: str
    rendering: str = ""


@dataclass
class Report:
    """Outcome of one verification suite."""

    suite: str
    cases: int = 0
    failure_count: int = 0
    failures: list[CaseFailure] = field(default_factory=list)
    elapsed_ms: float = 0.0
    params: dict[str, Any] = field(default_factory=dict)
    replay: str = ""

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def check(self, case: str, ok: bool, detail: str = "", rendering: str = "") -> bool:
        self.cases += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(CaseFailure(case, detail or "check failed", rendering))
            logger.debug(f"[{self.suite}] {case}: {detail}")
        return ok

    def expect_equal(self, case: str, lhs: Any, rhs: Any, rendering: str = "") -> bool:
        ok = lhs == rhs
        return self.check(case, ok, "" if ok else f"{lhs} != {rhs}", rendering)

    def absorb(self, other: "Report", prefix: str = "") -> None:
        self.cases += other.cases
        self.failure_count += other.failure_count
        for failure in other.failures:
            if len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(CaseFailure(f"{prefix}{failure.case}", failure.detail, failure.rendering))

    def raise_for_failures(self) -> None:
        if not self.passed:
            first = self.failures[0] if self.failures else None
            raise VerificationFailure(
                f"{self.suite}: {self.failure_count} of {self.cases} cases failed"
                + (f"; first: {first.case}: {first.detail}" if first else "")
            )

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {status} ({self.cases} cases, {self.failure_count} failed, {self.elapsed_ms:.0f} ms)"


@contextmanager
def timed(report: Report) -> Iterator[Report]:
    """Measure the wall time of a suite body and log its summary line."""
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = (time.perf_counter() - start) * 1000.0
        logger.info(report.summary())


def run_suite(name: str, body: Callable[[Report], None], **params: Any) -> Report:
    report = Report(suite=name, params=dict(params))
    with timed(report):
        body(report)
    return report
