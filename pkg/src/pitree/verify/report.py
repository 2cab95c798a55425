"""Check reports: one entry per instantiated clause, serialized to JSON."""

import json
import logging
from typing import Any

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class CheckStatus:
    """Outcome of a single check.

    Undecided means the symbolic comparison left the decidable algebra or a
    search hit its cap; it is never counted as a pass.
    """

    PASS = "pass"
    FAIL = "fail"
    UNDECIDED = "undecided"

    # All valid statuses
    ALL = (PASS, FAIL, UNDECIDED)


class ExitCode:
    """Process exit codes shared by the CLI and report summaries."""

    OK = 0
    VIOLATION = 1
    CONFIG = 2
    INCONCLUSIVE = 3


class CheckEntry(BaseModel):
    """A single check with its clause tag and witness."""

    check: str = Field(..., description="Check id, e.g. 'partition'")
    clause: str = Field(..., description="Clause the check instantiates, e.g. '(a2)'")
    status: str = Field(..., description="One of pass / fail / undecided")
    node: str | None = Field(None, description="Node path the check ran at")
    witness: Any = Field(None, description="Machine-checkable witness or counterexample")
    detail: str | None = None

    model_config = {"extra": "ignore"}


class Report(BaseModel):
    """Result of a suite run over one tree."""

    suite: str
    tree: str
    depth: int | None = None
    entries: list[CheckEntry] = Field(default_factory=list)

    model_config = {"extra": "ignore"}

    def add(
        self,
        check: str,
        clause: str,
        status: str,
        *,
        node: str | None = None,
        witness: Any = None,
        detail: str | None = None,
    ) -> CheckEntry:
        if status not in CheckStatus.ALL:
            raise ValueError(f"Unknown check status: {status}")
        entry = CheckEntry(
            check=check, clause=clause, status=status, node=node, witness=witness, detail=detail
        )
        self.entries.append(entry)
        if status == CheckStatus.UNDECIDED:
            logger.warning(
                "Undecided %s %s at %s in %s: %s", check, clause, node, self.tree, detail or witness
            )
        return entry

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    def count(self, status: str) -> int:
        return sum(1 for e in self.entries if e.status == status)

    @property
    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status == CheckStatus.FAIL]

    @property
    def status(self) -> str:
        if self.count(CheckStatus.FAIL):
            return CheckStatus.FAIL
        if self.count(CheckStatus.UNDECIDED):
            return CheckStatus.UNDECIDED
        return CheckStatus.PASS

    @property
    def exit_code(self) -> int:
        return {
            CheckStatus.PASS: ExitCode.OK,
            CheckStatus.FAIL: ExitCode.VIOLATION,
            CheckStatus.UNDECIDED: ExitCode.INCONCLUSIVE,
        }[self.status]

    def summary(self) -> str:
        return (
            f"{self.suite} on {self.tree}: {self.count(CheckStatus.PASS)} passed, "
            f"{self.count(CheckStatus.FAIL)} failed, {self.count(CheckStatus.UNDECIDED)} undecided"
        )

    def to_json(self) -> str:
        data = self.model_dump(mode="json", exclude_none=True)
        data["status"] = self.status
        return json.dumps(data, indent=2, ensure_ascii=False)


def merge(suite: str, tree: str, reports: list[Report], depth: int | None = None) -> Report:
    merged = Report(suite=suite, tree=tree, depth=depth)
    for report in reports:
        merged.extend(report)
    return merged
