"""Report models emitted by certification sweeps."""
import csv
import io
import json
from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one numeric assertion."""

    name: str = Field(..., description="Check identifier")
    bound_formula: str = Field(default="", description="Human-readable bound used")
    measured: Optional[float] = Field(default=None, description="Measured quantity")
    bound: Optional[float] = Field(default=None, description="Bound the measurement is compared with")
    passed: bool = Field(..., description="Whether the assertion holds")
    details: Dict[str, Any] = Field(default_factory=dict, description="Additional details")

    @classmethod
    def below(cls, name: str, measured: float, bound: float, formula: str = "", **details: Any) -> "CheckResult":
        """Build a check asserting measured <= bound."""
        return cls(
            name=name,
            bound_formula=formula,
            measured=float(measured),
            bound=float(bound),
            passed=bool(measured <= bound),
            details=details,
        )

    @classmethod
    def at_least(cls, name: str, count: int, minimum: int, formula: str = "", **details: Any) -> "CheckResult":
        """Build a tally check asserting count >= minimum; merged tallies add up."""
        return cls(
            name=name,
            bound_formula=formula,
            measured=float(count),
            bound=float(minimum),
            passed=bool(count >= minimum),
            details={**details, "tally": True},
        )

    @property
    def is_tally(self) -> bool:
        return bool(self.details.get("tally"))

    @classmethod
    def flag(cls, name: str, passed: bool, formula: str = "", **details: Any) -> "CheckResult":
        """Build a boolean check."""
        return cls(name=name, bound_formula=formula, passed=bool(passed), details=details)


class Report(BaseModel):
    """Machine-readable report for one CLI run."""

    command: str = Field(..., description="Subcommand path")
    seed: int = Field(..., description="Random seed used")
    tolerances: Dict[str, float] = Field(default_factory=dict, description="Tolerances in force")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Resolved parameters")
    checks: List[CheckResult] = Field(default_factory=list, description="Assertions evaluated")
    rows: List[Dict[str, Any]] = Field(default_factory=list, description="Plot-ready data rows")
    timestamp: datetime = Field(default_factory=datetime.utcnow, description="Report creation time")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> str:
        payload = self.model_dump(mode="json", exclude={"timestamp"})
        payload["passed"] = self.passed
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        """Render rows as CSV, or the check table when there are no rows."""
        buffer = io.StringIO()
        if self.rows:
            columns = list(self.rows[0].keys())
            writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow({key: _fmt(row.get(key)) for key in columns})
        else:
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["name", "bound_formula", "measured", "bound", "passed", "seed"])
            for check in self.checks:
                writer.writerow([
                    check.name,
                    check.bound_formula,
                    _fmt(check.measured),
                    _fmt(check.bound),
                    check.passed,
                    self.seed,
                ])
        return buffer.getvalue()


def _fmt(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else value
