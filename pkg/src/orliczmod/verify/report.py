"""Verification reports, verdicts and their JSON/CSV serialization."""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

__all__ = ["VerificationReport", "VERDICTS", "drift_verdict", "write_reports",
           "summary_table", "suite_passed"]

VERDICTS = ("identity_pass", "identity_fail", "bounded_stable", "divergent", "inconclusive")

DRIFT_TOL = 0.10
GROWTH = 1.25


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``expected`` is the verdict the check is asserted to reach
    (``identity_pass``, ``bounded_stable`` or ``divergent``) or ``None``
    for recorded-only checks, which never fail a suite.
    """

    check_name: str
    ensemble_size: int
    grid: list
    lhs: list
    rhs: list
    empirical_constant: float
    refinement_trend: list
    verdict: str
    expected: str = None
    tolerance: float = None
    boundary_mass: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if not self.empirical_constant >= 0:
            raise ValueError("empirical constant must be non-negative")

    @property
    def boundary_flag(self):
        return self.boundary_mass > 1e-6

    @property
    def passed(self):
        if self.expected is None:
            return True
        if self.expected == "bounded_stable":
            return self.verdict != "divergent"
        return self.verdict == self.expected

    def to_dict(self):
        out = asdict(self)
        out["passed"] = self.passed
        out["boundary_flag"] = self.boundary_flag
        return _jsonable(out)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if hasattr(obj, "item"):
        return _jsonable(obj.item())
    return obj


def drift_verdict(trend, drift=DRIFT_TOL, growth=GROWTH):
    """Classify a refinement trend of empirical constants.

    Monotone growth by more than ``growth`` twice in a row is ``divergent``;
    a relative change below ``drift`` between the last two levels is
    ``bounded_stable``; anything else is ``inconclusive``.
    """
    trend = [float(t) for t in trend]
    if any(not math.isfinite(t) for t in trend):
        return "divergent"
    ratios = [b / a if a > 0 else (math.inf if b > 0 else 1.0) for a, b in zip(trend, trend[1:])]
    if any(r1 > growth and r2 > growth for r1, r2 in zip(ratios, ratios[1:])):
        return "divergent"
    if ratios and abs(ratios[-1] - 1) < drift:
        return "bounded_stable"
    return "inconclusive"


def suite_passed(reports):
    return all(r.passed for r in reports)


def write_reports(reports, json_path=None, csv_path=None):
    """Write reports as JSON (one document) and CSV (one row per sample)."""
    if json_path is not None:
        with open(json_path, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2, sort_keys=True)
            fh.write("\n")
    if csv_path is not None:
        with open(csv_path, "w", newline="") as fh:
            fh.write(reports_csv(reports))


def reports_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["check_name", "sample", "lhs", "rhs", "ratio"])
    for r in reports:
        for i, (a, b) in enumerate(zip(r.lhs, r.rhs)):
            ratio = a / b if b else (0.0 if a == 0 else math.inf)
            writer.writerow([r.check_name, i, repr(float(a)), repr(float(b)), repr(float(ratio))])
    return buf.getvalue()


def summary_table(reports):
    rows = [("check", "n", "constant", "verdict", "expected", "ok")]
    for r in reports:
        rows.append((r.check_name, str(r.ensemble_size), f"{r.empirical_constant:.6g}",
                     r.verdict, r.expected or "-", "yes" if r.passed else "NO"))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
