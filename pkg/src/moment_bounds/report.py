from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Union

from moment_bounds.conf import DEFAULT_CONFIG
from moment_bounds.models import FLAG_ERRATUM, Bound, Skipped

logger = logging.getLogger(__name__)

TEXT_DIGITS = DEFAULT_CONFIG.text_digits
ROUNDED_DIGITS = DEFAULT_CONFIG.rounded_digits
ERRATUM_TOL = DEFAULT_CONFIG.erratum_tol

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VIOLATION = 2


class Subject(str, Enum):
    SAMPLE = "sample"
    MATRIX = "matrix"
    SPECTRUM = "spectrum"
    POLYNOMIAL = "polynomial"
    FUNCTIONAL = "functional"


@dataclass
class Report:
    """Bounds for one input, in fixed formula order."""
    subject: Subject
    inputs_echo: Dict[str, Any]
    bounds: List[Bound] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)
    erratum_flags: List[str] = field(default_factory=list)
    # derived statistics shown above the bounds (moments, traces, depression)
    info: Dict[str, Any] = field(default_factory=dict)
    name: Optional[str] = None
    # reference mismatches and missed equalities (bundled fixtures only)
    failures: List[str] = field(default_factory=list)

    @property
    def violations(self) -> List[Bound]:
        return [b for b in self.bounds if b.satisfied() is False]

    @property
    def exit_code(self) -> int:
        return EXIT_VIOLATION if self.violations or self.failures else EXIT_OK

    def skip(self, skipped: Iterable[Skipped]) -> None:
        for s in skipped:
            self.diagnostics.append(f"skipped {s.formula_id}: {s.reason}")

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "subject": self.subject.value,
            "inputs": self.inputs_echo,
            "info": self.info,
            "bounds": [b.to_dict() for b in self.bounds],
            "diagnostics": list(self.diagnostics),
            "erratum_flags": list(self.erratum_flags),
            "violations": len(self.violations),
            "failures": list(self.failures),
        }
        if self.name is not None:
            out["name"] = self.name
        return out


# ================
# FIXTURE REFERENCES
# ================
def _values_for(report: Report, formula_id: str) -> List[float]:
    return [b.value for b in report.bounds if b.formula_id == formula_id]


def check_published(report: Report, published: Mapping[str, Union[float, Sequence[float]]],
                    tol: float = ERRATUM_TOL) -> List[str]:
    """Compare computed values with reference values; returns mismatch messages."""
    mismatches = []
    for formula_id, expected in sorted(published.items()):
        if isinstance(expected, (int, float)):
            expected_list = [float(expected)]
        else:
            expected_list = [float(e) for e in expected]
        computed = _values_for(report, formula_id)
        if len(computed) != len(expected_list):
            mismatches.append(
                f"{formula_id}: expected {len(expected_list)} values, computed {len(computed)}"
            )
            continue
        for got, want in zip(computed, expected_list):
            if abs(got - want) > tol:
                mismatches.append(f"{formula_id}: computed {got:.6g}, reference {want:.6g}")
    report.diagnostics.extend(mismatches)
    return mismatches


def apply_errata(
    report: Report, errata: Iterable[Mapping[str, Any]], tol: float = ERRATUM_TOL
) -> None:
    """
    Flag each bound whose computed value differs from a documented printed value.
    An erratum entry is {"formula_id": ..., "published": float, "note": str?}.
    """
    for entry in errata:
        formula_id = entry["formula_id"]
        printed = float(entry["published"])
        hits = [i for i, b in enumerate(report.bounds)
                if b.formula_id == formula_id and abs(b.value - printed) > tol]
        for i in hits:
            report.bounds[i] = report.bounds[i].with_flag(FLAG_ERRATUM)
        if hits:
            got = _values_for(report, formula_id)
            shown = ", ".join(f"{v:.4f}" for v in got)
            message = f"{formula_id}: computed {shown}, printed {printed:.4f}"
            if entry.get("note"):
                message += f" ({entry['note']})"
            report.erratum_flags.append(message)
            logger.info("erratum %s", message)


# ================
# RENDERING
# ================
def _fmt(x: Optional[float], rounded: bool) -> str:
    if x is None:
        return "-"
    if rounded:
        return f"{x:.{ROUNDED_DIGITS}f}"
    return f"{x:.{TEXT_DIGITS}g}"


def _status(b: Bound) -> str:
    ok = b.satisfied()
    if ok is None:
        return ""
    if not ok:
        return "VIOLATED"
    return "equality" if b.is_equality() else "ok"


def render_text(report: Report, rounded: bool = False) -> str:
    lines = []
    title = f"[{report.subject.value}]" + (f" {report.name}" if report.name else "")
    lines.append(title)
    for key, value in report.info.items():
        shown = _fmt(value, rounded) if isinstance(value, float) else str(value)
        lines.append(f"  {key} = {shown}")

    if report.bounds:
        headers = ["formula", "target", "dir", "value", "actual", "slack", "status"]
        rows = [
            [
                b.formula_id + ("*" if b.flags else ""),
                b.target.value,
                b.direction.value,
                _fmt(b.value, rounded),
                _fmt(b.actual, rounded),
                _fmt(b.slack, rounded),
                _status(b),
            ]
            for b in report.bounds
        ]
        widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
        lines.append("  " + "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
        for r in rows:
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        flagged = [b for b in report.bounds if b.flags]
        for b in flagged:
            lines.append(f"  * {b.formula_id}: {', '.join(b.flags)}")

    for d in report.diagnostics:
        lines.append(f"  note: {d}")
    for e in report.erratum_flags:
        lines.append(f"  erratum: {e}")
    lines.append(f"  violations: {len(report.violations)}")
    return "\n".join(lines)


def render_json(reports: Union[Report, Sequence[Report]]) -> str:
    if isinstance(reports, Report):
        payload: Any = reports.to_dict()
    else:
        payload = [r.to_dict() for r in reports]
    return json.dumps(payload, sort_keys=True, indent=2)
