from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from moment_bounds.errors import (
    BoundsError,
    DegreeTooSmall,
    InputFormatError,
    ValueOutOfSupport,
    ZeroFourthMoment,
)
from moment_bounds.loaders import (
    FORMATS,
    PolynomialInput,
    SampleInput,
    as_pairs,
    load_functional,
    load_matrix_or_spectrum,
    load_polynomial,
    load_sample,
    parse_functional,
    parse_matrix,
    parse_polynomial,
    parse_sample,
    parse_spectrum,
    read_json,
)
from moment_bounds.models import Target
from moment_bounds.moment_inequalities import run_suite
from moment_bounds.poly_bounds import depress, root_bounds, span_bounds
from moment_bounds.report import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    Report,
    Subject,
    apply_errata,
    check_published,
    render_json,
    render_text,
)
from moment_bounds.sample_moments import SupportInterval, compute_moments, validate_support
from moment_bounds.spectral_bounds import functional_spread_bounds, spectral_report
from moment_bounds.trace_engine import (
    DensityFunctional,
    SquareMatrix,
    centered_traces,
    eigen_oracle,
    functional_moments,
    spectrum_to_traces,
)

logger = logging.getLogger(__name__)


# ================
# REPORT BUILDERS
# ================
def sample_report(data: SampleInput, interval: Optional[SupportInterval] = None) -> Report:
    sample = data.sample
    data_range = validate_support(sample)
    interval = interval or data.interval or data_range
    if not interval.contains(data_range):
        raise ValueOutOfSupport(
            f"data range [{data_range.m}, {data_range.M}] not inside [{interval.m}, {interval.M}]",
            {"data_range": [data_range.m, data_range.M], "interval": [interval.m, interval.M]},
        )
    moments = compute_moments(sample, interval)
    result = run_suite(sample, interval)

    report = Report(
        Subject.SAMPLE,
        {
            "values": list(sample.values),
            "weights": list(sample.weights),
            "interval": [interval.m, interval.M],
        },
        bounds=list(result.bounds),
    )
    report.info = {
        "n": sample.n,
        "equal_weights": sample.equal_weights,
        "mean": moments.mu1p,
        "mu2": moments.mu2,
        "mu3": moments.mu3,
        "mu4": moments.mu4,
    }
    report.skip(result.skipped)
    return report


def matrix_report(matrix: SquareMatrix, functional: Optional[DensityFunctional] = None,
                  with_oracle: bool = False) -> Report:
    report = Report(Subject.MATRIX, {"n": matrix.n, "entries": [list(p) for p in as_pairs(matrix)]})
    traces = centered_traces(matrix)
    report.info = {"n": traces.n, "trA": traces.trA, "trB2": traces.trB2, "trB3": traces.trB3,
                   "trB4": traces.trB4}

    eigenvalues = eigen_oracle(matrix) if with_oracle else None
    if eigenvalues is not None:
        report.info["lambda_min"] = eigenvalues[0]
        report.info["lambda_max"] = eigenvalues[-1]

    if matrix.n < 2:
        report.diagnostics.append(
            "degenerate: order 1 matrix, spread is 0 and every bound is trivial"
        )
        return report

    spectral = spectral_report(traces, eigenvalues)
    report.bounds = spectral.bounds
    report.skip(spectral.skipped)

    if functional is not None:
        report.subject = Subject.FUNCTIONAL
        fm = functional_moments(matrix, functional)
        report.info.update(
            {"phiA": fm.phiA, "phiB2": fm.phiB2, "phiB3": fm.phiB3, "phiB4": fm.phiB4}
        )
        extra = functional_spread_bounds(fm)
        if eigenvalues is not None:
            extra = [b.against(eigenvalues[-1] - eigenvalues[0]) for b in extra]
        report.bounds.extend(extra)
    return report


def spectrum_report(eigenvalues: Sequence[float]) -> Report:
    """Bounds from a known spectrum, each checked against it."""
    eigs = sorted(float(v) for v in eigenvalues)
    report = Report(Subject.SPECTRUM, {"eigenvalues": eigs})
    traces = spectrum_to_traces(eigs)
    report.info = {"n": traces.n, "trA": traces.trA, "trB2": traces.trB2, "trB3": traces.trB3,
                   "trB4": traces.trB4}
    if traces.n < 2:
        report.diagnostics.append("degenerate: single eigenvalue, every bound is trivial")
        return report
    spectral = spectral_report(traces, eigs)
    report.bounds = spectral.bounds
    report.skip(spectral.skipped)
    return report


def polynomial_report(data: PolynomialInput) -> Report:
    p = data.polynomial
    echo: Dict[str, Any] = {"coefficients": list(p.coefficients)}
    if data.roots is not None:
        echo["roots"] = list(data.roots)
    report = Report(Subject.POLYNOMIAL, echo)

    d = depress(p)
    report.info = {"degree": d.degree, "shift": d.shift, "a2": d.a2, "m2": d.m2}
    if d.a4 is not None:
        report.info.update({"a4": d.a4, "m4": d.m4})

    try:
        report.bounds.extend(root_bounds(d))
    except (DegreeTooSmall, ZeroFourthMoment) as exc:
        report.diagnostics.append(f"skipped pgen3/pgen4: {exc}")
    try:
        report.bounds.extend(span_bounds(d))
    except DegreeTooSmall as exc:
        report.diagnostics.append(f"skipped pgen5-pgen8: {exc}")

    if data.roots is not None:
        lo, hi = min(data.roots), max(data.roots)
        actual = {Target.MIN_VALUE: lo, Target.MAX_VALUE: hi, Target.SPAN: hi - lo}
        report.bounds = [b.against(actual[b.target]) for b in report.bounds]
    return report


# ================
# COMMANDS
# ================
def _interval_arg(args: argparse.Namespace) -> Optional[SupportInterval]:
    if getattr(args, "interval", None) is None:
        return None
    m, M = args.interval
    return SupportInterval(m, M)


def cmd_moments(args: argparse.Namespace) -> List[Report]:
    data = load_sample(args.path, args.format)
    return [sample_report(data, _interval_arg(args))]


def cmd_matrix(args: argparse.Namespace) -> List[Report]:
    loaded = load_matrix_or_spectrum(args.path)
    if isinstance(loaded, SquareMatrix):
        functional = load_functional(args.functional) if args.functional else None
        return [matrix_report(loaded, functional, args.with_oracle)]
    if args.functional:
        raise InputFormatError("--functional needs a matrix input, not a spectrum")
    return [spectrum_report(loaded)]


def cmd_poly(args: argparse.Namespace) -> List[Report]:
    return [polynomial_report(load_polynomial(args.path))]


def fixture_paths(directory: Optional[str] = None) -> List[Path]:
    if directory is not None:
        return sorted(Path(directory).glob("*.json"))
    root = resources.files("moment_bounds") / "fixtures"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json"))


def fixture_report(fixture: Dict[str, Any]) -> Report:
    """
    Report for one bundled fixture. Mismatches against reference values and expected
    equalities that did not hold are recorded as failures.
    """
    kind = fixture.get("kind")
    payload = fixture.get("input", {})
    options = fixture.get("options", {})

    if kind == "sample":
        interval = SupportInterval(*options["interval"]) if "interval" in options else None
        report = sample_report(parse_sample(payload), interval)
    elif kind == "matrix":
        functional = parse_functional(options["functional"]) if "functional" in options else None
        report = matrix_report(parse_matrix(payload), functional, bool(options.get("with_oracle")))
    elif kind == "spectrum":
        report = spectrum_report(parse_spectrum(payload))
    elif kind == "polynomial":
        report = polynomial_report(parse_polynomial(payload))
    else:
        raise InputFormatError(f"unknown fixture kind {kind!r}")

    report.name = fixture.get("name")
    failures = check_published(report, fixture.get("published", {}))
    apply_errata(report, fixture.get("errata", []))

    for formula_id in fixture.get("equalities", []):
        if not any(b.is_equality() for b in report.bounds if b.formula_id == formula_id):
            message = f"{formula_id}: expected equality not attained"
            report.diagnostics.append(message)
            failures.append(message)
    report.failures = failures
    return report


def cmd_suite(args: argparse.Namespace) -> List[Report]:
    reports = []
    for path in fixture_paths(args.fixtures):
        logger.debug("fixture %s", path)
        reports.append(fixture_report(read_json(path)))
    return reports


# ================
# ENTRY POINT
# ================
def build_parser() -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument(
        "--json", action="store_true", help="Machine-readable output (full doubles)."
    )
    output.add_argument(
        "--paper-mode", "--rounded", dest="rounded", action="store_true",
        help="Print values to 4 decimals.",
    )

    parser = argparse.ArgumentParser(
        prog="moment-bounds",
        description="Bounds on moments, eigenvalues and polynomial roots.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "moments", parents=[output], help="Moment inequalities for a weighted sample."
    )
    p.add_argument("path")
    p.add_argument("--format", choices=FORMATS, default="auto")
    p.add_argument("--interval", nargs=2, type=float, metavar=("m", "M"),
                   help="Support interval (default: the sample's min and max).")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("matrix", parents=[output], help="Eigenvalue, spread and condition bounds.")
    p.add_argument("path")
    p.add_argument(
        "--with-oracle", action="store_true", help="Check bounds against Jacobi eigenvalues."
    )
    p.add_argument(
        "--functional", metavar="W_PATH", help="Density weight for functional spread bounds."
    )
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser(
        "poly", parents=[output], help="Root and span bounds for a monic polynomial."
    )
    p.add_argument("path")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("suite", parents=[output], help="Run every bundled fixture.")
    p.add_argument("--fixtures", metavar="DIR", help="Fixture directory (default: bundled).")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        reports = args.func(args)
    except (BoundsError, OSError, ValueError, KeyError, TypeError) as exc:
        # JSONDecodeError is a ValueError
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    if args.json:
        print(render_json(reports if len(reports) != 1 or args.command == "suite" else reports[0]))
    else:
        print("\n\n".join(render_text(r, rounded=args.rounded) for r in reports))

    return max((r.exit_code for r in reports), default=EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
