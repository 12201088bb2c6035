"""
Input ingestion.

Sample JSON:      {"values": [...], "weights": [...]?, "interval": [m, M]?}
Sample CSV:       one "value[,weight]" row per data point, '#' starts a comment
Matrix JSON:      {"n": int, "entries": [[re, im], ...]} row-major,
                  or {"entries": [[...], ...]} real rows
Spectrum JSON:    {"eigenvalues": [...]}
Functional JSON:  matrix schema for W, or {"vector": [...]} for a vector state
Polynomial JSON:  {"coefficients": [1, c_{n-1}, ..., c_0]} or {"roots": [...]}
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from moment_bounds.errors import InputFormatError
from moment_bounds.poly_bounds import Polynomial
from moment_bounds.sample_moments import SupportInterval, WeightedSample
from moment_bounds.trace_engine import DensityFunctional, SquareMatrix

logger = logging.getLogger(__name__)

FORMATS = ("auto", "json", "csv")


@dataclass(frozen=True)
class SampleInput:
    sample: WeightedSample
    interval: Optional[SupportInterval] = None


@dataclass(frozen=True)
class PolynomialInput:
    polynomial: Polynomial
    # known roots when the polynomial was built from them
    roots: Optional[Tuple[float, ...]] = None


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise InputFormatError(f"{path}: top-level JSON object expected")
    return data


def _numbers(raw: Any, what: str) -> List[float]:
    if not isinstance(raw, list) or not raw:
        raise InputFormatError(f"{what} must be a non-empty list of numbers")
    try:
        return [float(x) for x in raw]
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{what} must contain numbers only") from exc


# ================
# SAMPLES
# ================
def parse_sample(data: Dict[str, Any]) -> SampleInput:
    if "values" not in data:
        raise InputFormatError("sample needs a 'values' list")
    values = _numbers(data["values"], "values")
    weights = _numbers(data["weights"], "weights") if data.get("weights") is not None else []

    interval = None
    if data.get("interval") is not None:
        bounds = _numbers(data["interval"], "interval")
        if len(bounds) != 2:
            raise InputFormatError("interval must be [m, M]")
        interval = SupportInterval(bounds[0], bounds[1])

    return SampleInput(WeightedSample(tuple(values), tuple(weights)), interval)


def _read_sample_csv(path: Union[str, Path]) -> SampleInput:
    try:
        table = np.loadtxt(path, delimiter=",", comments="#", ndmin=2, dtype=float)
    except ValueError as exc:
        raise InputFormatError(f"{path}: rows must be 'value[,weight]'") from exc
    if table.size == 0:
        raise InputFormatError(f"{path}: no data rows")
    if table.shape[1] == 1:
        return SampleInput(WeightedSample(tuple(table[:, 0].tolist())))
    if table.shape[1] == 2:
        return SampleInput(WeightedSample(tuple(table[:, 0].tolist()), tuple(table[:, 1].tolist())))
    raise InputFormatError(f"{path}: expected 1 or 2 columns, got {table.shape[1]}")


def load_sample(path: Union[str, Path], fmt: str = "auto") -> SampleInput:
    if fmt not in FORMATS:
        raise InputFormatError(f"unknown format {fmt!r}")
    if fmt == "auto":
        fmt = "csv" if Path(path).suffix.lower() in {".csv", ".txt"} else "json"
    logger.debug("loading sample %s as %s", path, fmt)
    if fmt == "csv":
        return _read_sample_csv(path)
    return parse_sample(read_json(path))


# ================
# MATRICES
# ================
def parse_matrix(data: Dict[str, Any]) -> SquareMatrix:
    entries = data.get("entries")
    if not isinstance(entries, list) or not entries:
        raise InputFormatError("matrix needs an 'entries' list")

    if "n" in data:
        n = data["n"]
        if not isinstance(n, int) or n < 1:
            raise InputFormatError("'n' must be a positive integer")
        try:
            pairs = [(float(re), float(im)) for re, im in entries]
        except (TypeError, ValueError) as exc:
            raise InputFormatError("complex entries must be [re, im] pairs") from exc
        if len(pairs) != n * n:
            raise InputFormatError(f"expected {n * n} entries, got {len(pairs)}")
        return SquareMatrix.from_complex_pairs(n, pairs)

    # real shorthand: list of rows
    n = len(entries)
    rows = []
    for row in entries:
        values = _numbers(row, "matrix row")
        if len(values) != n:
            raise InputFormatError("real matrix rows must form a square")
        rows.append(values)
    return SquareMatrix.from_rows(rows)


def parse_spectrum(data: Dict[str, Any]) -> List[float]:
    return _numbers(data.get("eigenvalues"), "eigenvalues")


def load_matrix_or_spectrum(path: Union[str, Path]) -> Union[SquareMatrix, List[float]]:
    data = read_json(path)
    if "eigenvalues" in data:
        return parse_spectrum(data)
    return parse_matrix(data)


def parse_functional(data: Dict[str, Any]) -> DensityFunctional:
    if "vector" in data:
        raw = data["vector"]
        if not isinstance(raw, list) or not raw:
            raise InputFormatError("'vector' must be a non-empty list")
        vec = [complex(x[0], x[1]) if isinstance(x, list) else complex(float(x)) for x in raw]
        return DensityFunctional.vector_state(vec)
    return DensityFunctional(parse_matrix(data).entries)


def load_functional(path: Union[str, Path]) -> DensityFunctional:
    return parse_functional(read_json(path))


# ================
# POLYNOMIALS
# ================
def parse_polynomial(data: Dict[str, Any]) -> PolynomialInput:
    if "coefficients" in data:
        return PolynomialInput(Polynomial(tuple(_numbers(data["coefficients"], "coefficients"))))
    if "roots" in data:
        roots = tuple(_numbers(data["roots"], "roots"))
        return PolynomialInput(Polynomial.from_roots(roots), roots)
    raise InputFormatError("polynomial needs 'coefficients' or 'roots'")


def load_polynomial(path: Union[str, Path]) -> PolynomialInput:
    return parse_polynomial(read_json(path))


def as_pairs(matrix: SquareMatrix) -> Sequence[Tuple[float, float]]:
    """Row-major [re, im] pairs, the canonical echo of a matrix input."""
    return [(float(z.real), float(z.imag)) for z in matrix.entries.reshape(-1)]
