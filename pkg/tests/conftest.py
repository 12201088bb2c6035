# tests/conftest.py
from __future__ import annotations

import math

import pytest

from moment_bounds.conf import BoundsConfig
from moment_bounds.sample_moments import SupportInterval
from moment_bounds.trace_engine import CenteredTraces, SquareMatrix, spectrum_to_traces


A1_ROWS = [[4, 0, 2, 3], [0, 5, 0, 1], [2, 0, 6, 0], [3, 1, 0, 7]]
A2_ROWS = [[1, 1, 0, 2], [0, 4, 0, 0], [0, 3, 1, 1], [2, 1, 2, 4]]
A2_SPECTRUM = [1.0, 4.0, 2.5 + math.sqrt(33) / 2, 2.5 - math.sqrt(33) / 2]
A3_SPECTRUM = [-1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0]


@pytest.fixture(scope="session")
def config() -> BoundsConfig:
    """Default tolerances for all tests."""
    return BoundsConfig()


@pytest.fixture(scope="session")
def unit_interval() -> SupportInterval:
    return SupportInterval(0.0, 1.0)


@pytest.fixture(scope="session")
def a1() -> SquareMatrix:
    """Symmetric 4x4 worked example."""
    return SquareMatrix.from_rows(A1_ROWS)


@pytest.fixture(scope="session")
def a2() -> SquareMatrix:
    """Non-symmetric 4x4 matrix with a real spectrum."""
    return SquareMatrix.from_rows(A2_ROWS)


@pytest.fixture(scope="session")
def a2_traces() -> CenteredTraces:
    return spectrum_to_traces(A2_SPECTRUM)


@pytest.fixture(scope="session")
def a3_traces() -> CenteredTraces:
    """Order 9, eigenvalues -1, 0, 1 with multiplicities 2, 5, 2."""
    return spectrum_to_traces(A3_SPECTRUM)
