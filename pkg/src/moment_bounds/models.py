from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from moment_bounds.conf import DEFAULT_CONFIG

EQUALITY_TOL = DEFAULT_CONFIG.equality_tol
SOUNDNESS_TOL = DEFAULT_CONFIG.soundness_tol


class Target(str, Enum):
    """Quantity a bound constrains."""
    MU2 = "mu2"
    MU3 = "mu3"
    MU3_ABS = "mu3_abs"
    MU3_SQ = "mu3_sq"
    MU4 = "mu4"
    MU3P = "mu3p"
    MU4P = "mu4p"
    M2R = "m2r"
    MU2MU3 = "mu2mu3"
    PRODUCT_MU2MU4 = "product_mu2mu4"
    MU2MU4_MINUS_MU2CUBED = "mu2mu4_minus_mu2cubed"
    R2MU2SQ_MINUS_4MU2CUBED = "r2mu2sq_minus_4mu2cubed"
    SUM_MU4_3MU2SQ = "sum_mu4_3mu2sq"
    COMPOSITE_MU2_MU3 = "composite_mu2_mu3"
    RATIO_M2P4_OVER_M4 = "ratio_m2p4_over_m4"
    SKEW_KURT_RATIO = "skew_kurt_ratio"
    STUDENTIZED_RANGE_SQ = "studentized_range_sq"
    KURTOSIS_OVER_V4 = "kurtosis_over_V4"
    MIN_VALUE = "min_value"
    MAX_VALUE = "max_value"
    RANGE = "range"
    SPREAD = "spread"
    SPAN = "span"
    CONDITION_NUMBER = "condition_number"
    LAMBDA_MIN = "lambda_min"
    LAMBDA_MAX = "lambda_max"


class Direction(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


# Closed set of formula identifiers (equation tags)
FORMULA_IDS = frozenset({
    # interval / classical
    "ge1", "ge2", "age1", "ge3", "ge4", "ge5", "mge27", "mage7",
    # fourth-moment family
    "mge1", "mge6", "mge7", "mge7r", "mage5", "mge10", "mge13", "mge14",
    "mage1", "mage3", "mage6",
    # skewness family
    "mge16", "mge16s", "mge17", "mge17q",
    "mge19", "mge20", "mage4", "mge21", "mge24", "mge26",
    # count-based m2/m4
    "mge28", "mge29", "mge32", "mge33", "mge34",
    # matrices
    "magen1", "magen2", "mgen1", "mgen2", "mgen4",
    "mgen11", "mgen12", "mgen13", "magen3", "magen4",
    "mgen5", "mgen8", "mgen9", "mgen10",
    # polynomials
    "pgen3", "pgen4", "pgen5", "pgen6", "pgen7", "pgen8",
})

# Flags a bound may carry
FLAG_DEGENERATE = "degenerate"
FLAG_NEGATIVE_OPERAND = "negative-operand"
FLAG_ERRATUM = "erratum"


@dataclass(frozen=True)
class Bound:
    """
    A computed bound on `target`.

    `actual` is attached when the true quantity is known; slack is then signed so
    that slack >= 0 means the bound holds.
    """
    target: Target
    direction: Direction
    value: float
    formula_id: str
    actual: Optional[float] = None
    # max(1, r**k) for a degree-k bound; normalizes the equality test
    scale: float = 1.0
    flags: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.formula_id not in FORMULA_IDS:
            raise ValueError(f"unknown formula id {self.formula_id!r}")

    @property
    def slack(self) -> Optional[float]:
        if self.actual is None:
            return None
        if self.direction is Direction.UPPER:
            return self.value - self.actual
        return self.actual - self.value

    def against(self, actual: float) -> Bound:
        return replace(self, actual=float(actual))

    def with_flag(self, flag: str) -> Bound:
        if flag in self.flags:
            return self
        return replace(self, flags=self.flags + (flag,))

    def satisfied(self, tol: float = SOUNDNESS_TOL) -> Optional[bool]:
        slack = self.slack
        if slack is None:
            return None
        assert self.actual is not None
        return slack >= -tol * max(1.0, abs(self.actual), abs(self.value))

    def is_equality(self, tol: float = EQUALITY_TOL) -> Optional[bool]:
        slack = self.slack
        if slack is None:
            return None
        return abs(slack) <= tol * self.scale

    def to_dict(self) -> Dict[str, Any]:
        return {
            "formula_id": self.formula_id,
            "target": self.target.value,
            "direction": self.direction.value,
            "value": self.value,
            "actual": self.actual,
            "slack": self.slack,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class Skipped:
    """An inequality that was not evaluated, with the reason."""
    formula_id: str
    reason: str


def degree_scale(range_: float, degree: int) -> float:
    return max(1.0, abs(range_) ** degree)


@dataclass
class SuiteResult:
    bounds: list[Bound] = field(default_factory=list)
    skipped: list[Skipped] = field(default_factory=list)

    @property
    def violations(self) -> list[Bound]:
        return [b for b in self.bounds if b.satisfied() is False]

    def by_formula(self, formula_id: str) -> list[Bound]:
        return [b for b in self.bounds if b.formula_id == formula_id]


def kth_root(x: float, k: int) -> float:
    """k-th root as exp(log(x)/k), with x <= 0 mapped to 0."""
    if x <= 0:
        return 0.0
    return math.exp(math.log(x) / k)
