from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from moment_bounds.conf import DEFAULT_CONFIG
from moment_bounds.errors import InvalidWeights, ValueOutOfSupport

logger = logging.getLogger(__name__)

WEIGHT_SUM_TOL = DEFAULT_CONFIG.weight_sum_tol


@dataclass(frozen=True)
class SupportInterval:
    """Closed interval [m, M] containing the data."""
    m: float
    M: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.m) and math.isfinite(self.M)):
            raise ValueError("interval endpoints must be finite")
        if self.m > self.M:
            raise ValueError(f"empty interval [{self.m}, {self.M}]")

    @property
    def range(self) -> float:
        return self.M - self.m

    def contains(self, other: SupportInterval) -> bool:
        return self.m <= other.m and other.M <= self.M

    def contains_value(self, x: float) -> bool:
        return self.m <= x <= self.M


@dataclass(frozen=True)
class WeightedSample:
    """
    Finitely many values with nonnegative weights summing to 1.

    Weights are validated and then renormalized: identical weights become exactly
    1/n, anything else is divided by its sum. Omitting weights means equal weights.
    """
    values: Tuple[float, ...]
    weights: Tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        n = len(values)
        if n < 1:
            raise InvalidWeights("sample needs at least one value", {"n": n})
        if not all(math.isfinite(v) for v in values):
            raise InvalidWeights("sample values must be finite")

        weights = tuple(float(w) for w in self.weights) if self.weights else (1.0 / n,) * n
        if len(weights) != n:
            raise InvalidWeights(
                "weights length differs from values length",
                {"values": n, "weights": len(weights)},
            )
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise InvalidWeights("weights must be finite and nonnegative", {"weights": weights})
        total = math.fsum(weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidWeights("weights must sum to 1", {"sum": total})

        if all(w == weights[0] for w in weights):
            weights = (1.0 / n,) * n
        elif total != 1.0:
            weights = tuple(w / total for w in weights)

        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def equal(cls, values: Sequence[float]) -> WeightedSample:
        n = len(values)
        return cls(tuple(values), (1.0 / n,) * n if n else ())

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def equal_weights(self) -> bool:
        return all(w == self.weights[0] for w in self.weights)

    @property
    def min_value(self) -> float:
        return min(self.values)

    @property
    def max_value(self) -> float:
        return max(self.values)


@dataclass(frozen=True)
class MomentSet:
    """Raw and central moments up to order 4 plus derived statistics."""
    n: int
    equal_weights: bool
    mu1p: float
    mu2p: float
    mu3p: float
    mu4p: float
    mu2: float
    mu3: float
    mu4: float
    # absent (None) when the denominator vanishes
    skewness: Optional[float] = None
    kurtosis: Optional[float] = None
    studentized_range: Optional[float] = None
    dispersion: Optional[float] = None

    @property
    def mean(self) -> float:
        return self.mu1p


def validate_support(sample: WeightedSample) -> SupportInterval:
    """Tightest interval [min x, max x] holding the sample."""
    return SupportInterval(sample.min_value, sample.max_value)


def raw_to_central(
    mu1p: float, mu2p: float, mu3p: float, mu4p: float
) -> Tuple[float, float, float]:
    """Central moments from raw moments. Cross-check only: cancels badly for tight clusters."""
    mu2 = mu2p - mu1p**2
    mu3 = mu3p - 3 * mu1p * mu2p + 2 * mu1p**3
    mu4 = mu4p - 4 * mu1p * mu3p + 6 * mu1p**2 * mu2p - 3 * mu1p**4
    return mu2, mu3, mu4


def compute_moments(sample: WeightedSample, interval: SupportInterval) -> MomentSet:
    """
    Two-pass moments: the mean first, then weighted powers of the centered values.
    """
    for x in sample.values:
        if not interval.contains_value(x):
            raise ValueOutOfSupport(
                f"value {x} outside [{interval.m}, {interval.M}]",
                {"value": x, "m": interval.m, "M": interval.M},
            )

    x = np.asarray(sample.values, dtype=float)
    p = np.asarray(sample.weights, dtype=float)

    mu1p = float(p @ x)
    mu2p = float(p @ x**2)
    mu3p = float(p @ x**3)
    mu4p = float(p @ x**4)

    if sample.min_value == sample.max_value:
        # all values equal: no spread at all
        logger.debug("degenerate sample at %s", sample.values[0])
        mu1p = sample.values[0]
        mu2 = mu3 = mu4 = 0.0
    else:
        d = x - mu1p
        d2 = d * d
        mu2 = float(p @ d2)
        mu3 = float(p @ (d2 * d))
        mu4 = float(p @ (d2 * d2))

    skewness = kurtosis = studentized_range = dispersion = None
    if mu2 > 0:
        skewness = mu3 / mu2**1.5
        kurtosis = mu4 / mu2**2
        studentized_range = interval.range / math.sqrt(mu2)
        if mu1p != 0:
            dispersion = math.sqrt(mu2) / mu1p

    return MomentSet(
        n=sample.n,
        equal_weights=sample.equal_weights,
        mu1p=mu1p,
        mu2p=mu2p,
        mu3p=mu3p,
        mu4p=mu4p,
        mu2=mu2,
        mu3=mu3,
        mu4=mu4,
        skewness=skewness,
        kurtosis=kurtosis,
        studentized_range=studentized_range,
        dispersion=dispersion,
    )
