from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from moment_bounds.conf import DEFAULT_CONFIG
from moment_bounds.errors import (
    DegreeTooSmall,
    NotMonic,
    NotRealRootFeasible,
    ZeroFourthMoment,
)
from moment_bounds.models import FLAG_NEGATIVE_OPERAND, Bound, Direction, Target, kth_root
from moment_bounds.moment_inequalities import max_j_coefficient

logger = logging.getLogger(__name__)

FEASIBILITY_TOL = DEFAULT_CONFIG.feasibility_tol


@dataclass(frozen=True)
class Polynomial:
    """Monic real polynomial, coefficients from x^n down to the constant term."""
    coefficients: Tuple[float, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise DegreeTooSmall("degree >= 1 required", {"degree": len(coeffs) - 1})
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        if coeffs[0] != 1.0:
            raise NotMonic("leading coefficient must be exactly 1", {"leading": coeffs[0]})
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_roots(cls, roots: Sequence[float]) -> Polynomial:
        return cls(tuple(float(c) for c in np.real(np.poly(np.asarray(roots, dtype=float)))))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class DepressedForm:
    """
    p(y + shift) with a vanishing y^(n-1) term.

    a3, a4 and m4 are None when the degree is too small to carry them.
    """
    degree: int
    shift: float
    coefficients: Tuple[float, ...]
    a2: float
    a3: Optional[float]
    a4: Optional[float]
    m2: float
    m4: Optional[float]


def _taylor_shift(coeffs: Sequence[float], s: float) -> List[float]:
    """Coefficients of p(y + s), highest first, by repeated synthetic division by (x - s)."""
    work = list(coeffs)
    low_first: List[float] = []
    while work:
        quotient: List[float] = []
        acc = 0.0
        for c in work:
            acc = acc * s + c
            quotient.append(acc)
        low_first.append(quotient.pop())
        work = quotient
    return low_first[::-1]


def depress(p: Polynomial) -> DepressedForm:
    n = p.degree
    if n < 2:
        raise DegreeTooSmall("degree >= 2 required for a2", {"degree": n})

    shift = -p.coefficients[1] / n
    d = _taylor_shift(p.coefficients, shift) if shift != 0 else list(p.coefficients)

    a2 = d[2]
    a3 = d[3] if n >= 3 else None
    a4 = d[4] if n >= 4 else None

    m2 = -2 * a2 / n
    if m2 < -FEASIBILITY_TOL * max(1.0, abs(a2)):
        raise NotRealRootFeasible("negative second root moment", {"m2": m2, "a2": a2})
    m2 = max(m2, 0.0)

    m4 = None
    if a4 is not None:
        m4 = 2 / n * (a2 * a2 - 2 * a4)
        if m4 < -FEASIBILITY_TOL * max(1.0, a2 * a2, abs(a4)):
            raise NotRealRootFeasible("negative fourth root moment", {"m4": m4, "a2": a2, "a4": a4})
        m4 = max(m4, 0.0)

    logger.debug("depressed degree-%d polynomial by shift %s", n, shift)
    return DepressedForm(n, shift, tuple(d), a2, a3, a4, m2, m4)


def _fourth_power_sum(d: DepressedForm) -> float:
    """a2^2 - 2 a4, half the fourth power sum of the roots."""
    if d.a4 is None:
        raise DegreeTooSmall("a4 needs degree >= 4", {"degree": d.degree})
    return max(d.a2 * d.a2 - 2 * d.a4, 0.0)


def root_bounds(d: DepressedForm, n: Optional[int] = None) -> Tuple[Bound, Bound]:
    """Upper bound on the smallest root and lower bound on the largest, for n >= 5."""
    n = d.degree if n is None else n
    if n < 5:
        raise DegreeTooSmall("n >= 5 required", {"degree": n})
    q = _fourth_power_sum(d)
    if q <= 0:
        raise ZeroFourthMoment("all roots coincide", {"a2": d.a2, "a4": d.a4})

    k = (n * n - 3 * n + 3) / (n**3 * (n - 1) ** 3)
    offset = kth_root(8 * k * d.a2 * d.a2 * (d.a2 * d.a2 / q), 4)
    scale = max(1.0, abs(d.shift), offset)
    return (
        Bound(Target.MIN_VALUE, Direction.UPPER, d.shift - offset, "pgen3", scale=scale),
        Bound(Target.MAX_VALUE, Direction.LOWER, d.shift + offset, "pgen4", scale=scale),
    )


def span_bounds(d: DepressedForm, n: Optional[int] = None) -> List[Bound]:
    """pgen5, pgen6, pgen7, then pgen8 for odd n. Invariant under the depression shift."""
    n = d.degree if n is None else n
    q = _fourth_power_sum(d)
    a2_sq = d.a2 * d.a2

    def span(value: float, formula_id: str) -> Bound:
        return Bound(Target.SPAN, Direction.LOWER, value, formula_id, scale=max(1.0, value))

    bounds = [
        span(kth_root(8 * (q / n + 6 * a2_sq / n**2), 4), "pgen5"),
        span(kth_root(2 * n**3 * q / max_j_coefficient(n), 4), "pgen6"),
    ]

    assert d.a4 is not None
    operand = d.a2 * (2 * d.a4 - a2_sq)
    pgen7 = span(kth_root(243 / n**2 * operand, 6), "pgen7")
    if operand < -FEASIBILITY_TOL * max(1.0, abs(d.a2) * q):
        logger.warning("pgen7 operand %s < 0: roots cannot all be real", operand)
        pgen7 = pgen7.with_flag(FLAG_NEGATIVE_OPERAND)
    bounds.append(pgen7)

    if n % 2 == 1:
        bounds.append(span(kth_root(8 * n / (n * n - 1) * (q + 6 * a2_sq / n), 4), "pgen8"))
    return bounds
