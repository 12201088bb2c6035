from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from moment_bounds.conf import DEFAULT_CONFIG
from moment_bounds.errors import (
    BoundsError,
    NegativeDiscriminant,
    NonpositiveDenominator,
    OrderTooSmall,
)
from moment_bounds.models import (
    FLAG_DEGENERATE,
    Bound,
    Direction,
    Skipped,
    Target,
    kth_root,
)
from moment_bounds.moment_inequalities import max_j_coefficient
from moment_bounds.trace_engine import CenteredTraces, FunctionalMoments

logger = logging.getLogger(__name__)

DISCRIMINANT_TOL = DEFAULT_CONFIG.discriminant_tol


def _require_order(t: CenteredTraces) -> None:
    if t.n < 2:
        raise OrderTooSmall("matrix order n >= 2 required", {"n": t.n})


def _ws_offset(t: CenteredTraces) -> float:
    return math.sqrt(max(t.trB2, 0.0) / (t.n * (t.n - 1)))


def _spread(value: float, formula_id: str) -> Bound:
    return Bound(Target.SPREAD, Direction.LOWER, value, formula_id, scale=max(1.0, abs(value)))


# ================
# EIGENVALUE EXTREMES
# ================
def ws_eigen_bounds(t: CenteredTraces) -> Tuple[Bound, Bound]:
    """lambda_min <= mean - s and lambda_max >= mean + s, s = sqrt(trB^2 / (n(n-1)))."""
    _require_order(t)
    s = _ws_offset(t)
    scale = max(1.0, abs(t.mean), s)
    return (
        Bound(Target.LAMBDA_MIN, Direction.UPPER, t.mean - s, "magen1", scale=scale),
        Bound(Target.LAMBDA_MAX, Direction.LOWER, t.mean + s, "magen1", scale=scale),
    )


def fourth_moment_eigen_bounds(t: CenteredTraces) -> Tuple[Bound, Bound]:
    """
    Eigenvalue extremes from tr B^2 and tr B^4.

    A scalar matrix (tr B^4 = 0) gives both bounds equal to the mean, flagged degenerate.
    """
    _require_order(t)
    n = t.n
    if t.trB4 <= 0:
        logger.debug("scalar matrix: eigen bounds collapse to the mean %s", t.mean)
        return (
            Bound(Target.LAMBDA_MIN, Direction.UPPER, t.mean, "mgen1", flags=(FLAG_DEGENERATE,)),
            Bound(Target.LAMBDA_MAX, Direction.LOWER, t.mean, "mgen2", flags=(FLAG_DEGENERATE,)),
        )
    coefficient = kth_root((n * n - 3 * n + 3) / (n**3 * (n - 1) ** 3), 4)
    offset = coefficient * t.trB2 / kth_root(t.trB4, 4)
    scale = max(1.0, abs(t.mean), offset)
    return (
        Bound(Target.LAMBDA_MIN, Direction.UPPER, t.mean - offset, "mgen1", scale=scale),
        Bound(Target.LAMBDA_MAX, Direction.LOWER, t.mean + offset, "mgen2", scale=scale),
    )


# ================
# CONDITION NUMBER
# ================
def ws_condition_bound(t: CenteredTraces) -> Bound:
    """Lower bound on lambda_max / lambda_min; positive definiteness is the caller's claim."""
    _require_order(t)
    s = _ws_offset(t)
    denominator = t.mean - s
    if denominator <= 0:
        raise NonpositiveDenominator("mean - s <= 0", {"denominator": denominator})
    value = 1 + 2 * s / denominator
    return Bound(Target.CONDITION_NUMBER, Direction.LOWER, value, "magen2", scale=value)


def condition_bound_fourth(t: CenteredTraces) -> Bound:
    _require_order(t)
    n = t.n
    if t.trB2 <= 0 or t.trB4 <= 0:
        return Bound(
            Target.CONDITION_NUMBER, Direction.LOWER, 1.0, "mgen4", flags=(FLAG_DEGENERATE,)
        )
    k = kth_root((n - 1) ** 3 / (n * (n * n - 3 * n + 3)), 4)
    denominator = k * kth_root(t.trB4, 4) * t.trA / t.trB2 - 1
    if denominator <= 0:
        raise NonpositiveDenominator(
            "condition bound denominator <= 0", {"denominator": denominator}
        )
    value = 1 + 2 / denominator
    return Bound(Target.CONDITION_NUMBER, Direction.LOWER, value, "mgen4", scale=value)


# ================
# SPREAD
# ================
def spread_bounds(t: CenteredTraces) -> List[Bound]:
    """
    Lower bounds on lambda_max - lambda_min, in fixed order:
    mgen11, mgen12 (odd n only), mgen13, magen3, magen4.
    """
    _require_order(t)
    n = t.n
    b2, b4 = max(t.trB2, 0.0), max(t.trB4, 0.0)
    power_sum = n * b4 + 3 * b2 * b2

    bounds = [_spread(kth_root(4 / n**2 * power_sum, 4), "mgen11")]
    if n % 2 == 1:
        bounds.append(_spread(kth_root(4 / (n * n - 1) * power_sum, 4), "mgen12"))
    bounds.append(_spread(kth_root(n**3 / max_j_coefficient(n) * b4, 4), "mgen13"))
    bounds.append(_spread(3 * kth_root(b2 * b4 / (12 * n * n), 6), "magen3"))
    bounds.append(_spread(kth_root(12 * b4 / n, 4), "magen4"))
    return bounds


def functional_spread_bounds(fm: FunctionalMoments,
                             discriminant_tol: float = DISCRIMINANT_TOL) -> List[Bound]:
    """
    Spread bounds from a positive unital functional: mgen5, mgen8, then the cube
    bound mgen9 and its refinement mgen10 (mgen10 >= mgen9 always).
    """
    p2, p3, p4 = fm.phiB2, fm.phiB3, fm.phiB4
    discriminant = p2 * p4 - p2**3
    if discriminant < -discriminant_tol * max(1.0, p2 * p4):
        raise NegativeDiscriminant(
            "phi(B^2) phi(B^4) < phi(B^2)^3",
            {"phiB2": p2, "phiB4": p4, "discriminant": discriminant},
        )
    discriminant = max(discriminant, 0.0)

    six_root3 = 6 * math.sqrt(3)
    return [
        _spread(kth_root(2 * math.sqrt(max(p4 + 3 * p2 * p2, 0.0)), 2), "mgen5"),
        _spread(kth_root(243 / 4 * p2 * p4, 6), "mgen8"),
        _spread(kth_root(six_root3 * abs(p3), 3), "mgen9"),
        _spread(kth_root(six_root3 * math.sqrt(discriminant), 3), "mgen10"),
    ]


# ================
# REPORT
# ================
@dataclass
class SpectralReport:
    lambda_min_upper: Bound
    lambda_max_lower: Bound
    eigen_bounds: List[Bound] = field(default_factory=list)
    spread_lowers: List[Bound] = field(default_factory=list)
    condition_lowers: List[Bound] = field(default_factory=list)
    skipped: List[Skipped] = field(default_factory=list)

    @property
    def bounds(self) -> List[Bound]:
        return self.eigen_bounds + self.spread_lowers + self.condition_lowers


def spectral_report(
    t: CenteredTraces, eigenvalues: Optional[Sequence[float]] = None
) -> SpectralReport:
    """
    Every eigen, spread and condition bound for `t`.

    With `eigenvalues` attached each bound carries the true value; condition bounds
    only when that spectrum is positive definite.
    """
    eigen = list(ws_eigen_bounds(t)) + list(fourth_moment_eigen_bounds(t))
    spreads = spread_bounds(t)
    conditions: List[Bound] = []
    skipped: List[Skipped] = []

    def attempt(formula_id: str, fn: Callable[[], Bound]) -> None:
        try:
            conditions.append(fn())
        except BoundsError as exc:
            logger.debug("skipped %s: %s", formula_id, exc)
            skipped.append(Skipped(formula_id, f"{type(exc).__name__}: {exc}"))

    attempt("magen2", lambda: ws_condition_bound(t))
    attempt("mgen4", lambda: condition_bound_fourth(t))

    if eigenvalues is not None:
        lo, hi = min(eigenvalues), max(eigenvalues)
        eigen = [b.against(lo if b.target is Target.LAMBDA_MIN else hi) for b in eigen]
        spreads = [b.against(hi - lo) for b in spreads]
        if lo > 0:
            conditions = [b.against(hi / lo) for b in conditions]

    lower_ends = [b for b in eigen if b.target is Target.LAMBDA_MIN]
    upper_ends = [b for b in eigen if b.target is Target.LAMBDA_MAX]
    lambda_min_upper = min(lower_ends, key=lambda b: b.value)
    lambda_max_lower = max(upper_ends, key=lambda b: b.value)
    return SpectralReport(
        lambda_min_upper=lambda_min_upper,
        lambda_max_lower=lambda_max_lower,
        eigen_bounds=eigen,
        spread_lowers=spreads,
        condition_lowers=conditions,
        skipped=skipped,
    )
