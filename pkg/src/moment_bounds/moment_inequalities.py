from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from moment_bounds.conf import DEFAULT_CONFIG
from moment_bounds.errors import (
    BoundOverflow,
    BoundsError,
    DegenerateMean,
    EvenN,
    InconsistentMoments,
    MeanOutOfSupport,
    NonpositiveSupport,
    OrderTooSmall,
    VarianceInfeasible,
    ZeroFourthMoment,
    ZeroVariance,
)
from moment_bounds.models import (
    Bound,
    Direction,
    Skipped,
    SuiteResult,
    Target,
    degree_scale,
)
from moment_bounds.sample_moments import (
    MomentSet,
    SupportInterval,
    WeightedSample,
    compute_moments,
    validate_support,
)

logger = logging.getLogger(__name__)

FEASIBILITY_TOL = DEFAULT_CONFIG.feasibility_tol
MAX_LOOP_N = DEFAULT_CONFIG.max_loop_n

UPPER = Direction.UPPER
LOWER = Direction.LOWER

# Inequalities stated for m_r (equal weights over n data points)
COUNT_BASED_IDS = ("ge5", "mge27", "mage7", "mage5", "mge10", "mge13", "mge28", "mge29",
                   "mge32", "mge33", "mge34")


@dataclass(frozen=True)
class Mu4Coefficients:
    """alpha, beta of the quartic bound mu4 <= alpha*mu2 + beta."""
    alpha: float
    beta: float


# ================
# HELPERS
# ================
def _positions(mu1p: float, interval: SupportInterval) -> Tuple[float, float]:
    """(mean - m, M - mean), clamped at 0 when the mean sits on an endpoint up to rounding."""
    tol = FEASIBILITY_TOL * max(1.0, abs(interval.m), abs(interval.M))
    if mu1p < interval.m - tol or mu1p > interval.M + tol:
        raise MeanOutOfSupport(
            f"mean {mu1p} outside [{interval.m}, {interval.M}]",
            {"mean": mu1p, "m": interval.m, "M": interval.M},
        )
    return max(mu1p - interval.m, 0.0), max(interval.M - mu1p, 0.0)


def _require_n(n: int, minimum: int = 2) -> None:
    if n < minimum:
        raise OrderTooSmall(f"n >= {minimum} required", {"n": n})


def _count_factor(n: int) -> float:
    """(n^2 - 3n + 3) / (n - 1)^3."""
    return (n * n - 3 * n + 3) / (n - 1) ** 3


def _location_scale(*xs: float) -> float:
    return max([1.0] + [abs(x) for x in xs])


def max_j_coefficient(n: int) -> int:
    """
    max over j = 1..n-1 of j(n-j)(n^2 - 3nj + 3j^2), by exhaustive loop.

    Shared by the m4 count bound, the matrix spread bound and the polynomial span bound.
    """
    if n < 2:
        raise OrderTooSmall("n >= 2 required", {"n": n})
    if n > MAX_LOOP_N:
        raise ValueError(f"n={n} exceeds loop guard {MAX_LOOP_N}")
    best = 0
    for j in range(1, n):
        term = j * (n - j) * (n * n - 3 * n * j + 3 * j * j)
        if term > best:
            best = term
    return best


# ================
# INTERVAL-ONLY BOUNDS
# ================
def classical_bounds(interval: SupportInterval) -> List[Bound]:
    """|mu3| <= r^3/(6*sqrt 3), mu4 <= r^4/12, mu2 <= r^2/4."""
    r = interval.range
    return [
        Bound(Target.MU3_ABS, UPPER, r**3 / (6 * math.sqrt(3)), "ge1", scale=degree_scale(r, 3)),
        Bound(Target.MU4, UPPER, r**4 / 12, "ge1", scale=degree_scale(r, 4)),
        Bound(Target.MU2, UPPER, r**2 / 4, "ge2", scale=degree_scale(r, 2)),
    ]


def mean_aware_variance_bound(mu1p: float, interval: SupportInterval) -> Bound:
    a, b = _positions(mu1p, interval)
    return Bound(Target.MU2, UPPER, a * b, "age1", scale=degree_scale(interval.range, 2))


def mu3_interval(mu1p: float, mu2: float, interval: SupportInterval) -> Tuple[Bound, Bound]:
    """Two-sided bound on mu3 from mean, variance and support."""
    scale = degree_scale(interval.range, 3)
    if mu2 <= 0:
        return (Bound(Target.MU3, LOWER, 0.0, "ge3", scale=scale),
                Bound(Target.MU3, UPPER, 0.0, "ge3", scale=scale))
    a, b = _positions(mu1p, interval)
    if a == 0 or b == 0:
        raise DegenerateMean(
            "mean on an endpoint with positive variance",
            {"mean": mu1p, "mu2": mu2, "m": interval.m, "M": interval.M},
        )
    lower = mu2 * (mu2 - a * a) / a
    upper = mu2 * (b * b - mu2) / b
    return (Bound(Target.MU3, LOWER, lower, "ge3", scale=scale),
            Bound(Target.MU3, UPPER, upper, "ge3", scale=scale))


def ge4_check(mu2: float, mu3: float, interval: SupportInterval) -> Bound:
    if mu2 <= 0:
        raise ZeroVariance("mu2 > 0 required", {"mu2": mu2})
    r = interval.range
    composite = mu2 + (mu3 / (2 * mu2)) ** 2
    return Bound(Target.COMPOSITE_MU2_MU3, UPPER, r * r / 4, "ge4",
                 actual=composite, scale=degree_scale(r, 2))


def generalized_samuelson(n: int, r: int, xj: float, xbar: float) -> Bound:
    """Lower bound on m_{2r} from a single deviation x_j - xbar."""
    _require_n(n)
    if r < 1:
        raise ValueError(f"r >= 1 required, got {r}")
    coefficient = (1.0 + float(n - 1) ** -(2 * r - 1)) / n
    dev = abs(xj - xbar)
    target = {1: Target.MU2, 2: Target.MU4}.get(r, Target.M2R)
    try:
        power = dev ** (2 * r)
    except OverflowError as exc:
        raise BoundOverflow(
            f"|x_j - xbar|^{2 * r} overflows", {"deviation": dev, "r": r}
        ) from exc
    return Bound(target, LOWER, coefficient * power, "ge5", scale=max(1.0, power))


def brunk_bounds(n: int, xbar: float, interval: SupportInterval) -> Tuple[Bound, Bound]:
    """m2 <= (n-1)(xbar-m)^2 and m2 <= (n-1)(M-xbar)^2."""
    _require_n(n)
    scale = degree_scale(interval.range, 2)
    return (
        Bound(Target.MU2, UPPER, (n - 1) * (xbar - interval.m) ** 2, "mge27", scale=scale),
        Bound(Target.MU2, UPPER, (n - 1) * (interval.M - xbar) ** 2, "mge27", scale=scale),
    )


def brunk_extrema_bounds(n: int, m2: float, xbar: float) -> Tuple[Bound, Bound]:
    """Same inequalities read as bounds on the smallest and largest data value."""
    _require_n(n)
    offset = math.sqrt(max(m2, 0.0) / (n - 1))
    scale = _location_scale(xbar, offset)
    return (
        Bound(Target.MIN_VALUE, UPPER, xbar - offset, "mage7", scale=scale),
        Bound(Target.MAX_VALUE, LOWER, xbar + offset, "mage7", scale=scale),
    )


# ================
# FOURTH MOMENT
# ================
def mu4_upper_bound(
    mu1p: float, mu2: float, interval: SupportInterval
) -> Tuple[Mu4Coefficients, Bound]:
    a, b = _positions(mu1p, interval)
    r = interval.range
    ab = a * b
    if mu2 < 0 or mu2 > ab + FEASIBILITY_TOL * max(1.0, r * r):
        raise VarianceInfeasible(
            "mu2 must lie in [0, (M - mean)(mean - m)]",
            {"mu2": mu2, "limit": ab},
        )
    alpha = 0.75 * r * r - 2 * ab
    beta = ab * (0.25 * r * r - ab)
    bound = Bound(Target.MU4, UPPER, alpha * mu2 + beta, "mge1", scale=degree_scale(r, 4))
    return Mu4Coefficients(alpha, beta), bound


def mu4p_upper(mu1p: float, mu2p: float, interval: SupportInterval) -> Bound:
    """Upper bound on the fourth raw moment from the first two raw moments."""
    if mu2p < mu1p * mu1p - FEASIBILITY_TOL * max(1.0, abs(mu2p)):
        raise InconsistentMoments("mu2' < mu1'^2", {"mu1p": mu1p, "mu2p": mu2p})
    m, M = interval.m, interval.M
    s = m + M
    r = M - m
    value = (0.75 * s * s - m * M) * mu2p + 0.25 * s * r * r * mu1p - 0.25 * m * M * s * s
    return Bound(Target.MU4P, UPPER, value, "mge6", scale=degree_scale(max(abs(m), abs(M)), 4))


def fourth_moment_sum_bounds(mu1p: float, interval: SupportInterval) -> Tuple[Bound, Bound]:
    """
    mu4 + 3 mu2^2 <= r^2 (mean - m)(M - mean) <= r^4 / 4.

    Returns (mean-aware, mean-free).
    """
    a, b = _positions(mu1p, interval)
    r = interval.range
    scale = degree_scale(r, 4)
    return (
        Bound(Target.SUM_MU4_3MU2SQ, UPPER, r * r * a * b, "mge7", scale=scale),
        Bound(Target.SUM_MU4_3MU2SQ, UPPER, r**4 / 4, "mge7", scale=scale),
    )


def fourth_moment_sum_refinement(moments: MomentSet) -> Bound:
    # mu2^2 <= (mu4 + 3 mu2^2) / 4
    total = moments.mu4 + 3 * moments.mu2**2
    return Bound(Target.SUM_MU4_3MU2SQ, LOWER, 4 * moments.mu2**2, "mge7r",
                 actual=total, scale=max(1.0, total))


def odd_count_sum_bound(n: int, interval: SupportInterval) -> Bound:
    if n % 2 == 0:
        raise EvenN("odd n required; use the mean-free r^4/4 bound for even n", {"n": n})
    _require_n(n, 3)
    r = interval.range
    return Bound(Target.SUM_MU4_3MU2SQ, UPPER, (n * n - 1) / (4 * n * n) * r**4, "mge10",
                 scale=degree_scale(r, 4))


def m4_count_bound(n: int, interval: SupportInterval) -> Bound:
    r = interval.range
    coefficient = max_j_coefficient(n) / n**4
    return Bound(Target.MU4, UPPER, coefficient * r**4, "mge13", scale=degree_scale(r, 4))


def m4_mean_aware_bound(xbar: float, interval: SupportInterval) -> Bound:
    a, b = _positions(xbar, interval)
    return Bound(Target.MU4, UPPER, a * b * (a * a + b * b - a * b), "mge14",
                 scale=degree_scale(interval.range, 4))


def variance_kurtosis_product_bound(interval: SupportInterval) -> Bound:
    r = interval.range
    return Bound(Target.PRODUCT_MU2MU4, UPPER, 4 * r**6 / 243, "mage1", scale=degree_scale(r, 6))


def mean_aware_product_bound(mu1p: float, interval: SupportInterval) -> Bound:
    """mu2 mu4 <= a^2 b^2 (r^2 - 3ab); its maximum over the mean is 4 r^6 / 243."""
    a, b = _positions(mu1p, interval)
    r = interval.range
    return Bound(Target.PRODUCT_MU2MU4, UPPER, a * a * b * b * (r * r - 3 * a * b), "mage3",
                 scale=degree_scale(r, 6))


# ================
# SKEWNESS / KURTOSIS
# ================
def pearson_check(moments: MomentSet) -> Bound:
    """Skewness-kurtosis relation in product form: mu2 mu4 >= mu3^2 + mu2^3."""
    mu2, mu3, mu4 = moments.mu2, moments.mu3, moments.mu4
    if mu2 <= 0:
        raise ZeroVariance("mu2 > 0 required", {"mu2": mu2})
    actual = mu2 * mu4
    return Bound(Target.PRODUCT_MU2MU4, LOWER, mu3 * mu3 + mu2**3, "mage6",
                 actual=actual, scale=max(1.0, actual))


def skewness_bounds(
    moments: MomentSet, interval: SupportInterval, ratios: bool = True
) -> List[Bound]:
    mu2, mu3, mu4 = moments.mu2, moments.mu3, moments.mu4
    r = interval.range
    scale = degree_scale(r, 6)
    middle = mu2 * mu4 - mu2**3
    popoviciu_cubic = r * r * mu2 * mu2 - 4 * mu2**3
    cap = r**6 / 108

    bounds = [
        Bound(Target.MU3_SQ, UPPER, middle, "mge16", actual=mu3 * mu3, scale=scale),
        Bound(Target.MU2MU4_MINUS_MU2CUBED, UPPER, cap, "mge16", actual=middle, scale=scale),
        Bound(Target.MU3_SQ, UPPER, popoviciu_cubic, "mge17", actual=mu3 * mu3, scale=scale),
        Bound(Target.R2MU2SQ_MINUS_4MU2CUBED, UPPER, cap, "mge17", actual=popoviciu_cubic,
              scale=scale),
    ]
    if not ratios:
        return bounds
    if mu2 <= 0:
        raise ZeroVariance("ratio forms need mu2 > 0", {"mu2": mu2})

    skew_sq = mu3 * mu3 / mu2**3
    kurt = mu4 / (mu2 * mu2)
    bounds.append(Bound(Target.SKEW_KURT_RATIO, UPPER, 4 / 27, "mge16s",
                        actual=skew_sq * skew_sq / kurt**3))
    q_sq = r * r / mu2
    bounds.append(Bound(Target.STUDENTIZED_RANGE_SQ, LOWER, skew_sq + 4, "mge17q",
                        actual=q_sq, scale=max(1.0, q_sq)))
    return bounds


def positive_support_mu3_bound(moments: MomentSet, interval: SupportInterval) -> Bound:
    """mu3 >= (mu2 - mu1'^2) mu2 / mu1' for data in (0, M]."""
    if interval.m <= 0:
        raise NonpositiveSupport("m > 0 required", {"m": interval.m})
    mu1p, mu2 = moments.mu1p, moments.mu2
    return Bound(Target.MU3, LOWER, (mu2 - mu1p * mu1p) / mu1p * mu2, "mge21",
                 actual=moments.mu3, scale=degree_scale(interval.M, 3))


def third_moment_bounds(moments: MomentSet, interval: SupportInterval) -> List[Bound]:
    """
    Two-sided bounds on mu2*mu3, mu3' and mu3, the raw-moment form of the mu3 interval,
    the positive-support lower bound (only when m > 0) and the upper bound on m
    (only when mu2 > 0).
    """
    mu1p, mu2, mu3, mu3p = moments.mu1p, moments.mu2, moments.mu3, moments.mu3p
    m, M = interval.m, interval.M
    a, b = _positions(mu1p, interval)
    r = interval.range
    s5 = degree_scale(r, 5)
    s3 = degree_scale(max(abs(m), abs(M)), 3)

    bounds = [
        Bound(Target.MU2MU3, LOWER, -4 / 27 * a**5, "mge19", actual=mu2 * mu3, scale=s5),
        Bound(Target.MU2MU3, UPPER, 4 / 27 * b**5, "mge19", actual=mu2 * mu3, scale=s5),
        Bound(Target.MU3P, LOWER, m * m * (m + 3 * mu1p) / 4, "mge20", actual=mu3p, scale=s3),
        Bound(Target.MU3P, UPPER, M * M * (M + 3 * mu1p) / 4, "mge20", actual=mu3p, scale=s3),
        Bound(Target.MU3, LOWER, -(a**3) / 4, "mage4", actual=mu3, scale=degree_scale(r, 3)),
        Bound(Target.MU3, UPPER, b**3 / 4, "mage4", actual=mu3, scale=degree_scale(r, 3)),
    ]

    # raw-moment form, evaluated in centered form:
    #   m mu2' + (m mu1' - mu2')^2 / a  ==  m mu2 + mu2^2 / a + 2 mu2 mu1' + mu1'^3
    if a > 0:
        lower = m * mu2 + mu2 * mu2 / a + 2 * mu2 * mu1p + mu1p**3
        bounds.append(Bound(Target.MU3P, LOWER, lower, "mge24", actual=mu3p, scale=s3))
    if b > 0:
        upper = M * mu2 - mu2 * mu2 / b + 2 * mu2 * mu1p + mu1p**3
        bounds.append(Bound(Target.MU3P, UPPER, upper, "mge24", actual=mu3p, scale=s3))

    if m > 0:
        bounds.append(positive_support_mu3_bound(moments, interval))

    if mu2 > 0:
        root = math.sqrt(mu3 * mu3 + 4 * mu2**3)
        # (root - mu3) / (2 mu2), rationalized when mu3 > 0
        if mu3 > 0:
            offset = 2 * mu2 * mu2 / (root + mu3)
        else:
            offset = (root - mu3) / (2 * mu2)
        bounds.append(Bound(Target.MIN_VALUE, UPPER, mu1p - offset, "mge26", actual=m,
                            scale=_location_scale(m, M)))
    return bounds


# ================
# COUNT-BASED m2 / m4
# ================
def _require_fourth_moment(moments: MomentSet) -> None:
    if moments.mu4 <= 0:
        raise ZeroFourthMoment("m4 > 0 required (constant sample)", {"m4": moments.mu4})


def _ratio_m2p4_over_m4(moments: MomentSet) -> float:
    mu2 = moments.mu2
    return mu2 * mu2 * (mu2 * mu2 / moments.mu4)


def m2_m4_ratio_bounds(n: int, moments: MomentSet, xbar: float,
                       interval: SupportInterval) -> Tuple[Bound, Bound]:
    """m2^4 / m4 bounded by each endpoint distance."""
    _require_n(n)
    _require_fourth_moment(moments)
    c = 1.0 / _count_factor(n)
    actual = _ratio_m2p4_over_m4(moments)
    scale = degree_scale(interval.range, 4)
    return (
        Bound(Target.RATIO_M2P4_OVER_M4, UPPER, c * (xbar - interval.m) ** 4, "mge28",
              actual=actual, scale=scale),
        Bound(Target.RATIO_M2P4_OVER_M4, UPPER, c * (interval.M - xbar) ** 4, "mge29",
              actual=actual, scale=scale),
    )


def extrema_bounds(n: int, moments: MomentSet, xbar: float) -> Tuple[Bound, Bound]:
    """
    Upper bound on the smallest and lower bound on the largest data value from m2, m4.
    At least as tight as the Brunk-form extrema bounds whenever m4/m2^2 <= (n^2-3n+3)/(n-1).
    """
    _require_n(n)
    _require_fourth_moment(moments)
    mu2 = moments.mu2
    # (k m2^4 / m4)^(1/4) == k^(1/4) sqrt(m2) (m2^2 / m4)^(1/4)
    offset = _count_factor(n) ** 0.25 * math.sqrt(mu2) * (mu2 * mu2 / moments.mu4) ** 0.25
    scale = _location_scale(xbar, offset)
    return (
        Bound(Target.MIN_VALUE, UPPER, xbar - offset, "mge32", scale=scale),
        Bound(Target.MAX_VALUE, LOWER, xbar + offset, "mge33", scale=scale),
    )


def dispersion_bound(
    n: int, interval: SupportInterval, moments: Optional[MomentSet] = None
) -> Bound:
    """Lower bound on kurtosis over V^4 for positive data, V = sqrt(m2) / xbar."""
    _require_n(n)
    if interval.m <= 0:
        raise NonpositiveSupport("positive data required", {"m": interval.m})
    bound = Bound(Target.KURTOSIS_OVER_V4, LOWER, _count_factor(n), "mge34")
    if moments is not None and moments.mu2 > 0:
        mu2 = moments.mu2
        # alpha4 / V^4 == m4 xbar^4 / m2^4
        actual = (moments.mu4 / (mu2 * mu2)) * (moments.mu1p * moments.mu1p / mu2) ** 2
        bound = bound.against(actual)
    return bound


# ================
# SUITE
# ================
class _SuiteRun:
    """
    Evaluates every applicable inequality against a sample's own moments.
    Each stage appends bounds; per-op errors become skipped entries.
    """

    def __init__(self, sample: WeightedSample, interval: SupportInterval):
        self.sample = sample
        self.interval = interval
        self.moments = compute_moments(sample, interval)
        self.tight = validate_support(sample)
        self.result = SuiteResult()

    def run(self) -> SuiteResult:
        # Stage 1: interval-only classics
        self._classical()

        # Stage 2: mean/variance driven bounds on mu2, mu3, mu4
        self._mean_aware()

        # Stage 3: fourth-moment family
        self._fourth_moment()

        # Stage 4: skewness and third moment
        self._skewness()

        # Stage 5: m_r inequalities (equal weights only)
        self._count_based()

        for b in self.result.violations:
            logger.warning("violated %s on %s: value=%r actual=%r", b.formula_id,
                           b.target.value, b.value, b.actual)
        return self.result

    # ---------- plumbing ----------

    def _add(self, bounds: Iterable[Bound]) -> None:
        self.result.bounds.extend(bounds)

    def _skip(self, formula_ids: Sequence[str], reason: str) -> None:
        for fid in formula_ids:
            logger.debug("skipped %s: %s", fid, reason)
            self.result.skipped.append(Skipped(fid, reason))

    def _attempt(self, formula_ids: Sequence[str], fn: Callable[[], Iterable[Bound]]) -> None:
        try:
            self._add(fn())
        except BoundsError as exc:
            self._skip(formula_ids, f"{type(exc).__name__}: {exc}")

    # ---------- stages ----------

    def _classical(self) -> None:
        mo = self.moments
        ge1_mu3, ge1_mu4, ge2 = classical_bounds(self.interval)
        self._add([ge1_mu3.against(abs(mo.mu3)), ge1_mu4.against(mo.mu4), ge2.against(mo.mu2)])

    def _mean_aware(self) -> None:
        mo, iv = self.moments, self.interval
        self._attempt(["age1"], lambda: [mean_aware_variance_bound(mo.mu1p, iv).against(mo.mu2)])
        self._attempt(
            ["ge3"], lambda: [b.against(mo.mu3) for b in mu3_interval(mo.mu1p, mo.mu2, iv)]
        )
        self._attempt(["ge4"], lambda: [ge4_check(mo.mu2, mo.mu3, iv)])

    def _fourth_moment(self) -> None:
        mo, iv = self.moments, self.interval
        total = mo.mu4 + 3 * mo.mu2**2
        product = mo.mu2 * mo.mu4
        self._attempt(["mge1"], lambda: [mu4_upper_bound(mo.mu1p, mo.mu2, iv)[1].against(mo.mu4)])
        self._attempt(["mge6"], lambda: [mu4p_upper(mo.mu1p, mo.mu2p, iv).against(mo.mu4p)])
        self._attempt(
            ["mge7"], lambda: [b.against(total) for b in fourth_moment_sum_bounds(mo.mu1p, iv)]
        )
        self._add([fourth_moment_sum_refinement(mo)])
        self._attempt(["mge14"], lambda: [m4_mean_aware_bound(mo.mu1p, iv).against(mo.mu4)])
        self._add([variance_kurtosis_product_bound(iv).against(product)])
        self._attempt(["mage3"], lambda: [mean_aware_product_bound(mo.mu1p, iv).against(product)])
        self._attempt(["mage6"], lambda: [pearson_check(mo)])

    def _skewness(self) -> None:
        mo, iv = self.moments, self.interval
        has_variance = mo.mu2 > 0
        self._add(skewness_bounds(mo, iv, ratios=has_variance))
        if not has_variance:
            self._skip(["mge16s", "mge17q"], "ratio forms need mu2 > 0")

        def third() -> List[Bound]:
            out = third_moment_bounds(mo, iv)
            # the strongest reading of "m" is the smallest data value
            return [b.against(self.tight.m) if b.formula_id == "mge26" else b for b in out]

        self._attempt(["mge19", "mge20", "mage4", "mge24", "mge21", "mge26"], third)
        if iv.m <= 0:
            self._skip(["mge21"], "NonpositiveSupport: m > 0 required")
        if not has_variance:
            self._skip(["mge26"], "needs mu2 > 0")

    def _count_based(self) -> None:
        mo, iv, n = self.moments, self.interval, self.sample.n
        if not self.sample.equal_weights:
            self._skip(COUNT_BASED_IDS, "requires equal weights")
            return
        if n < 2:
            self._skip(COUNT_BASED_IDS, "requires n >= 2")
            return

        xbar = mo.mu1p
        lo, hi = self.tight.m, self.tight.M
        xj = lo if abs(lo - xbar) >= abs(hi - xbar) else hi
        self._add([
            generalized_samuelson(n, 1, xj, xbar).against(mo.mu2),
            generalized_samuelson(n, 2, xj, xbar).against(mo.mu4),
        ])
        self._add(b.against(mo.mu2) for b in brunk_bounds(n, xbar, iv))
        low, high = brunk_extrema_bounds(n, mo.mu2, xbar)
        self._add([low.against(lo), high.against(hi)])

        total = mo.mu4 + 3 * mo.mu2**2
        mean_free = fourth_moment_sum_bounds(xbar, iv)[1]
        self._add([replace(mean_free, formula_id="mage5").against(total)])
        if n % 2 == 1 and n >= 3:
            self._add([odd_count_sum_bound(n, iv).against(total)])
        else:
            self._skip(["mge10"], "requires odd n >= 3")
        self._add([m4_count_bound(n, iv).against(mo.mu4)])

        self._attempt(["mge28", "mge29"], lambda: m2_m4_ratio_bounds(n, mo, xbar, iv))

        def extrema() -> List[Bound]:
            low_b, high_b = extrema_bounds(n, mo, xbar)
            return [low_b.against(lo), high_b.against(hi)]

        self._attempt(["mge32", "mge33"], extrema)

        if mo.mu2 > 0:
            self._attempt(["mge34"], lambda: [dispersion_bound(n, self.tight, mo)])
        else:
            self._skip(["mge34"], "needs m2 > 0")


def run_suite(sample: WeightedSample, interval: Optional[SupportInterval] = None) -> SuiteResult:
    """Every applicable inequality, each with its slack against the sample's own moments."""
    if interval is None:
        interval = validate_support(sample)
    return _SuiteRun(sample, interval).run()
