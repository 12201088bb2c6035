from dataclasses import dataclass


@dataclass(frozen=True)
class BoundsConfig:
    """Tolerances, loop guards and print precision."""

    # SAMPLES
    # Weights must sum to 1 within this before renormalization
    weight_sum_tol: float = 1e-12

    # VERDICTS
    # |slack| <= equality_tol * scale counts as equality (scale = max(1, r**k))
    equality_tol: float = 1e-12
    # slack >= -soundness_tol * max(1, |actual|, |value|) counts as satisfied
    soundness_tol: float = 1e-9
    # Moment feasibility checks (mu2 vs (M - mean)(mean - m), mu2' vs mu1'^2)
    feasibility_tol: float = 1e-12

    # MATRICES
    hermitian_tol: float = 1e-10         # relative to max |a_ij|
    imag_trace_tol: float = 1e-9         # relative to ||B||_F ** k
    functional_trace_tol: float = 1e-10  # |tr W - 1|, min eig(W) >= -tol
    discriminant_tol: float = 1e-12
    jacobi_tol: float = 1e-12            # off-diagonal mass relative to ||A||_F
    jacobi_max_sweeps: int = 100

    # COMBINATORICS
    # Guard for the exhaustive max over j = 1..n-1
    max_loop_n: int = 10**6

    # REPORTS
    text_digits: int = 6
    rounded_digits: int = 4
    erratum_tol: float = 5e-4


DEFAULT_CONFIG = BoundsConfig()
