from .conf import BoundsConfig
from .errors import BoundsError
from .models import Bound, Direction, SuiteResult, Target
from .moment_inequalities import run_suite
from .poly_bounds import Polynomial, depress, root_bounds, span_bounds
from .sample_moments import SupportInterval, WeightedSample, compute_moments
from .spectral_bounds import spectral_report
from .trace_engine import DensityFunctional, SquareMatrix, centered_traces, eigen_oracle

__all__ = [
    "BoundsConfig",
    "BoundsError",
    "Bound",
    "Direction",
    "SuiteResult",
    "Target",
    "run_suite",
    "Polynomial",
    "depress",
    "root_bounds",
    "span_bounds",
    "SupportInterval",
    "WeightedSample",
    "compute_moments",
    "spectral_report",
    "DensityFunctional",
    "SquareMatrix",
    "centered_traces",
    "eigen_oracle",
]
