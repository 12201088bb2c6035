from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from moment_bounds.conf import DEFAULT_CONFIG
from moment_bounds.errors import (
    InvalidFunctional,
    NoConvergence,
    NonNegligibleImaginaryTrace,
    NotHermitian,
    OrderTooSmall,
)

logger = logging.getLogger(__name__)

HERMITIAN_TOL = DEFAULT_CONFIG.hermitian_tol
IMAG_TRACE_TOL = DEFAULT_CONFIG.imag_trace_tol
FUNCTIONAL_TRACE_TOL = DEFAULT_CONFIG.functional_trace_tol
JACOBI_TOL = DEFAULT_CONFIG.jacobi_tol
JACOBI_MAX_SWEEPS = DEFAULT_CONFIG.jacobi_max_sweeps


# ================
# TYPES
# ================
@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """n x n complex matrix; entries are copied and never mutated."""
    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise OrderTooSmall("square matrix of order >= 1 required", {"shape": a.shape})
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> SquareMatrix:
        return cls(np.asarray(rows, dtype=complex))

    @classmethod
    def from_complex_pairs(cls, n: int, pairs: Sequence[Sequence[float]]) -> SquareMatrix:
        """Row-major [re, im] pairs."""
        if len(pairs) != n * n:
            raise OrderTooSmall(f"expected {n * n} entries, got {len(pairs)}", {"n": n})
        flat = [complex(re, im) for re, im in pairs]
        return cls(np.asarray(flat, dtype=complex).reshape(n, n))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.entries.imag == 0))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        a = self.entries
        scale = float(np.max(np.abs(a)))
        return float(np.max(np.abs(a - a.conj().T))) <= tol * scale

    def shifted(self, c: float) -> SquareMatrix:
        return SquareMatrix(self.entries + c * np.eye(self.n))

    def scaled(self, c: float) -> SquareMatrix:
        return SquareMatrix(c * self.entries)

    def characteristic_coefficients(self) -> Tuple[float, ...]:
        """Monic characteristic polynomial, highest degree first (real parts)."""
        return tuple(float(c) for c in np.real(np.poly(self.entries)))


@dataclass(frozen=True)
class CenteredTraces:
    """Traces of powers of B = A - (trA/n) I."""
    n: int
    trA: float
    trB2: float
    trB3: float
    trB4: float

    @property
    def mean(self) -> float:
        return self.trA / self.n

    @property
    def m2(self) -> float:
        return self.trB2 / self.n

    @property
    def m4(self) -> float:
        return self.trB4 / self.n

    @property
    def is_scalar(self) -> bool:
        return self.trB2 == 0 and self.trB4 == 0


@dataclass(frozen=True, eq=False)
class DensityFunctional:
    """
    phi(X) = trace(W X) for a Hermitian, positive semidefinite W of unit trace.

    Validated on construction; the semidefiniteness check uses the eigen oracle.
    """
    weight: np.ndarray

    def __post_init__(self) -> None:
        w = np.array(self.weight, dtype=complex)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise InvalidFunctional("weight must be a square matrix", {"shape": w.shape})
        mat = SquareMatrix(w)
        if not mat.is_hermitian():
            raise InvalidFunctional("weight is not Hermitian")
        trace = complex(np.trace(w))
        if abs(trace - 1) > FUNCTIONAL_TRACE_TOL:
            raise InvalidFunctional("weight trace must be 1", {"trace": trace.real})
        smallest = eigen_oracle(mat)[0]
        if smallest < -FUNCTIONAL_TRACE_TOL:
            raise InvalidFunctional(
                "weight is not positive semidefinite", {"min_eigenvalue": smallest}
            )
        w.setflags(write=False)
        object.__setattr__(self, "weight", w)

    @classmethod
    def uniform(cls, n: int) -> DensityFunctional:
        """W = I/n: the normalized trace."""
        return cls(np.eye(n) / n)

    @classmethod
    def vector_state(cls, v: Sequence[complex]) -> DensityFunctional:
        """W = v v* / |v|^2."""
        vec = np.asarray(v, dtype=complex)
        norm_sq = float(np.vdot(vec, vec).real)
        if norm_sq == 0:
            raise InvalidFunctional("vector state needs a nonzero vector")
        return cls(np.outer(vec, vec.conj()) / norm_sq)

    @property
    def n(self) -> int:
        return int(self.weight.shape[0])

    def __call__(self, x: np.ndarray) -> complex:
        return complex(np.trace(self.weight @ x))


@dataclass(frozen=True)
class FunctionalMoments:
    """phi(A) and phi(B^k) for B = A - phi(A) I."""
    phiA: float
    phiB2: float
    phiB3: float
    phiB4: float


# ================
# TRACES
# ================
def centered_traces(A: SquareMatrix, imag_tol: float = IMAG_TRACE_TOL) -> CenteredTraces:
    """tr A and tr B^2, tr B^3, tr B^4 from two matrix products."""
    a = A.entries
    n = A.n
    tr_a = complex(np.trace(a))
    b = a - (tr_a / n) * np.eye(n)
    b2 = b @ b
    traces = {
        1: tr_a,
        2: complex(np.trace(b2)),
        3: complex(np.trace(b2 @ b)),
        4: complex(np.trace(b2 @ b2)),
    }

    scale = max(1.0, float(np.linalg.norm(b)))
    for k, t in traces.items():
        if abs(t.imag) > imag_tol * scale**k:
            raise NonNegligibleImaginaryTrace(
                f"tr B^{k} has imaginary part {t.imag}", {"power": k, "imag": t.imag}
            )

    return CenteredTraces(n, traces[1].real, traces[2].real, traces[3].real, traces[4].real)


def spectrum_to_traces(eigs: Sequence[float]) -> CenteredTraces:
    """The same statistics from a known real spectrum."""
    x = np.asarray(eigs, dtype=float)
    n = int(x.size)
    if n < 1:
        raise OrderTooSmall("spectrum needs at least one eigenvalue", {"n": n})
    tr_a = float(np.sum(x))
    if np.all(x == x[0]):
        d = np.zeros_like(x)
    else:
        d = x - tr_a / n
    d2 = d * d
    return CenteredTraces(
        n=n,
        trA=tr_a,
        trB2=float(np.sum(d2)),
        trB3=float(np.sum(d2 * d)),
        trB4=float(np.sum(d2 * d2)),
    )


def functional_moments(A: SquareMatrix, phi: DensityFunctional) -> FunctionalMoments:
    if not A.is_hermitian():
        raise NotHermitian("functional bounds need a Hermitian matrix")
    if phi.n != A.n:
        raise InvalidFunctional(
            "weight order differs from matrix order", {"n": A.n, "weight_n": phi.n}
        )

    a = A.entries
    phi_a = phi(a).real
    b = a - phi_a * np.eye(A.n)
    b2 = b @ b
    return FunctionalMoments(
        phiA=phi_a,
        phiB2=phi(b2).real,
        phiB3=phi(b2 @ b).real,
        phiB4=phi(b2 @ b2).real,
    )


# ================
# EIGEN ORACLE
# ================
def _jacobi_eigenvalues(a: np.ndarray, tol: float, max_sweeps: int) -> List[float]:
    """Cyclic Jacobi on a real symmetric matrix."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    if n == 1 or norm == 0:
        return sorted(float(v) for v in np.diag(a))

    for sweep in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < tol * norm:
            logger.debug("jacobi converged after %d sweeps (n=%d)", sweep, n)
            return sorted(float(v) for v in np.diag(a))

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                sign = 1.0 if theta >= 0 else -1.0
                t = sign / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q

                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q

                a[p, q] = a[q, p] = 0.0

    raise NoConvergence(f"no convergence after {max_sweeps} sweeps", {"n": n})


def eigen_oracle(A: SquareMatrix, tol: float = JACOBI_TOL,
                 max_sweeps: int = JACOBI_MAX_SWEEPS) -> List[float]:
    """Ascending eigenvalues of a Hermitian matrix (verification path only)."""
    if not A.is_hermitian():
        raise NotHermitian("eigen oracle needs a Hermitian matrix")
    a = A.entries
    h = (a + a.conj().T) / 2

    if A.is_real:
        return _jacobi_eigenvalues(h.real, tol, max_sweeps)

    # X + iY  ->  [[X, -Y], [Y, X]]: same spectrum, every eigenvalue twice
    x, y = h.real, h.imag
    embedded = np.block([[x, -y], [y, x]])
    doubled = _jacobi_eigenvalues(embedded, tol, max_sweeps)
    return doubled[::2]
