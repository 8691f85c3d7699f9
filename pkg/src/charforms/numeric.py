"""Dense complex linear algebra kernel.

Thin wrappers around numpy/scipy with SVD-threshold rank decisions.  All rank
and nullspace computations go through the same relative cutoff so dimension
counts elsewhere in the library are consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, SingularMatrix

__all__ = [
    "Tolerances",
    "as_cmatrix",
    "svd_rank",
    "rank_and_gap",
    "nullspace_basis",
    "orth_basis",
    "solve_lsq",
    "matrix_exp",
    "matrix_inverse",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout the library."""

    rank_rel: float = 1e-10   # relative singular-value cutoff
    newton_tol: float = 1e-12  # Gauss-Newton residual bound
    fd_step: float = 1e-4      # base finite-difference step

    def __post_init__(self):
        if not (self.rank_rel > 0 and self.newton_tol > 0 and self.fd_step > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.rank_rel >= 1:
            raise ValueError("rank_rel must be < 1")


DEFAULT_TOL = Tolerances()


def as_cmatrix(data) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting non-finite entries."""
    m = np.asarray(data, dtype=np.complex128)
    if m.ndim == 1:
        m = m[:, None]
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix has non-finite entries")
    return m


def _svdvals(m: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.svdvals(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise ConvergenceFailure(f"SVD failed: {exc}") from exc


def rank_and_gap(m, tol: Tolerances = DEFAULT_TOL):
    """Rank by relative cutoff plus the gap ratio smallest-kept/largest-dropped.

    The gap ratio is inf when nothing is dropped (or nothing kept); callers
    use it to detect untrustworthy rank decisions.
    """
    m = as_cmatrix(m)
    if m.size == 0:
        return 0, np.inf
    s = _svdvals(m)
    if s[0] == 0.0:
        return 0, np.inf
    cutoff = tol.rank_rel * s[0]
    rank = int(np.sum(s > cutoff))
    if rank == 0 or rank == len(s):
        return rank, np.inf
    return rank, float(s[rank - 1] / s[rank])


def svd_rank(m, tol: Tolerances = DEFAULT_TOL) -> int:
    return rank_and_gap(m, tol)[0]


def nullspace_basis(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal nullspace basis as columns of the returned matrix."""
    m = as_cmatrix(m)
    if m.shape[0] == 0:
        return np.eye(m.shape[1], dtype=np.complex128)
    try:
        _, s, vh = scipy.linalg.svd(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ConvergenceFailure(f"SVD failed: {exc}") from exc
    if len(s) == 0 or s[0] == 0.0:
        return np.eye(m.shape[1], dtype=np.complex128)
    rank = int(np.sum(s > tol.rank_rel * s[0]))
    return vh[rank:].conj().T


def orth_basis(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of m."""
    m = as_cmatrix(m)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    u, s, _ = scipy.linalg.svd(m, full_matrices=False)
    if len(s) == 0 or s[0] == 0.0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    rank = int(np.sum(s > tol.rank_rel * s[0]))
    return u[:, :rank]


def solve_lsq(a, b) -> np.ndarray:
    """Minimum-norm least-squares solution of a x = b."""
    a = as_cmatrix(a)
    b = np.asarray(b, dtype=np.complex128)
    x, *_ = scipy.linalg.lstsq(a, b, lapack_driver="gelsd")
    return x


def matrix_exp(m) -> np.ndarray:
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("matrix_exp requires a square matrix")
    return scipy.linalg.expm(m)


def matrix_inverse(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("matrix_inverse requires a square matrix")
    s = _svdvals(m)
    if s[-1] <= tol.rank_rel * s[0] or s[-1] == 0.0:
        raise SingularMatrix(
            f"condition estimate {s[0] / max(s[-1], np.finfo(float).tiny):.3e} "
            f"exceeds 1/rank_rel"
        )
    return np.linalg.inv(m)
