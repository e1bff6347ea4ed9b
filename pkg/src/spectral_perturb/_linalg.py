"""Small dense-matrix helpers shared by the modules."""
from __future__ import annotations

import numpy as np
import scipy.linalg as sla


class ConvergenceError(RuntimeError):
    """A dense factorisation or an iteration failed to converge."""


def as_matrix(T, square: bool = False) -> np.ndarray:
    """Validate ``T`` as a finite 2-d complex matrix and return a complex128 copy."""
    a = np.array(T, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    if square and a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def singular_values(T) -> np.ndarray:
    try:
        return sla.svdvals(np.asarray(T, dtype=np.complex128))
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc


def op_norm(T) -> float:
    """Spectral norm (largest singular value)."""
    return float(singular_values(T)[0])


def eigvals(T) -> np.ndarray:
    try:
        return sla.eigvals(np.asarray(T, dtype=np.complex128))
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceError(f"eigenvalue iteration did not converge: {exc}") from exc
