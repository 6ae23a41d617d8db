"""Dense vector/matrix plumbing.

Arrays are plain float64 numpy arrays; the constructors here are the
single entry point that enforces finiteness, so everything downstream
may assume NaN/Inf-free data.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError, UsageError


def vector(data) -> np.ndarray:
    """Validated 1-d float64 array. Rejects NaN/Inf and wrong rank."""
    v = np.asarray(data, dtype=np.float64)
    if v.ndim != 1:
        raise UsageError(f"expected a 1-d vector, got array of shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise UsageError("vector entries must be finite (no NaN/Inf)")
    return v


def matrix(data) -> np.ndarray:
    """Validated 2-d float64 array. Rejects NaN/Inf and wrong rank."""
    a = np.asarray(data, dtype=np.float64)
    if a.ndim != 2:
        raise UsageError(f"expected a 2-d matrix, got array of shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise UsageError("matrix entries must be finite (no NaN/Inf)")
    return a


def matvec(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product with an explicit shape check."""
    a = np.asarray(a, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if a.ndim != 2 or x.ndim != 1 or a.shape[1] != x.shape[0]:
        raise UsageError(
            f"matvec shape mismatch: matrix is {a.shape}, vector is {x.shape}"
        )
    return a @ x


def two_norm(v: np.ndarray) -> float:
    """Euclidean norm; 0.0 for the empty vector."""
    v = np.asarray(v, dtype=np.float64)
    if v.size == 0:
        return 0.0
    return float(np.linalg.norm(v))


def normalize_columns(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scale every column to unit Euclidean norm.

    Returns (scaled matrix, original column norms). A zero column has no
    direction to keep, so it is rejected rather than silently dropped.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise UsageError(f"expected a 2-d matrix, got array of shape {a.shape}")
    norms = np.linalg.norm(a, axis=0)
    zero = np.where(norms == 0.0)[0]
    if zero.size > 0:
        raise DegenerateInputError(f"column {int(zero[0])} is identically zero")
    return a / norms, norms
