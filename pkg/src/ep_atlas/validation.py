"""Input checks shared across modules."""

from __future__ import annotations

import numpy as np

MIN_DIM = 2
MAX_DIM = 8


def as_matrix(H, *, min_dim: int = MIN_DIM, max_dim: int = MAX_DIM) -> np.ndarray:
    """Return ``H`` as a finite square complex array of allowed size.

    Raises
    ------
    ValueError
        If ``H`` is not square, has an unsupported size, or holds NaN/Inf.
    """
    A = np.asarray(H, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if not min_dim <= n <= max_dim:
        raise ValueError(f"matrix dimension {n} outside [{min_dim}, {max_dim}]")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def norm(H: np.ndarray) -> float:
    """Max-row-sum norm, the scale used by every relative tolerance."""
    return float(np.abs(H).sum(axis=1).max())


def check_positive(name: str, value: float) -> float:
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return float(value)
