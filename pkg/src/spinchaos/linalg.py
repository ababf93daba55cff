"""Dense real-symmetric eigendecomposition with a fixed output contract.

Every spectrum in the package flows through :func:`eigh`.  The heavy
lifting is delegated to LAPACK through numpy; what this wrapper adds is
the contract downstream code relies on: validated symmetric input,
ascending eigenvalues, orthonormal eigenvectors, and a deterministic sign
convention (the largest-magnitude entry of each eigenvector, first index
on ties, is made positive).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError

SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues paired with orthonormal eigenvector columns."""

    values: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.values)


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Apply the sign convention column by column."""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eigh(matrix) -> Spectrum:
    """Full eigendecomposition of a dense real symmetric matrix.

    Raises ``ValueError`` if the input is not symmetric within
    ``SYMMETRY_RTOL`` (relative to its largest entry) and
    ``NumericalError`` if the underlying solver fails to converge.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    asym = float(np.max(np.abs(a - a.T)))
    if asym > SYMMETRY_RTOL * scale:
        raise ValueError(f"matrix is not symmetric: max |A - A^T| = {asym:g}")
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"symmetric eigensolver failed to converge: {exc}") from exc
    return Spectrum(values=values, vectors=fix_signs(vectors))
