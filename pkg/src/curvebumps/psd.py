"""Symmetric eigendecomposition, PSD verdicts, and PSD-cone projection.

The PSD tolerance is relative: a matrix passes when its smallest
eigenvalue is >= -tol * (1 + max |entry|), so verdicts are stable across
the moment-magnitude range of different scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _as_sym(a):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    return a


def eigen_sym(a):
    """Eigenvalues in descending order and matching orthonormal columns."""
    a = _as_sym(a)
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    return w[::-1].copy(), v[:, ::-1].copy()


def min_eigenvalue(a) -> float:
    w, _ = eigen_sym(a)
    return float(w[-1])


@dataclass(frozen=True)
class PsdVerdict:
    ok: bool
    min_eigenvalue: float
    witness: np.ndarray | None = None  # eigenvector with w'Aw < 0 when not ok


def is_psd(a, tol: float = 1e-8) -> PsdVerdict:
    """PSD within relative tolerance; on failure, returns a refuting vector."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    a = _as_sym(a)
    w, v = eigen_sym(a)
    scale = 1.0 + (np.abs(a).max() if a.size else 0.0)
    lam = float(w[-1])
    if lam >= -tol * scale:
        return PsdVerdict(True, lam, None)
    return PsdVerdict(False, lam, v[:, -1].copy())


def psd_project(a):
    """Nearest PSD matrix in Frobenius norm: clamp negative eigenvalues."""
    a = _as_sym(a)
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    w = np.maximum(w, 0.0)
    out = (v * w) @ v.T
    return 0.5 * (out + out.T)
