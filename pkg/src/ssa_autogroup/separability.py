"""Weighted scalar products and w-correlations of SSA components."""

from __future__ import annotations

import warnings

import numpy as np

from .errors import DegenerateComponent, DegenerateComponentWarning, LengthMismatch
from .ssa import SsaDecomposition, check_window

NORM_RTOL = 1e-10


def weights(N: int, L: int) -> np.ndarray:
    """Number of occurrences of each ``y_t`` in the ``L``-trajectory matrix.

    ``w_t = min(t, L, N - t + 1)`` for ``t = 1..N``.
    """
    check_window(N, L)
    t = np.arange(1, N + 1)
    return np.minimum(np.minimum(t, L), N - t + 1)


def _pair(S, Z, w):
    S = np.asarray(S, dtype=float)
    Z = np.asarray(Z, dtype=float)
    w = np.asarray(w)
    if not (S.shape == Z.shape == w.shape) or S.ndim != 1:
        raise LengthMismatch(f"shapes {S.shape}, {Z.shape}, {w.shape} do not agree")
    return S, Z, w


def wscalar(S, Z, w) -> float:
    S, Z, w = _pair(S, Z, w)
    return float(np.sum(w * S * Z))


def wnorm(S, w) -> float:
    return float(np.sqrt(wscalar(S, S, w)))


def norm_tolerance(scale: float, w) -> float:
    """Weighted norms at or below this count as a null component."""
    return NORM_RTOL * (scale * np.sqrt(np.sum(w)) + 1e-300)


def wcorr(S, Z, w, scale: float | None = None) -> float:
    """w-correlation of two series.

    ``scale`` is the magnitude the degeneracy tolerance is relative to; it
    defaults to the largest absolute entry of ``S`` and ``Z``.
    """
    S, Z, w = _pair(S, Z, w)
    if scale is None:
        scale = max(np.max(np.abs(S)), np.max(np.abs(Z)))
    tol = norm_tolerance(scale, w)
    nS, nZ = wnorm(S, w), wnorm(Z, w)
    if nS <= tol or nZ <= tol:
        raise DegenerateComponent(
            f"weighted norm below tolerance {tol:.3g} (|S|_w={nS:.3g}, |Z|_w={nZ:.3g})"
        )
    return float(np.clip(wscalar(S, Z, w) / (nS * nZ), -1.0, 1.0))


def wcorr_matrix(dec: SsaDecomposition) -> np.ndarray:
    """Absolute w-correlations between the elementary reconstructed components."""
    d = dec.d
    if d < 1:
        raise DegenerateComponent("decomposition has no nonzero components")
    w = weights(dec.N, dec.L)
    F = dec.elementary_series
    norms = np.sqrt(np.einsum("t,it,it->i", w, F, F))
    tol = norm_tolerance(float(np.max(np.abs(dec.series.values))), w)
    bad = norms <= tol
    if bad.any():
        warnings.warn(
            f"components {list(np.flatnonzero(bad) + 1)} have null weighted norm; "
            "their w-correlations are reported as 0",
            DegenerateComponentWarning,
            stacklevel=2,
        )
    safe = np.where(bad, 1.0, norms)
    G = (F * w) @ F.T / np.outer(safe, safe)
    C = np.clip(np.abs(G), 0.0, 1.0)
    C[bad, :] = 0.0
    C[:, bad] = 0.0
    C = 0.5 * (C + C.T)
    np.fill_diagonal(C, np.where(bad, 0.0, 1.0))
    return C


def u_series(S, Z, w) -> np.ndarray:
    """Summands ``w_t S_t Z_t`` of the weighted scalar product."""
    S, Z, w = _pair(S, Z, w)
    return w * S * Z
