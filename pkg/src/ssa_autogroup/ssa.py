"""Basic singular spectrum analysis: embedding, SVD, grouping, diagonal averaging.

Component indices in the public API are 1-based, matching the usual SSA
notation ``X = X_1 + ... + X_d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IndexOutOfRank,
    LengthMismatch,
    NonFiniteInput,
    NumericalFailure,
    WindowOutOfRange,
)

# lambda_i counts as nonzero iff lambda_i > RANK_RTOL * lambda_1
RANK_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class TimeSeries:
    values: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput("series contains NaN or Inf")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(values):
                raise LengthMismatch("labels and values differ in length")
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.values)


def as_series(series) -> TimeSeries:
    if isinstance(series, TimeSeries):
        return series
    return TimeSeries(np.asarray(series, dtype=float))


def default_window(n: int) -> int:
    return n // 2


def check_window(n: int, L: int) -> None:
    if n < 4:
        raise WindowOutOfRange(f"series length {n} < 4; no valid window length exists")
    if not (2 <= L <= n // 2):
        raise WindowOutOfRange(f"window length L={L} outside [2, {n // 2}] for N={n}")


@dataclass(frozen=True, eq=False)
class TrajectoryMatrix:
    entries: np.ndarray
    series: TimeSeries

    @property
    def L(self) -> int:
        return self.entries.shape[0]

    @property
    def K(self) -> int:
        return self.entries.shape[1]


def embed(series, L: int) -> TrajectoryMatrix:
    """Hankel trajectory matrix whose column ``c`` is ``(y_c, ..., y_{c+L-1})``."""
    ts = as_series(series)
    n = len(ts)
    check_window(n, L)
    y = ts.values
    X = np.lib.stride_tricks.sliding_window_view(y, L).T.copy()
    X.setflags(write=False)
    return TrajectoryMatrix(X, ts)


def diagonal_average(M) -> np.ndarray:
    """Average the anti-diagonals of ``M`` into a series of length ``L + K - 1``."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or min(M.shape) < 1:
        raise LengthMismatch(f"expected a nonempty 2-d matrix, got shape {M.shape}")
    L, K = M.shape
    idx = np.add.outer(np.arange(L), np.arange(K)).ravel()
    sums = np.bincount(idx, weights=M.ravel(), minlength=L + K - 1)
    counts = np.bincount(idx, minlength=L + K - 1)
    return sums / counts


@dataclass(frozen=True, eq=False)
class SsaDecomposition:
    """Eigentriples of a trajectory matrix, sorted by decreasing eigenvalue.

    ``U`` is ``L x d`` and ``V`` is ``K x d``; column ``i-1`` holds the
    triple with 1-based index ``i``.
    """

    L: int
    K: int
    eigenvalues: np.ndarray
    U: np.ndarray
    V: np.ndarray
    series: TimeSeries
    all_eigenvalues: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return self.L + self.K - 1

    @property
    def d(self) -> int:
        return len(self.eigenvalues)

    @property
    def singular_values(self) -> np.ndarray:
        return np.sqrt(self.eigenvalues)

    def elementary_matrix(self, i: int) -> np.ndarray:
        self._check_indices([i])
        k = i - 1
        return self.singular_values[k] * np.outer(self.U[:, k], self.V[:, k])

    @cached_property
    def elementary_series(self) -> np.ndarray:
        """``d x N`` array; row ``i-1`` is the diagonal average of ``X_i``."""
        out = np.empty((self.d, self.N))
        for k in range(self.d):
            out[k] = diagonal_average(self.singular_values[k] * np.outer(self.U[:, k], self.V[:, k]))
        out.setflags(write=False)
        return out

    def _check_indices(self, indices: Iterable[int]) -> list[int]:
        idx = sorted(set(int(i) for i in indices))
        if idx and (idx[0] < 1 or idx[-1] > self.d):
            raise IndexOutOfRank(f"indices {idx} not contained in {{1, ..., {self.d}}}")
        return idx


def decompose(X: TrajectoryMatrix) -> SsaDecomposition:
    try:
        U, s, Vt = np.linalg.svd(X.entries, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    lam = s**2
    if lam.size == 0 or lam[0] <= 0.0:
        d = 0
    else:
        d = int(np.count_nonzero(lam > RANK_RTOL * lam[0]))
    U = U[:, :d].copy()
    V = Vt[:d].T.copy()
    # first nonzero coordinate of each u_i positive
    for k in range(d):
        nz = np.flatnonzero(U[:, k])
        if nz.size and U[nz[0], k] < 0:
            U[:, k] *= -1.0
            V[:, k] *= -1.0
    for a in (U, V, lam):
        a.setflags(write=False)
    return SsaDecomposition(
        L=X.L, K=X.K, eigenvalues=lam[:d], U=U, V=V, series=X.series, all_eigenvalues=lam
    )


def ssa(series, L: int | None = None) -> SsaDecomposition:
    ts = as_series(series)
    return decompose(embed(ts, default_window(len(ts)) if L is None else L))


def reconstruct(dec: SsaDecomposition, indices: Sequence[int]) -> np.ndarray:
    """Diagonal average of ``sum_{i in indices} X_i``."""
    idx = dec._check_indices(indices)
    if not idx:
        raise IndexOutOfRank("index set must be nonempty")
    k = np.asarray(idx) - 1
    M = (dec.U[:, k] * dec.singular_values[k]) @ dec.V[:, k].T
    return diagonal_average(M)


@dataclass(frozen=True, eq=False)
class SignalNoiseSplit:
    g: int
    S: np.ndarray
    Z: np.ndarray
    U: np.ndarray
    weights: np.ndarray


def split(dec: SsaDecomposition, g: int) -> SignalNoiseSplit:
    """Signal from components ``1..g``, residual from ``g+1..d``."""
    from .separability import u_series, weights

    if not (1 <= g <= dec.d):
        raise IndexOutOfRank(f"g={g} outside [1, {dec.d}]")
    y = dec.series.values
    if g == dec.d:
        # I_2 is empty: the residual is exactly zero by definition
        S, Z = y.copy(), np.zeros_like(y)
    else:
        S = dec.elementary_series[:g].sum(axis=0)
        Z = y - S
    w = weights(dec.N, dec.L)
    return SignalNoiseSplit(g=g, S=S, Z=Z, U=u_series(S, Z, w), weights=w)
