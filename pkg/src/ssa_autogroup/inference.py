"""Bootstrap tests of zero w-correlation and FWER-controlled choice of the grouping index."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateComponentWarning
from .separability import norm_tolerance, wnorm
from .ssa import SsaDecomposition, as_series, decompose, embed, split
from .wbdd import BootstrapConfig, resample


class Correction(str, enum.Enum):
    SIDAK = "sidak"
    HOLM = "holm"


def test_statistic(U) -> float:
    return float(np.sum(U))


test_statistic.__test__ = False  # keep pytest from collecting the import


def bootstrap_statistics(U, cfg: BootstrapConfig, rng: np.random.Generator) -> np.ndarray:
    """``B`` bootstrap sums drawn under the null from the centered summands."""
    U = np.asarray(U, dtype=float)
    R = U - U.mean()
    return resample(R, cfg, rng, size=cfg.B).sum(axis=1)


def pvalue_from_draws(t_obs: float, t_boot) -> float:
    t_boot = np.asarray(t_boot, dtype=float)
    return (int(np.count_nonzero(np.abs(t_boot) >= abs(t_obs))) + 1) / (len(t_boot) + 1)


def bootstrap_pvalue(U, cfg: BootstrapConfig, rng: np.random.Generator) -> tuple[float, float]:
    """Two-sided bootstrap test of ``E[sum U] = 0``; returns ``(T_obs, p)``."""
    t_obs = test_statistic(U)
    return t_obs, pvalue_from_draws(t_obs, bootstrap_statistics(U, cfg, rng))


def sidak_adjust(p, m: int | None = None) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    m = len(p) if m is None else m
    return 1.0 - (1.0 - p) ** m


def holm_reject(p, alpha: float) -> np.ndarray:
    """Holm step-down: walk sorted p-values against ``alpha / (m - j + 1)``."""
    p = np.asarray(p, dtype=float)
    m = len(p)
    order = np.argsort(p, kind="stable")
    rejected = np.zeros(m, dtype=bool)
    for j, k in enumerate(order, start=1):
        if p[k] > alpha / (m - j + 1):
            break
        rejected[k] = True
    return rejected


def holm_adjust(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    m = len(p)
    order = np.argsort(p, kind="stable")
    scaled = (m - np.arange(m)) * p[order]
    adj = np.empty(m)
    adj[order] = np.minimum(np.maximum.accumulate(scaled), 1.0)
    return adj


def select_g(rejected) -> int:
    """One plus the largest rejected index (1-based), or 1 when nothing is rejected."""
    hits = np.flatnonzero(np.asarray(rejected, dtype=bool))
    return int(hits[-1]) + 2 if hits.size else 1


@dataclass(frozen=True)
class HypothesisTestResult:
    g: int
    T_obs: float
    p_raw: float
    p_adjusted: float
    rejected: bool
    degenerate: bool = False


@dataclass(frozen=True)
class GroupingResult:
    results: tuple[HypothesisTestResult, ...]
    correction: Correction
    alpha: float
    g_hat: int
    d: int
    L: int
    N: int
    config: BootstrapConfig = field(default_factory=BootstrapConfig)

    @property
    def p_raw(self) -> np.ndarray:
        return np.array([r.p_raw for r in self.results])

    @property
    def rejected(self) -> np.ndarray:
        return np.array([r.rejected for r in self.results], dtype=bool)


def g_stream(seed: int, g: int) -> np.random.Generator:
    """Independent generator for hypothesis ``g`` under master ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(g,)))


def apply_correction(p_raw, correction: Correction | str, alpha: float):
    correction = Correction(correction)
    if correction is Correction.SIDAK:
        adj = sidak_adjust(p_raw)
        return adj, adj <= alpha
    return holm_adjust(p_raw), holm_reject(p_raw, alpha)


def infer_grouping(
    dec: SsaDecomposition,
    cfg: BootstrapConfig,
    correction: Correction | str = Correction.HOLM,
    alpha: float = 0.1,
) -> GroupingResult:
    """Test ``H_g`` for ``g = 1..d-1`` on an existing decomposition."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    correction = Correction(correction)
    y = dec.series.values
    scale = float(np.max(np.abs(y)))
    stats, pvals, degenerate = [], [], []
    for g in range(1, dec.d):
        sp = split(dec, g)
        t_obs = test_statistic(sp.U)
        tol = norm_tolerance(scale, sp.weights)
        if wnorm(sp.S, sp.weights) <= tol or wnorm(sp.Z, sp.weights) <= tol:
            warnings.warn(f"null component at g={g}; H_{g} not rejected", DegenerateComponentWarning, stacklevel=2)
            p = 1.0
            degenerate.append(True)
        else:
            p = pvalue_from_draws(t_obs, bootstrap_statistics(sp.U, cfg, g_stream(cfg.seed, g)))
            degenerate.append(False)
        stats.append(t_obs)
        pvals.append(p)
    adj, rej = apply_correction(pvals, correction, alpha) if pvals else ([], [])
    results = tuple(
        HypothesisTestResult(g, stats[k], pvals[k], float(adj[k]), bool(rej[k]), degenerate[k])
        for k, g in enumerate(range(1, dec.d))
    )
    return GroupingResult(
        results=results,
        correction=correction,
        alpha=alpha,
        g_hat=select_g([r.rejected for r in results]),
        d=dec.d,
        L=dec.L,
        N=dec.N,
        config=cfg,
    )


def run_inference(
    series,
    L: int | None,
    cfg: BootstrapConfig,
    correction: Correction | str = Correction.HOLM,
    alpha: float = 0.1,
) -> GroupingResult:
    """Embed, decompose and select the grouping index; deterministic in ``cfg.seed``."""
    ts = as_series(series)
    L = len(ts) // 2 if L is None else L
    return infer_grouping(decompose(embed(ts, L)), cfg, correction, alpha)
