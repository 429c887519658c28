"""Monte-Carlo study: signal plus i.i.d. Gaussian noise, both grouping methods."""

from __future__ import annotations

import enum
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import NumericalFailure
from .hc import hc_grouping
from .inference import Correction, infer_grouping
from .ssa import decompose, embed
from .wbdd import BootstrapConfig

log = logging.getLogger(__name__)


class Signal(str, enum.Enum):
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"


TRUE_G = {Signal.F1: 2, Signal.F2: 1, Signal.F3: 4}


def signal_value(kind: Signal | str, t):
    kind = Signal(kind)
    t = np.asarray(t, dtype=float)
    if kind is Signal.F1:
        return np.sin(2 * np.pi * t / 3)
    if kind is Signal.F2:
        return np.exp(0.2 * t)
    return 0.7 * np.cos(np.pi * t / 2) + 0.5 * np.cos(np.pi * t / 3)


@dataclass(frozen=True)
class Scenario:
    signal: Signal
    snr: float
    N: int = 50
    L: int | None = None
    reps: int = 100
    alpha: float = 0.1
    cfg: BootstrapConfig = field(default_factory=BootstrapConfig)
    correction: Correction = Correction.HOLM
    linkage: str = "complete"
    hc_clusters: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "signal", Signal(self.signal))
        object.__setattr__(self, "correction", Correction(self.correction))
        if not self.snr > 0:
            raise ValueError(f"snr must be positive, got {self.snr}")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")

    @property
    def window(self) -> int:
        return self.N // 2 if self.L is None else self.L

    @property
    def g_star(self) -> int:
        return TRUE_G[self.signal]

    @property
    def id(self) -> str:
        return f"{self.signal.value}_snr{self.snr:g}"


def generate_series(scen: Scenario, rng: np.random.Generator) -> np.ndarray:
    """``f(t) + eps_t`` for ``t = 1..N`` with ``eps ~ N(0, Var(f)/SNR)``; Var is the sample variance."""
    f = signal_value(scen.signal, np.arange(1, scen.N + 1))
    sd = np.sqrt(np.var(f, ddof=1) / scen.snr)
    return f + sd * rng.standard_normal(scen.N)


@dataclass(frozen=True)
class StudyRow:
    signal: str
    snr: float
    reps: int
    mean_g_hat: float
    sd_g_hat: float
    fwer_hat: float
    mean_g_hc: float
    sd_g_hc: float
    g_star: int
    failures: int = 0
    g_hat: tuple[int, ...] = field(default=(), repr=False)
    g_hc: tuple[int, ...] = field(default=(), repr=False)

    CSV_COLUMNS = ("signal", "snr", "reps", "mean_g_hat", "sd_g_hat", "fwer_hat", "mean_g_hc", "sd_g_hc", "g_star")


def rep_streams(seed: int, scenario_index: int, rep: int):
    """(noise generator, bootstrap seed) for one repetition."""
    noise = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(scenario_index, rep, 0)))
    boot_seed = int(np.random.SeedSequence(seed, spawn_key=(scenario_index, rep, 1)).generate_state(1)[0])
    return noise, boot_seed


def run_rep(scen: Scenario, seed: int, scenario_index: int, rep: int) -> tuple[int, int]:
    noise, boot_seed = rep_streams(seed, scenario_index, rep)
    y = generate_series(scen, noise)
    dec = decompose(embed(y, scen.window))
    res = infer_grouping(dec, replace(scen.cfg, seed=boot_seed), scen.correction, scen.alpha)
    return res.g_hat, hc_grouping(dec, scen.linkage, scen.hc_clusters).g_hc


def _sd(x: np.ndarray) -> float:
    return float(np.std(x, ddof=1)) if len(x) > 1 else 0.0


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SSA_AUTOGROUP_THREADS", "1")))
    except ValueError:
        return 1


def run_scenario(scen: Scenario, seed: int, scenario_index: int = 0) -> StudyRow:
    def task(rep):
        try:
            return run_rep(scen, seed, scenario_index, rep)
        except NumericalFailure as exc:
            log.warning("%s rep %d failed: %s", scen.id, rep, exc)
            return None

    threads = thread_count()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            out = list(pool.map(task, range(scen.reps)))
    else:
        out = [task(r) for r in range(scen.reps)]
    ok = [o for o in out if o is not None]
    g_hat = np.array([o[0] for o in ok])
    g_hc = np.array([o[1] for o in ok])
    return StudyRow(
        signal=scen.signal.value,
        snr=scen.snr,
        reps=scen.reps,
        mean_g_hat=float(g_hat.mean()) if ok else float("nan"),
        sd_g_hat=_sd(g_hat),
        fwer_hat=float(np.mean(g_hat > scen.g_star)) if ok else float("nan"),
        mean_g_hc=float(g_hc.mean()) if ok else float("nan"),
        sd_g_hc=_sd(g_hc),
        g_star=scen.g_star,
        failures=len(out) - len(ok),
        g_hat=tuple(int(x) for x in g_hat),
        g_hc=tuple(int(x) for x in g_hc),
    )


def run_study(scenarios: Sequence[Scenario], seed: int) -> list[StudyRow]:
    """One row per scenario; streams are keyed by (seed, scenario position, rep)."""
    rows = []
    for k, scen in enumerate(scenarios):
        log.info("scenario %s: %d reps", scen.id, scen.reps)
        rows.append(run_scenario(scen, seed, k))
    return rows
