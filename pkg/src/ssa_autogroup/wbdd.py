"""Wild bootstrap for dependent data.

Pseudo-observations are ``R*_t = (R_t - Rbar_lv) * eta_t + Rbar`` where
``Rbar_lv`` is the tapered moving-block mean and ``eta`` is a moving
tapered sum of i.i.d. auxiliary draws, so neighbouring multipliers are
correlated over a span of ``ell`` observations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BlockTooLarge, DegenerateWindow, LengthMismatch

TRAPEZOID_C = 0.43


def triangle(t):
    t = np.asarray(t, dtype=float)
    return np.where((t > 0) & (t <= 0.5), t, np.where((t > 0.5) & (t < 1), 1 - t, 0.0))


def trapezoid043(t, c: float = TRAPEZOID_C):
    t = np.asarray(t, dtype=float)
    inside = (t >= 0) & (t <= 1)
    v = np.minimum(np.minimum(t / c, 1.0), (1 - t) / c)
    return np.where(inside, np.clip(v, 0.0, 1.0), 0.0)


class WindowKind(str, enum.Enum):
    TRIANGLE = "triangle"
    TRAPEZOID_043 = "trapezoid043"
    CUSTOM = "custom"


@dataclass(frozen=True)
class TaperWindow:
    kind: WindowKind
    evaluator: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)

    @classmethod
    def from_name(cls, name: str) -> "TaperWindow":
        kind = WindowKind(name)
        if kind is WindowKind.TRIANGLE:
            return cls(kind, triangle)
        if kind is WindowKind.TRAPEZOID_043:
            return cls(kind, trapezoid043)
        raise ValueError("custom windows need an evaluator; construct TaperWindow directly")

    @property
    def name(self) -> str:
        return self.kind.value


def window_weights(win: TaperWindow, ell: int):
    """Return ``(v_ell, ||v_ell||_1, ||v_ell||_2)`` with ``v_ell(t) = v((t - 0.5)/ell)``."""
    if ell < 1:
        raise BlockTooLarge(f"block size must be >= 1, got {ell}")
    t = np.arange(1, ell + 1)
    v = np.asarray(win.evaluator((t - 0.5) / ell), dtype=float)
    l1, l2 = float(np.sum(np.abs(v))), float(np.sqrt(np.sum(v * v)))
    if l1 <= 0:
        raise DegenerateWindow(f"{win.kind.value} window vanishes for ell={ell}")
    return v, l1, l2


# ---------------------------------------------------------------------------
# auxiliary i.i.d. sequences; contract: E a = 0, Var(sqrt(ell) a) = 1


def gaussian_aux(rng: np.random.Generator, size, ell: int) -> np.ndarray:
    return rng.standard_normal(size) / np.sqrt(ell)


AUX_REGISTRY: dict[str, Callable[[np.random.Generator, object, int], np.ndarray]] = {
    "gaussian": gaussian_aux,
}

# Named presets used in the simulation literature. Slots exist so that the
# harness can refer to them, but their distributions are not defined here.
AUX_PRESETS = ("a3", "a4", "a5", "a7")


def register_aux(name: str, sampler) -> None:
    AUX_REGISTRY[name] = sampler


@dataclass(frozen=True)
class AuxSequenceSpec:
    kind: str = "gaussian"

    def __post_init__(self):
        if self.kind not in AUX_REGISTRY and self.kind not in AUX_PRESETS:
            raise ValueError(f"unknown auxiliary sequence {self.kind!r}")

    def sample(self, rng: np.random.Generator, size, ell: int) -> np.ndarray:
        try:
            sampler = AUX_REGISTRY[self.kind]
        except KeyError:
            raise NotImplementedError(
                f"auxiliary preset {self.kind!r} has no registered distribution; "
                "add one with register_aux()"
            ) from None
        return sampler(rng, size, ell)


def auto_block_size(n: int) -> int:
    return max(2, int(round(n ** 0.2)))


@dataclass(frozen=True)
class BootstrapConfig:
    ell: int | str = "auto"
    window: str = "triangle"
    aux: str = "gaussian"
    B: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.ell != "auto" and (not isinstance(self.ell, (int, np.integer)) or self.ell < 1):
            raise ValueError(f"ell must be a positive integer or 'auto', got {self.ell!r}")
        if self.B < 99:
            raise ValueError(f"B must be >= 99, got {self.B}")
        WindowKind(self.window)
        AuxSequenceSpec(self.aux)

    def block_size(self, n: int) -> int:
        ell = auto_block_size(n) if self.ell == "auto" else int(self.ell)
        if ell >= n:
            raise BlockTooLarge(f"block size {ell} must be smaller than N={n}")
        return ell

    @property
    def taper(self) -> TaperWindow:
        return TaperWindow.from_name(self.window)

    @property
    def aux_spec(self) -> AuxSequenceSpec:
        return AuxSequenceSpec(self.aux)

    def as_dict(self) -> dict:
        return {"ell": self.ell, "window": self.window, "aux": self.aux, "B": self.B, "seed": self.seed}


def tapered_block_mean(R, win: TaperWindow, ell: int) -> float:
    R = np.asarray(R, dtype=float)
    n = len(R)
    if ell > n:
        raise BlockTooLarge(f"block size {ell} exceeds series length {n}")
    v, l1, _ = window_weights(win, ell)
    # block j covers R_j..R_{j+ell-1}; correlate keeps v aligned with i
    blocks = np.correlate(R, v / l1, mode="valid")
    return float(np.mean(blocks))


def eta_matrix(a, win: TaperWindow, ell: int, n: int) -> np.ndarray:
    """Multipliers ``eta_t = sum_j v_ell(t-j+1)/||v||_2 * sqrt(ell) * a_j``.

    ``a`` has shape ``(Q,)`` or ``(B, Q)`` with ``Q = n - ell + 1``; the
    result has the matching shape with last axis ``n``.
    """
    a = np.asarray(a, dtype=float)
    q = n - ell + 1
    if a.shape[-1] != q:
        raise LengthMismatch(f"expected {q} auxiliary draws, got {a.shape[-1]}")
    v, _, l2 = window_weights(win, ell)
    k = v / l2 * np.sqrt(ell)
    # draw j feeds t = j..j+ell-1 with weight k[t-j]
    M = np.zeros((q, n))
    rows = np.arange(q)
    for s in range(ell):
        M[rows, rows + s] = k[s]
    return a @ M


def eta_vector(a, win: TaperWindow, ell: int, n: int) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 1:
        raise LengthMismatch("eta_vector takes a single draw sequence")
    return eta_matrix(a, win, ell, n)


def pseudo_observations(R, a, win: TaperWindow, ell: int) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    eta = eta_matrix(a, win, ell, len(R))
    return (R - tapered_block_mean(R, win, ell)) * eta + R.mean()


def resample(R, cfg: BootstrapConfig, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """One pseudo-observation vector (or ``size`` of them, stacked row-wise)."""
    R = np.asarray(R, dtype=float)
    n = len(R)
    ell = cfg.block_size(n)
    q = n - ell + 1
    shape = q if size is None else (size, q)
    a = cfg.aux_spec.sample(rng, shape, ell)
    return pseudo_observations(R, a, cfg.taper, ell)
