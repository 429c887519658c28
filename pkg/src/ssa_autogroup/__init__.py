"""SSA denoising with grouping chosen by multiple testing of the w-correlation."""

from .errors import *  # noqa: F401,F403
from .hc import HcGrouping, hc_grouping
from .inference import (
    Correction,
    GroupingResult,
    HypothesisTestResult,
    bootstrap_pvalue,
    holm_adjust,
    holm_reject,
    infer_grouping,
    run_inference,
    select_g,
    sidak_adjust,
    test_statistic,
)
from .separability import u_series, wcorr, wcorr_matrix, weights, wnorm, wscalar
from .ssa import (
    SignalNoiseSplit,
    SsaDecomposition,
    TimeSeries,
    TrajectoryMatrix,
    decompose,
    diagonal_average,
    embed,
    reconstruct,
    split,
    ssa,
)
from .wbdd import AuxSequenceSpec, BootstrapConfig, TaperWindow, resample

__version__ = "0.1.0"
