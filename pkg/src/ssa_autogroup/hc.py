"""Grouping by hierarchical clustering of the w-correlation matrix (baseline).

Components are clustered on ``1 - |wcorr|`` and the tree is cut into
``max(2, d // 2)`` clusters by default, the customary default for automatic
w-correlation grouping; the cluster count is a parameter.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform

from .errors import RankTooSmall
from .separability import wcorr_matrix
from .ssa import SsaDecomposition

LINKAGES = ("single", "complete", "average")


@dataclass(frozen=True)
class HcGrouping:
    # ordered by smallest member; clusters[0] holds component 1
    clusters: tuple[tuple[int, ...], ...]
    g_hc: int


def dissimilarity(dec: SsaDecomposition) -> np.ndarray:
    D = 1.0 - wcorr_matrix(dec)
    np.fill_diagonal(D, 0.0)
    return np.clip(D, 0.0, 1.0)


def default_cluster_count(d: int) -> int:
    return max(2, d // 2)


def cut_tree(D: np.ndarray, n_clusters: int, method: str = "complete") -> np.ndarray:
    """Cluster labels numbered by first appearance, so component 1 is in cluster 0."""
    if method not in LINKAGES:
        raise ValueError(f"linkage must be one of {LINKAGES}, got {method!r}")
    Z = linkage(squareform(D, checks=False), method=method)
    raw = fcluster(Z, t=n_clusters, criterion="maxclust")
    _, first = np.unique(raw, return_index=True)
    rank = {lab: k for k, lab in enumerate(raw[np.sort(first)])}
    return np.array([rank[lab] for lab in raw])


def hc_grouping(dec: SsaDecomposition, method: str = "complete", n_clusters: int | None = None) -> HcGrouping:
    """Largest component index in the cluster that contains component 1."""
    d = dec.d
    if d < 2:
        warnings.warn(f"rank d={d} < 2; nothing to cluster, returning g_hc=1", RankTooSmall, stacklevel=2)
        return HcGrouping(clusters=(tuple(range(1, d + 1)),) if d else (), g_hc=1)
    k = default_cluster_count(d) if n_clusters is None else n_clusters
    labels = cut_tree(dissimilarity(dec), min(k, d), method)
    idx = np.arange(1, d + 1)
    clusters = tuple(tuple(int(i) for i in idx[labels == c]) for c in range(labels.max() + 1))
    return HcGrouping(clusters=clusters, g_hc=max(clusters[0]))
