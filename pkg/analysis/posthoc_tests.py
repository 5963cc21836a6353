"""
Posthoc tests module - Kruskal-Wallis omnibus test, Dunn's pairwise test and Holm adjustment.
"""
from itertools import combinations

import numpy as np
import pandas as pd
from scipy import stats
from statsmodels.stats.multitest import multipletests

SIGNIFICANCE_LEVELS = ((0.001, "***"), (0.01, "**"), (0.05, "*"))


def significance_stars(p_value):
    """
    Stars for an adjusted p-value: *** below 0.001, ** below 0.01, * below 0.05
    """
    if p_value is None or np.isnan(p_value):
        return ""
    for level, stars in SIGNIFICANCE_LEVELS:
        if p_value < level:
            return stars
    return ""


def holm_adjust(p_values):
    """
    Holm step-down adjustment

    Parameters:
    - p_values: Sequence of raw p-values

    Returns:
    - numpy array of adjusted p-values in the input order
    """
    p_values = np.asarray(p_values, dtype=np.float64)
    if p_values.size == 0:
        return p_values
    return multipletests(p_values, method="holm")[1]


def kruskal_wallis(samples):
    """
    Kruskal-Wallis H test over the groups

    Returns:
    - Tuple (H statistic, p-value); (0.0, 1.0) when every observation is identical
    """
    values = np.concatenate([np.asarray(s, dtype=np.float64) for s in samples])
    if np.all(values == values[0]):
        return 0.0, 1.0
    result = stats.kruskal(*samples)
    return float(result.statistic), float(result.pvalue)


def dunn_holm(samples, reference=None):
    """
    Dunn's test on pooled mid-ranks with tie correction, two-sided, Holm-adjusted

    Parameters:
    - samples: List of per-group observation lists (at least 2 groups of at least 2 values)
    - reference: Group index compared against every other group; None compares all pairs

    Returns:
    - DataFrame with columns group_a, group_b, z, p_raw, p_adjusted (one row per compared pair)
    """
    if len(samples) < 2 or any(len(s) < 2 for s in samples):
        raise ValueError("dunn_holm needs at least 2 groups with at least 2 samples each")

    groups = [np.asarray(s, dtype=np.float64) for s in samples]
    sizes = np.array([len(g) for g in groups])
    pooled = np.concatenate(groups)
    total = pooled.size
    ranks = stats.rankdata(pooled)
    bounds = np.concatenate([[0], np.cumsum(sizes)])
    mean_ranks = np.array([ranks[bounds[i]:bounds[i + 1]].mean() for i in range(len(groups))])

    _, tie_counts = np.unique(pooled, return_counts=True)
    tie_term = np.sum(tie_counts ** 3 - tie_counts) / (12.0 * (total - 1))
    variance = total * (total + 1) / 12.0 - tie_term

    if reference is None:
        pairs = list(combinations(range(len(groups)), 2))
    else:
        pairs = [(reference, j) for j in range(len(groups)) if j != reference]

    rows = []
    for a, b in pairs:
        if variance <= 0:
            z, p = 0.0, 1.0
        else:
            sigma = np.sqrt(variance * (1.0 / sizes[a] + 1.0 / sizes[b]))
            z = (mean_ranks[a] - mean_ranks[b]) / sigma
            p = float(2.0 * stats.norm.sf(abs(z)))
        rows.append({"group_a": a, "group_b": b, "z": float(z), "p_raw": p})

    table = pd.DataFrame(rows, columns=["group_a", "group_b", "z", "p_raw"])
    table["p_adjusted"] = holm_adjust(table["p_raw"].to_numpy())
    return table
