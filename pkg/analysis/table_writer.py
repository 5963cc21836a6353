"""
Table writer module - renders a ResultTable as a CSV file and an aligned text table.

results.csv columns, in this order (stable across versions):
    algorithm, trials, failed, mean, std, diff, p_raw, p_adjusted, stars, is_best, reference
"""
import os

import numpy as np
import pandas as pd

CSV_COLUMNS = ["algorithm", "trials", "failed", "mean", "std", "diff", "p_raw", "p_adjusted",
               "stars", "is_best", "reference"]


def format_mean_std(mean, std):
    if np.isnan(mean):
        return "-"
    if np.isnan(std):
        return f"{mean:.4f}"
    return f"{mean:.4f} ± {std:.4f}"


def format_diff(diff, stars=""):
    """Signed 4-decimal difference with significance stars appended."""
    if diff is None or np.isnan(diff):
        return "-"
    return f"{diff:+.4f}{stars}"


def format_table(table):
    """
    Aligned text rendering of a ResultTable

    Parameters:
    - table: ResultTable

    Returns:
    - String with one line per algorithm; Diff columns only when there is more than one algorithm
    """
    rows = table.rows
    display = pd.DataFrame({
        "Algorithm": [f"{a}{' (best)' if best else ''}" for a, best in zip(rows["algorithm"], rows["is_best"])],
        "Trials": rows["trials"],
        "Failed": rows["failed"],
        "Mean ± Std": [format_mean_std(m, s) for m, s in zip(rows["mean"], rows["std"])],
    })
    if len(rows) > 1:
        display[f"Diff (vs. {table.reference})"] = [
            "" if is_ref else format_diff(d, s)
            for d, s, is_ref in zip(rows["diff"], rows["stars"], rows["reference"])
        ]
        display["p (Holm)"] = [
            "" if is_ref or np.isnan(p) else f"{p:.4f}"
            for p, is_ref in zip(rows["p_adjusted"], rows["reference"])
        ]

    lines = [display.to_string(index=False)]
    if table.kruskal_p is not None:
        lines.append(f"Kruskal-Wallis H = {table.kruskal_h:.4f}, p = {table.kruskal_p:.4g}")
    if table.insufficient_samples:
        lines.append("p-values omitted: fewer than 2 completed trials for some algorithm")
    if len(rows) > 1:
        lines.append("Diff = mean(reference) - mean(other); */**/*** mark adjusted p < 0.05/0.01/0.001 "
                     "(Dunn test, Holm correction)")
    if table.warnings:
        lines.append(f"{len(table.warnings)} warning(s)")
    return "\n".join(lines)


def emit_table(table, output_dir=None):
    """
    Write results.csv and results.txt for a ResultTable

    Parameters:
    - table: ResultTable
    - output_dir: Directory to write into (if None, nothing is written)

    Returns:
    - The text table
    """
    text = format_table(table)
    if output_dir:
        os.makedirs(output_dir, exist_ok=True)
        table.rows[CSV_COLUMNS].to_csv(os.path.join(output_dir, "results.csv"), index=False)
        with open(os.path.join(output_dir, "results.txt"), "w", encoding="utf-8") as f:
            f.write(text + "\n")
        if table.pairwise is not None:
            table.pairwise.to_csv(os.path.join(output_dir, "pairwise.csv"), index=False)
    return text
