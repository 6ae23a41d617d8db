"""Figures for benchmark reports, written next to the delimited output."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import Report


def _labels(reports: list[Report]) -> list[str]:
    return [
        f"{r.config.dist}\n{r.config.mode} {r.config.m}x{r.config.n} k={r.k}"
        for r in reports
    ]


def render_report_figures(reports, stem: str) -> list[str]:
    """Write accuracy and timing charts as <stem>_accuracy.png and
    <stem>_times.png; returns the paths."""
    if isinstance(reports, Report):
        reports = [reports]
    labels = _labels(reports)
    pos = np.arange(len(reports))
    paths = []

    fig, ax = plt.subplots(figsize=(1.6 + 1.1 * len(reports), 3.6))
    ax.bar(pos, [r.accuracy_pct for r in reports], color="#3b6ea5")
    ax.set_xticks(pos, labels, fontsize=8)
    ax.set_ylabel("sketched verdicts agreeing with label (%)")
    ax.set_ylim(0, 105)
    ax.axhline(100, color="gray", lw=0.6, ls=":")
    fig.tight_layout()
    path = f"{stem}_accuracy.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)

    width = 0.38
    fig, ax = plt.subplots(figsize=(1.6 + 1.1 * len(reports), 3.6))
    ax.bar(pos - width / 2, [r.avg_orig_s for r in reports], width, label="original")
    ax.bar(pos + width / 2, [r.avg_proj_s for r in reports], width, label="sketched")
    ax.set_xticks(pos, labels, fontsize=8)
    ax.set_ylabel("avg solve seconds")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    path = f"{stem}_times.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)
    return paths


def figure_stem(out_path: str) -> str:
    root, _ = os.path.splitext(out_path)
    return root
