"""Matplotlib renderings of run reports and benchmark tables."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .cegar import BenchRow, CegarReport


def save_iteration_figure(report: CegarReport, path: str | Path) -> None:
    """Abstract model growth across CEGAR iterations."""
    xs = list(range(1, report.total_iterations + 1))
    states = [r.abstract_states for r in report.iterations]
    transitions = [r.abstract_transitions for r in report.iterations]

    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.step(xs, states, where="mid", marker="o", label="abstract states")
    ax.step(xs, transitions, where="mid", marker="s", label="abstract transitions")
    ax.set_xlabel("iteration")
    ax.set_ylabel("count")
    ax.set_xticks(xs)
    ax.set_title(f"CEGAR run: {report.final} after {report.total_iterations} iteration(s)")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_benchmark_figure(rows: Iterable[BenchRow], path: str | Path) -> None:
    """Final abstract model size per model, grouped by strategy."""
    rows = list(rows)
    models = sorted({r.model for r in rows})
    strategies = sorted({r.strategy for r in rows}, key=lambda s: s.value)
    size = {(r.model, r.strategy): r.final_abstract_states for r in rows}

    width = 0.8 / max(1, len(strategies))
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(models)), 3.5))
    for k, strategy in enumerate(strategies):
        xs = [i + k * width for i in range(len(models))]
        ys = [size.get((m, strategy), 0) for m in models]
        ax.bar(xs, ys, width=width, label=strategy.value)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(models))])
    ax.set_xticklabels(models, rotation=30, ha="right")
    ax.set_ylabel("final abstract states")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
