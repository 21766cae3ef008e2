"""Figures written next to JSON reports: growth curves and the bounds for C."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .counts import CountTable  # noqa: E402


def _log_curve(values: Sequence[int]) -> tuple[list[int], list[float]]:
    ns = [n for n, v in enumerate(values) if v > 0]
    return ns, [math.log(values[n]) for n in ns]


def growth_figure(curves: dict[str, CountTable], path: Path, title: str) -> Path:
    """``ln a(n)`` and ``ln p(n)`` against ``n`` for each labelled count table."""
    fig, (ax_a, ax_p) = plt.subplots(1, 2, figsize=(10, 4))
    for label, table in curves.items():
        ax_a.plot(*_log_curve(table.a[: table.valid_to + 1]), label=label)
        ax_p.plot(*_log_curve(table.p[: table.valid_to + 1]), label=label)
    ax_a.set_xlabel("n")
    ax_a.set_ylabel("ln a(n)")
    ax_p.set_xlabel("n")
    ax_p.set_ylabel("ln p(n)")
    ax_a.legend(fontsize="small")
    fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, metadata={"Software": None}, dpi=100)
    plt.close(fig)
    return path


def c_bounds_figure(p: Sequence[int], phi: Sequence[int], path: Path) -> Path:
    """``ln p(n)`` between ``ln 2^floor(sqrt n)`` and ``ln (n+1)^3 phi(n)``."""
    N = len(p) - 1
    ns = list(range(1, N + 1))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [math.log(p[n]) for n in ns], label="ln p(n)")
    ax.plot(ns, [math.isqrt(n) * math.log(2) for n in ns], "--", label="lower: floor(sqrt n) ln 2")
    ax.plot(ns, [3 * math.log(n + 1) + math.log(phi[n]) for n in ns], ":", label="upper: ln (n+1)^3 phi(n)")
    ax.set_xlabel("n")
    ax.legend(fontsize="small")
    ax.set_title("C: cumulative normal-word counts and bounds")
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, metadata={"Software": None}, dpi=100)
    plt.close(fig)
    return path
