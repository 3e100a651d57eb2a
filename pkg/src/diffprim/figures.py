"""Figure rendering for the report paths.

Figures are a side channel next to the delimited output: the verification
grid shows one row per identity check, and the rank curve shows how the
prolongation rank stabilizes.  Rendering is isolated here so the math modules
never import matplotlib.
"""

from __future__ import annotations

import os
from typing import Sequence


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_check_grid(checks: Sequence, path: str) -> str:
    """One row per check, green for pass and red for fail."""
    plt = _plt()
    n = max(len(checks), 1)
    fig, ax = plt.subplots(figsize=(8, 0.28 * n + 1))
    for i, check in enumerate(checks):
        y = n - 1 - i
        color = "#2e7d32" if check.passed else "#c62828"
        ax.barh(y, 1.0, height=0.82, color=color, edgecolor="none")
        label = check.name if not check.detail else f"{check.name}  [{check.detail}]"
        ax.text(0.01, y, label, va="center", ha="left", fontsize=8, color="white")
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.5, n - 0.5)
    ax.set_xticks([])
    ax.set_yticks([])
    passed = sum(1 for c in checks if c.passed)
    ax.set_title(f"identity checks: {passed}/{len(checks)} passed")
    fig.tight_layout()
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_rank_curve(orders: Sequence[int], ranks: Sequence[int], path: str) -> str:
    """Prolongation order against Jacobian rank, marking the stable value."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.step(orders, ranks, where="post", marker="o", color="#1565c0")
    ax.set_xlabel("prolongation order")
    ax.set_ylabel("Jacobian rank")
    ax.set_title("transcendence degree stabilization")
    ax.set_xticks(list(orders))
    ax.set_yticks(sorted(set(ranks)))
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
