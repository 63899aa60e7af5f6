"""Matplotlib rendering of Hasse diagrams and selftest summaries.

Figures are written straight to files (Agg backend); nothing here opens
a window.  Layout is by longest-chain level with elements spread evenly
per level, which is plenty for desk-scale lattices.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .posets import FinLattice, FinPoset


def _levels(p: FinPoset):
    level = [0] * p.n
    covers = p.covers()
    order = sorted(range(p.n), key=lambda e: bin(p.down[e]).count("1"))
    for e in order:
        below = [i for i, j in covers if j == e]
        level[e] = 1 + max((level[i] for i in below), default=-1)
    return level, covers


def hasse_positions(p: FinPoset):
    """(x, y) per element: y is the chain level, x spreads a level."""
    level, covers = _levels(p)
    by_level = {}
    for e in range(p.n):
        by_level.setdefault(level[e], []).append(e)
    pos = {}
    for lv, elems in sorted(by_level.items()):
        width = len(elems)
        for k, e in enumerate(sorted(elems)):
            pos[e] = (k - (width - 1) / 2.0, lv)
    return pos, covers


def render_hasse(p, path: str, title: str = "", highlight=()):
    """Write the Hasse diagram of a poset or lattice to an image file."""
    poset = p.base if isinstance(p, FinLattice) else p
    pos, covers = hasse_positions(poset)
    fig, ax = plt.subplots(figsize=(max(4, poset.n * 0.5), max(3, poset.n * 0.35)))
    for i, j in covers:
        (x1, y1), (x2, y2) = pos[i], pos[j]
        ax.plot([x1, x2], [y1, y2], "-", color="0.55", lw=1.0, zorder=1)
    hl = set(highlight)
    for e, (x, y) in pos.items():
        color = "#c23b22" if e in hl else "#1f4e79"
        ax.scatter([x], [y], s=60, color=color, zorder=2)
        ax.annotate(
            poset.labels[e], (x, y),
            textcoords="offset points", xytext=(0, 7),
            ha="center", fontsize=8,
        )
    ax.set_title(title or f"Hasse diagram ({poset.n} elements)")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_criteria_summary(results, path: str):
    """Bar chart of acceptance criteria outcomes: one bar per criterion."""
    names = [r[0] for r in results]
    values = [1 if r[1] else 0 for r in results]
    colors = ["#2e7d32" if v else "#c62828" for v in values]
    fig, ax = plt.subplots(figsize=(max(6, len(names) * 0.6), 3.2))
    ax.bar(range(len(names)), [1] * len(names), color=colors)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_yticks([])
    ax.set_ylim(0, 1.3)
    for k, v in enumerate(values):
        ax.text(k, 1.05, "pass" if v else "FAIL", ha="center", fontsize=8)
    ax.set_title("acceptance criteria")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
