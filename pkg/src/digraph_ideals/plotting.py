"""PNG rendering of digraphs, highlighted cycles and the double graph H_D."""

from __future__ import annotations

import math
import os
from typing import Dict, Iterable, List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .graphs import Digraph, UGraph  # noqa: E402

Pos = Dict[str, Tuple[float, float]]


def circular_layout(vertices) -> Pos:
    n = max(len(vertices), 1)
    return {
        v: (math.cos(math.pi / 2 - 2 * math.pi * i / n), math.sin(math.pi / 2 - 2 * math.pi * i / n))
        for i, v in enumerate(vertices)
    }


def _draw_vertices(ax, pos: Pos) -> None:
    for v, (x, y) in pos.items():
        ax.add_patch(plt.Circle((x, y), 0.09, color="white", ec="black", zorder=3))
        ax.text(x, y, v, ha="center", va="center", fontsize=9, zorder=4)


def _finish(fig, ax, path: str, title: str) -> str:
    ax.set_title(title, fontsize=10)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.autoscale_view()
    ax.margins(0.15)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, dpi=100, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path


def draw_digraph(D: Digraph, path: str, highlight: Iterable[str] = (), title: Optional[str] = None) -> str:
    hl = set(highlight)
    pos = circular_layout(D.vertices)
    fig, ax = plt.subplots(figsize=(4, 4))
    for e in D.edges:
        (x0, y0), (x1, y1) = pos[e.tail], pos[e.head]
        color = "crimson" if e.label in hl else "0.35"
        ax.annotate(
            "", xy=(x1, y1), xytext=(x0, y0),
            arrowprops=dict(arrowstyle="-|>", color=color, lw=2 if e.label in hl else 1,
                            shrinkA=11, shrinkB=11),
        )
        ax.text((x0 + x1) / 2, (y0 + y1) / 2, e.label, fontsize=8, color=color,
                ha="center", va="center", backgroundcolor="white")
    _draw_vertices(ax, pos)
    return _finish(fig, ax, path, title or f"{D.n} vertices, {D.m} edges")


def draw_bipartite(G: UGraph, left: List[str], right: List[str], path: str,
                   bold: Iterable[str] = (), title: str = "") -> str:
    """Two columns, ``left`` and ``right``; edges in ``bold`` are drawn thick."""
    bold = set(bold)
    pos: Pos = {}
    for col, side in ((0.0, left), (1.5, right)):
        for i, v in enumerate(side):
            pos[v] = (col, -0.4 * i)
    fig, ax = plt.subplots(figsize=(3.5, max(2.5, 0.45 * max(len(left), len(right), 1))))
    for e in G.edges:
        (x0, y0), (x1, y1) = pos[e.a], pos[e.b]
        ax.plot([x0, x1], [y0, y1], color="crimson" if e.label in bold else "0.4",
                lw=2 if e.label in bold else 1, zorder=1)
    _draw_vertices(ax, pos)
    return _finish(fig, ax, path, title)
