"""Figures of Schnyder drawings (matplotlib, written straight to files)."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .planar import Edge, PlaneGraph  # noqa: E402

EDGE_COLORS = ("tab:red", "tab:green", "tab:blue")

# fixed hash salt + no date stamp keep SVG output byte-identical between runs
_RC = {"svg.hashsalt": "schnyder-at", "svg.fonttype": "none", "font.size": 9}


def draw_orientation(
    g: PlaneGraph,
    coords: Sequence[tuple[float, float]],
    path: str | Path,
    heads: Mapping[Edge, int] | None = None,
    colors: Mapping[Edge, int] | None = None,
    strengths: Mapping[Edge, int] | None = None,
    title: str | None = None,
) -> Path:
    """Straight-line drawing with edges tinted by color class.

    Outer edges (no color) are black; strength-2 edges are drawn thicker.
    The format follows the file suffix (``.svg``, ``.png``, ``.pdf``).
    """
    path = Path(path)
    with plt.rc_context(_RC):
        size = 1.0 + 0.4 * max(max(x for x, _ in coords), max(y for _, y in coords), 1) ** 0.5
        fig, ax = plt.subplots(figsize=(size + 2, size + 2))
        for e in g.edges:
            (x0, y0), (x1, y1) = coords[e[0]], coords[e[1]]
            c = EDGE_COLORS[colors[e]] if colors and e in colors else "black"
            lw = 2.6 if strengths and strengths.get(e, 1) > 1 else 1.2
            if heads and e in heads:
                h = heads[e]
                t = e[0] if h == e[1] else e[1]
                (x0, y0), (x1, y1) = coords[t], coords[h]
                ax.annotate(
                    "",
                    xy=(x1, y1),
                    xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="-|>", color=c, lw=lw, shrinkA=6, shrinkB=6),
                )
            else:
                ax.plot([x0, x1], [y0, y1], color=c, lw=lw)
        xs = [p[0] for p in coords]
        ys = [p[1] for p in coords]
        ax.scatter(xs, ys, s=120, color="white", edgecolors="black", zorder=3)
        for v, (x, y) in enumerate(coords):
            ax.text(x, y, str(v), ha="center", va="center", zorder=4)
        ax.set_aspect("equal")
        ax.margins(0.08)
        ax.set_xticks([])
        ax.set_yticks([])
        for side in ax.spines.values():
            side.set_visible(False)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        meta = {".svg": {"Date": None}, ".pdf": {"CreationDate": None}}.get(path.suffix)
        fig.savefig(path, metadata=meta)
        plt.close(fig)
    return path
