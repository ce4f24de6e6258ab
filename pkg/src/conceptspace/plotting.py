"""Matplotlib rendering of a space as a layered drawing.

Axioms sit on the bottom row; every other vertex is placed one row above
the highest of its prerequisites, mirroring the usual hand-drawn layout
of dependency diagrams.
"""

from __future__ import annotations

import textwrap

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .space import ConceptualSpace, axioms, topological_order  # noqa: E402

AXIOM_EDGE = "#8b1a1a"
RULE_EDGE = "#1f3b5c"


def layers(space: ConceptualSpace) -> dict[str, int]:
    """Longest path length from each vertex down to a sink."""
    depth: dict[str, int] = {}
    for u in reversed(topological_order(space)):
        succ = space.successors[u]
        depth[u] = 1 + max(depth[v] for v in succ) if succ else 0
    return depth


def layout(space: ConceptualSpace) -> dict[str, tuple[float, float]]:
    depth = layers(space)
    rows: dict[int, list[str]] = {}
    for vid in space.ids:
        rows.setdefault(depth[vid], []).append(vid)
    pos = {}
    for level, ids in rows.items():
        width = len(ids)
        for k, vid in enumerate(ids):
            pos[vid] = (k - (width - 1) / 2.0, float(level))
    return pos


def render_space(space: ConceptualSpace, path, title=None, dpi=150):
    """Draw ``space`` and save it to ``path``; the format follows the suffix."""
    pos = layout(space)
    sinks = axioms(space)
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    fig_w = max(4.0, 2.6 * (max(xs) - min(xs) + 1))
    fig_h = max(3.0, 1.8 * (max(ys) - min(ys) + 1))
    fig, ax = plt.subplots(figsize=(fig_w, fig_h))
    ax.set_axis_off()
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(min(ys) - 0.6, max(ys) + 0.6)

    for u, v in space.edges:
        ax.annotate(
            "",
            xy=pos[v],
            xytext=pos[u],
            arrowprops=dict(arrowstyle="-|>", color="0.3", lw=1.0, shrinkA=18, shrinkB=18),
        )
    for vertex in space.vertices:
        is_axiom = vertex.id in sinks
        text = "\n".join(textwrap.wrap(vertex.label, 22))
        head = f"Axiom {vertex.id}" if is_axiom else vertex.id
        ax.text(
            *pos[vertex.id],
            f"{head}\n{text}",
            ha="center",
            va="center",
            fontsize=7,
            fontweight="bold" if is_axiom else "normal",
            bbox=dict(
                boxstyle="round,pad=0.4",
                facecolor="white",
                edgecolor=AXIOM_EDGE if is_axiom else RULE_EDGE,
                linewidth=1.8 if is_axiom else 1.0,
            ),
        )
    ax.set_title(title if title is not None else space.name, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
    return path
