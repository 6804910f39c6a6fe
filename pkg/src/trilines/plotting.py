"""SVG pictures of a configuration and its spanned lines.

Coordinates are converted to floats only here, for drawing; nothing decided
in this module feeds back into the exact computations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import count
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

from matplotlib.collections import LineCollection  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .configuration import Configuration, transform  # noqa: E402
from .incidence import IncidenceReport, incidence_report  # noqa: E402
from .kernel import ProjTransform, apply_dual  # noqa: E402

STYLE = {
    "svg.hashsalt": "trilines",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.linewidth": 0.6,
}


def _bbox(xy):
    xs = [p[0] for p in xy]
    ys = [p[1] for p in xy]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad = 0.12 * max(x1 - x0, y1 - y0, 1e-9)
    return x0 - pad, x1 + pad, y0 - pad, y1 + pad


def display_chart(X: Configuration) -> ProjTransform:
    """A chart with every point finite and little distortion of the finite part.

    The new line at infinity is a*x + b*y + M = 0 with small weights (a, b)
    missing every direction in X. M is chosen so that a*x + b*y + M ranges
    over [w, 2w] on the finite points, where w is their spread along (a, b).
    """
    dirs = X.infinite_points
    if not dirs:
        return ProjTransform.identity()
    a, b = next(
        (a, b)
        for m in count(1)
        for a, b in ((1, m), (m, 1), (1, -m), (m, -1))
        if all(a * P[0] + b * P[1] != 0 for P in dirs)
    )
    vals = [Fraction(a * P[0] + b * P[1], P[2]) for P in X.points if P[2] != 0]
    lo, hi = (min(vals), max(vals)) if vals else (Fraction(0), Fraction(0))
    width = max(hi - lo, Fraction(1))
    M = max(math.ceil(width - lo), 1)
    return ProjTransform(((1, 0, 0), (0, 1, 0), (a, b, M)))


def clip_line(a: float, b: float, c: float, box) -> Optional[tuple[tuple[float, float], tuple[float, float]]]:
    """Segment of the line a*x + b*y + c = 0 inside the box, or None."""
    x0, x1, y0, y1 = box
    hits = []
    if b != 0:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 <= y <= y1:
                hits.append((x, y))
    if a != 0:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 <= x <= x1:
                hits.append((x, y))
    hits = sorted(set(hits))
    if len(hits) < 2:
        return None
    return hits[0], hits[-1]


def render(
    X: Configuration,
    path,
    report: Optional[IncidenceReport] = None,
    arrows: bool = False,
    title: Optional[str] = None,
) -> Path:
    """Draw X with every spanned line clipped to a padded bounding box.

    Points at infinity are removed by a projective change of chart unless
    `arrows` is set, in which case they are drawn as arrows on the margin in
    their direction. Ordinary points are drawn larger and in red.
    """
    report = report or incidence_report(X)
    shown, lines = X, report.spanned
    if not arrows and X.infinite_points:
        T = display_chart(X)
        shown = transform(T, X)
        lines = [apply_dual(T, l) for l in lines]
    ordinary = {i for i, c in enumerate(report.counts) if c >= report.threshold}
    finite = [(i, P) for i, P in enumerate(shown.points) if P[2] != 0]
    xy = {i: (P[0] / P[2], P[1] / P[2]) for i, P in finite}
    box = _bbox(list(xy.values()) or [(0.0, 0.0), (1.0, 1.0)])

    segments = []
    for a, b, c in lines:
        if a == 0 and b == 0:
            continue
        seg = clip_line(float(a), float(b), float(c), box)
        if seg is not None:
            segments.append(seg)

    with matplotlib.rc_context(STYLE):
        fig = Figure(figsize=(6, 6))
        ax = fig.add_subplot()
        ax.add_collection(LineCollection(segments, colors="0.55", linewidths=0.5, gid="spanned-lines"))
        plain = [xy[i] for i in sorted(xy) if i not in ordinary]
        marked = [xy[i] for i in sorted(xy) if i in ordinary]
        if plain:
            ax.scatter(*zip(*plain), s=14, c="black", zorder=3, gid="points")
        if marked:
            ax.scatter(*zip(*marked), s=40, c="tab:red", zorder=4, gid="ordinary-points")
        if arrows:
            cx, cy = (box[0] + box[1]) / 2, (box[2] + box[3]) / 2
            r = 0.46 * min(box[1] - box[0], box[3] - box[2])
            for i, P in enumerate(shown.points):
                if P[2] != 0:
                    continue
                norm = math.hypot(P[0], P[1])
                ux, uy = P[0] / norm, P[1] / norm
                ann = ax.annotate(
                    "", xy=(cx + r * ux, cy + r * uy), xytext=(cx + 0.8 * r * ux, cy + 0.8 * r * uy),
                    arrowprops={"arrowstyle": "->", "color": "tab:red" if i in ordinary else "black"},
                )
                ann.arrow_patch.set_gid(f"infinite-{i}")
        ax.set_xlim(box[0], box[1])
        ax.set_ylim(box[2], box[3])
        ax.set_aspect("equal", adjustable="box")
        ax.set_title(title or f"n = {report.n}, t = {report.t}, ceil(n/2) = {report.threshold}")
        out = Path(path)
        fig.savefig(out, format="svg", metadata={"Date": None})
    return out

