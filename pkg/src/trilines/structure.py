"""Three concurrent carrier lines, their six half-lines, and nearest anchors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .configuration import Configuration
from .errors import StructureMismatch
from .kernel import (
    ProjLine,
    ProjPoint,
    ProjTransform,
    apply,
    apply_dual,
    direction,
    euclidean_chart,
    half_line_side,
    incident,
)

LABELS = ("p1", "q1", "r1", "p2", "q2", "r2")


@dataclass(frozen=True)
class HalfLine:
    """One open ray of a carrier line, starting at the apex.

    `points` holds the configuration points on the ray, nearest to the apex
    first. `sign` picks the ray relative to ``direction`` of the carrier line,
    measured in the structure's chart.
    """

    label: str
    line: ProjLine
    sign: int
    points: tuple[ProjPoint, ...]

    @property
    def anchor(self) -> Optional[ProjPoint]:
        return self.points[0] if self.points else None


@dataclass(frozen=True)
class ConcurrentStructure:
    apex: ProjPoint
    p: ProjLine
    q: ProjLine
    r: ProjLine
    half_lines: tuple[HalfLine, ...]
    a_in_x: bool
    chart: ProjTransform
    padded: bool = False

    @property
    def lines(self) -> tuple[ProjLine, ProjLine, ProjLine]:
        return self.p, self.q, self.r

    @property
    def anchors(self) -> dict[str, Optional[ProjPoint]]:
        return {h.label: h.anchor for h in self.half_lines}

    def half_line(self, label: str) -> HalfLine:
        return self.half_lines[LABELS.index(label)]


def _angle_cmp(u: tuple[int, int], v: tuple[int, int]) -> int:
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def ray_parameter(apex: ProjPoint, vec: tuple[int, int], P: ProjPoint) -> Fraction:
    """Exact position of finite P along the ray from finite `apex` with direction `vec`."""
    dx = Fraction(P[0], P[2]) - Fraction(apex[0], apex[2])
    dy = Fraction(P[1], P[2]) - Fraction(apex[1], apex[2])
    return dx * vec[0] + dy * vec[1]


def cyclic_rays(apex: ProjPoint, lines: Sequence[ProjLine]) -> list[tuple[int, int]]:
    """Order the six rays ``(line index, sign)`` around a finite apex.

    The result starts with the +1 ray of ``lines[0]`` and runs in whichever
    rotational sense visits ``lines[1]`` next, so the labels come out as
    p1, q1, r1, p2, q2, r2.
    """
    rays = []
    for i, l in enumerate(lines):
        dx, dy = direction(l)
        rays.append(((dx, dy), (i, 1)))
        rays.append(((-dx, -dy), (i, -1)))
    rays.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))
    order = [r[1] for r in rays]
    start = order.index((0, 1))
    order = order[start:] + order[:start]
    if order[1][0] != 1:
        order = [order[0]] + order[:0:-1]
    return order


def build_structure(
    X: Configuration,
    apex: ProjPoint,
    lines: Sequence[ProjLine],
    padded: bool = False,
) -> ConcurrentStructure:
    """Assemble the half-line decomposition of X around `apex`.

    Works in a chart where the apex and every point of X are finite; the
    chart is the identity whenever that already holds.
    """
    p, q, r = lines
    if len({p, q, r}) != 3:
        raise StructureMismatch("carrier lines must be pairwise distinct")
    for l in lines:
        if not incident(apex, l):
            raise StructureMismatch(f"apex {apex!r} is not on {l!r}")
    chart = euclidean_chart(tuple(X.points) + (apex,))
    A = apply(chart, apex)
    chart_lines = [apply_dual(chart, l) for l in lines]
    order = cyclic_rays(A, chart_lines)
    slot = {ray: k for k, ray in enumerate(order)}
    members: list[list[tuple[Fraction, ProjPoint]]] = [[] for _ in range(6)]
    for P in X.points:
        if P == apex:
            continue
        on = [i for i, l in enumerate(lines) if incident(P, l)]
        if not on:
            raise StructureMismatch(f"{P!r} lies on none of the carrier lines")
        i = on[0]
        Pc = apply(chart, P)
        side = half_line_side(A, chart_lines[i], Pc)
        dx, dy = direction(chart_lines[i])
        t = ray_parameter(A, (side * dx, side * dy), Pc)
        members[slot[(i, side)]].append((t, P))
    half_lines = []
    for k, (i, side) in enumerate(order):
        pts = tuple(P for _, P in sorted(members[k]))
        half_lines.append(HalfLine(LABELS[k], lines[i], side, pts))
    return ConcurrentStructure(
        apex=apex,
        p=p,
        q=q,
        r=r,
        half_lines=tuple(half_lines),
        a_in_x=apex in X.points,
        chart=chart,
        padded=padded,
    )


def validate_structure(X: Configuration, S: ConcurrentStructure) -> None:
    """Raise StructureMismatch unless S describes X."""
    fresh = build_structure(X, S.apex, S.lines, S.padded)
    if fresh != S:
        raise StructureMismatch("structure was built for a different configuration")
