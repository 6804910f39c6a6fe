"""Spanned lines, per-point incidence counts, and the Dirac bound.

Everything here is brute force on exact integers and doubles as the oracle
that the constructive witness search is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

from .configuration import Configuration
from .errors import CollinearInput
from .kernel import ProjLine, ProjPoint, incident, join, meet
from .structure import ConcurrentStructure, build_structure

__all__ = [
    "IncidenceReport",
    "DiracVerdict",
    "dirac_threshold",
    "line_members",
    "spanned_lines",
    "incidence_report",
    "incidence_count",
    "verify_dirac",
    "detect_concurrent_structure",
]


def dirac_threshold(n: int) -> int:
    """ceil(n / 2)."""
    return (n + 1) // 2


def line_members(points: Sequence[ProjPoint]) -> dict[ProjLine, list[int]]:
    """Map each spanned line to the sorted indices of the points on it."""
    members: dict[ProjLine, set[int]] = {}
    trusted = ProjLine._trusted
    n = len(points)
    for i in range(n):
        x1, y1, z1 = points[i]
        for j in range(i + 1, n):
            x2, y2, z2 = points[j]
            a = y1 * z2 - z1 * y2
            b = z1 * x2 - x1 * z2
            c = x1 * y2 - y1 * x2
            g = gcd(a, b, c)
            if g != 1:
                a, b, c = a // g, b // g, c // g
            if a < 0 or (a == 0 and (b < 0 or (b == 0 and c < 0))):
                a, b, c = -a, -b, -c
            key = trusted((a, b, c))
            s = members.get(key)
            if s is None:
                members[key] = {i, j}
            else:
                # i joined this line at an earlier stage, or created it now.
                s.add(j)
    return {l: sorted(s) for l, s in members.items()}


def _checked_members(X: Configuration) -> dict[ProjLine, list[int]]:
    members = line_members(X.points)
    if len(members) == 1:
        raise CollinearInput(next(iter(members)))
    return members


def spanned_lines(X: Configuration) -> tuple[ProjLine, ...]:
    """All lines through at least two points of X, in canonical sorted order."""
    return tuple(sorted(_checked_members(X)))


@dataclass(frozen=True)
class IncidenceReport:
    points: tuple[ProjPoint, ...]
    spanned: tuple[ProjLine, ...]
    points_per_line: dict[ProjLine, int]
    counts: tuple[int, ...]
    t: int
    threshold: int
    ordinary_points: tuple[ProjPoint, ...]
    ordinary_lines: tuple[ProjLine, ...]

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def count_per_point(self) -> dict[ProjPoint, int]:
        return dict(zip(self.points, self.counts))

    @property
    def dirac_holds(self) -> bool:
        return self.t >= self.threshold

    @property
    def argmax(self) -> tuple[ProjPoint, ...]:
        return tuple(P for P, c in zip(self.points, self.counts) if c == self.t)


def incidence_report(X: Configuration) -> IncidenceReport:
    members = _checked_members(X)
    n = X.n
    counts = [0] * n
    for idx in members.values():
        for i in idx:
            counts[i] += 1
    threshold = dirac_threshold(n)
    spanned = tuple(sorted(members))
    return IncidenceReport(
        points=X.points,
        spanned=spanned,
        points_per_line={l: len(members[l]) for l in spanned},
        counts=tuple(counts),
        t=max(counts),
        threshold=threshold,
        ordinary_points=tuple(P for P, c in zip(X.points, counts) if c >= threshold),
        ordinary_lines=tuple(l for l in spanned if len(members[l]) == 2),
    )


def incidence_count(points: Iterable[ProjPoint], P: ProjPoint) -> int:
    """Number of lines spanned by `points` that pass through P (P among them)."""
    return len({join(P, Q) for Q in points if Q != P})


class DiracVerdict(NamedTuple):
    holds: bool
    witnesses: tuple[ProjPoint, ...]


def verify_dirac(X: Configuration) -> DiracVerdict:
    rep = incidence_report(X)
    return DiracVerdict(rep.dirac_holds, rep.ordinary_points)


def _cover(points: Sequence[ProjPoint], A: ProjPoint) -> Optional[list[ProjLine]]:
    lines: list[ProjLine] = []
    for P in points:
        if P == A or any(incident(P, l) for l in lines):
            continue
        if len(lines) == 3:
            return None
        lines.append(join(A, P))
    return lines


def _padding_line(A: ProjPoint, taken: Sequence[ProjLine]) -> ProjLine:
    bound = 1
    while True:
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                for z in range(0, bound + 1):
                    if (x, y, z) == (0, 0, 0) or max(abs(x), abs(y), z) != bound:
                        continue
                    e = ProjPoint(x, y, z)
                    if e == A:
                        continue
                    l = join(A, e)
                    if l not in taken:
                        return l
        bound += 1


def _apex_candidates(X: Configuration, members: dict[ProjLine, list[int]]) -> set[ProjPoint]:
    pts = X.points
    n = X.n
    # Some carrier holds at least a third of the points (the apex counted on all three).
    big = -(-n // 3)
    cands: set[ProjPoint] = set()
    for L, idx in members.items():
        if len(idx) < big:
            continue
        on = set(idx)
        rest = [pts[i] for i in range(n) if i not in on]
        if len(rest) >= 3:
            # Two of the first three leftovers share a carrier through the apex.
            r0, r1, r2 = rest[:3]
            for u, v in ((r0, r1), (r0, r2), (r1, r2)):
                cands.add(meet(L, join(u, v)))
        else:
            for M in members:
                if M != L:
                    cands.add(meet(L, M))
    return cands


def detect_concurrent_structure(X: Configuration) -> Optional[ConcurrentStructure]:
    """Find an apex and at most three lines through it that cover X.

    Returns None when no such cover exists. Among all valid apexes the
    lexicographically least canonical (apex, lines) pair wins. A cover by two
    lines is padded with a third line through the apex.
    """
    members = _checked_members(X)
    best = None
    for A in _apex_candidates(X, members):
        lines = _cover(X.points, A)
        if lines is None:
            continue
        key = (tuple(A), tuple(sorted(tuple(l) for l in lines)))
        if best is None or key < best[0]:
            best = (key, A, lines)
    if best is None:
        return None
    _, A, lines = best
    lines = sorted(lines)
    padded = len(lines) < 3
    if padded:
        lines.append(_padding_line(A, lines))
    return build_structure(X, A, lines, padded=padded)
