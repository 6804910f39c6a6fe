"""Independent brute-force reference for incidence questions.

Nothing here imports the package: points are raw integer triples and
collinearity is a 3x3 determinant, so agreement with the library is a real
cross-check rather than a tautology.
"""

from __future__ import annotations

from itertools import combinations


def det3(P, Q, R) -> int:
    return (
        P[0] * (Q[1] * R[2] - Q[2] * R[1])
        - P[1] * (Q[0] * R[2] - Q[2] * R[0])
        + P[2] * (Q[0] * R[1] - Q[1] * R[0])
    )


def same_point(P, Q) -> bool:
    return (
        P[0] * Q[1] == P[1] * Q[0]
        and P[0] * Q[2] == P[2] * Q[0]
        and P[1] * Q[2] == P[2] * Q[1]
    )


def lines_as_sets(points) -> set[frozenset[int]]:
    """Every spanned line, as the frozenset of indices of the points on it."""
    pts = [tuple(P) for P in points]
    out = set()
    for i, j in combinations(range(len(pts)), 2):
        out.add(frozenset(k for k in range(len(pts)) if det3(pts[i], pts[j], pts[k]) == 0))
    return out


def counts(points) -> list[int]:
    """Spanned lines through each point, by grouping its partners."""
    pts = [tuple(P) for P in points]
    result = []
    for i, P in enumerate(pts):
        classes: list[int] = []
        for j, Q in enumerate(pts):
            if j == i:
                continue
            if not any(det3(P, pts[c], Q) == 0 for c in classes):
                classes.append(j)
        result.append(len(classes))
    return result


def count_at(points, P) -> int:
    pts = [tuple(Q) for Q in points]
    idx = next(i for i, Q in enumerate(pts) if same_point(P, Q))
    return counts(pts)[idx]


def t_of(points) -> int:
    return max(counts(points))


def ceil_half(n: int) -> int:
    return -(-n // 2)
