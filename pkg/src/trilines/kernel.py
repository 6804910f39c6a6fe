"""Exact homogeneous-coordinate primitives over Python integers.

Points and lines are stored as canonical integer triples: the gcd of the
entries is 1 and the first nonzero entry is positive, so two triples name the
same projective object iff they compare equal. Nothing in this module touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DegenerateJoin,
    DegenerateMeet,
    InvalidHalfLineQuery,
    InvalidHomogeneous,
    NotOnSegmentLine,
    SingularTransform,
)

__all__ = [
    "ProjPoint",
    "ProjLine",
    "ProjTransform",
    "LINE_AT_INFINITY",
    "canonicalize",
    "join",
    "meet",
    "incident",
    "collinear",
    "orientation",
    "apply",
    "apply_dual",
    "euclidean_chart",
    "euclideanize_points",
    "affine_between",
    "half_line_side",
    "direction",
    "to_infinity",
]


def _canonical(a: int, b: int, c: int) -> tuple[int, int, int]:
    g = gcd(a, b, c)
    if g == 0:
        raise InvalidHomogeneous("the zero triple is not a projective element")
    if g != 1:
        a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and (b < 0 or (b == 0 and c < 0))):
        a, b, c = -a, -b, -c
    return a, b, c


class _PointFields(NamedTuple):
    x: int
    y: int
    z: int


class _LineFields(NamedTuple):
    a: int
    b: int
    c: int


class ProjPoint(_PointFields):
    """Point ``(x:y:z)`` of the projective plane; ``z == 0`` is a direction.

    ``ProjPoint(3, 4)`` is the affine point (3, 4). The constructor always
    canonicalizes, so ``ProjPoint(2, 4, 2) == ProjPoint(1, 2, 1)``.
    """

    __slots__ = ()

    def __new__(cls, x: int, y: int, z: int = 1):
        return tuple.__new__(cls, _canonical(int(x), int(y), int(z)))

    @classmethod
    def _trusted(cls, xyz) -> "ProjPoint":
        return tuple.__new__(cls, xyz)

    @property
    def is_finite(self) -> bool:
        return self[2] != 0

    def __repr__(self) -> str:
        return f"ProjPoint({self[0]}:{self[1]}:{self[2]})"


class ProjLine(_LineFields):
    """Line ``{(x:y:z) : a*x + b*y + c*z == 0}``."""

    __slots__ = ()

    def __new__(cls, a: int, b: int, c: int):
        return tuple.__new__(cls, _canonical(int(a), int(b), int(c)))

    @classmethod
    def _trusted(cls, abc) -> "ProjLine":
        return tuple.__new__(cls, abc)

    @property
    def is_at_infinity(self) -> bool:
        return self[0] == 0 and self[1] == 0

    def __repr__(self) -> str:
        return f"ProjLine({self[0]},{self[1]},{self[2]})"


LINE_AT_INFINITY = ProjLine._trusted((0, 0, 1))


def canonicalize(raw: Iterable[int], kind=ProjPoint):
    """Return the canonical `kind` (ProjPoint or ProjLine) for a raw triple."""
    a, b, c = raw
    return kind(a, b, c)


def _cross(u, v) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def join(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    a, b, c = _cross(P, Q)
    if a == 0 and b == 0 and c == 0:
        raise DegenerateJoin(f"cannot join {P!r} with itself")
    return ProjLine._trusted(_canonical(a, b, c))


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    x, y, z = _cross(l, m)
    if x == 0 and y == 0 and z == 0:
        raise DegenerateMeet(f"cannot meet {l!r} with itself")
    return ProjPoint._trusted(_canonical(x, y, z))


def incident(P: ProjPoint, l: ProjLine) -> bool:
    return P[0] * l[0] + P[1] * l[1] + P[2] * l[2] == 0


def _det3(u, v, w) -> int:
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def collinear(P: ProjPoint, Q: ProjPoint, R: ProjPoint) -> bool:
    return _det3(P, Q, R) == 0


def orientation(P: ProjPoint, Q: ProjPoint, R: ProjPoint) -> int:
    """Sign of the turn P -> Q -> R for finite points (+1 counterclockwise)."""
    if P[2] == 0 or Q[2] == 0 or R[2] == 0:
        raise ValueError("orientation needs finite points")
    d = _det3(P, Q, R)
    if d == 0:
        return 0
    s = 1 if d > 0 else -1
    # Canonical z may be negative; each negative z flips the affine sign.
    for p in (P, Q, R):
        if p[2] < 0:
            s = -s
    return s


@dataclass(frozen=True)
class ProjTransform:
    """Invertible 3x3 integer matrix acting on column vectors of points."""

    matrix: tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("a projective transform is a 3x3 matrix")
        object.__setattr__(self, "matrix", m)
        if self.det == 0:
            raise SingularTransform(f"singular matrix {m}")

    @classmethod
    def identity(cls) -> "ProjTransform":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @property
    def det(self) -> int:
        return _det3(*self.matrix)

    @property
    def is_identity(self) -> bool:
        return self.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def adjugate(self) -> tuple[tuple[int, ...], ...]:
        """Integer matrix ``det * inverse``."""
        m = self.matrix
        cof = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != i]
                c = [k for k in range(3) if k != j]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                cof[i][j] = minor if (i + j) % 2 == 0 else -minor
        return tuple(tuple(cof[j][i] for j in range(3)) for i in range(3))

    def inverse(self) -> "ProjTransform":
        return ProjTransform(self.adjugate())

    def compose(self, other: "ProjTransform") -> "ProjTransform":
        """Matrix product ``self @ other`` (apply `other` first)."""
        a, b = self.matrix, other.matrix
        return ProjTransform(
            tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))
        )


def apply(T: ProjTransform, P: ProjPoint) -> ProjPoint:
    m = T.matrix
    return ProjPoint(
        m[0][0] * P[0] + m[0][1] * P[1] + m[0][2] * P[2],
        m[1][0] * P[0] + m[1][1] * P[1] + m[1][2] * P[2],
        m[2][0] * P[0] + m[2][1] * P[1] + m[2][2] * P[2],
    )


def apply_dual(T: ProjTransform, l: ProjLine) -> ProjLine:
    """Image of a line under T, i.e. the row vector ``l @ adj(T)``."""
    adj = T.adjugate()
    return ProjLine(*(sum(l[k] * adj[k][j] for k in range(3)) for j in range(3)))


def to_infinity(l: ProjLine) -> ProjTransform:
    """A transform with positive determinant that sends `l` to the line at infinity."""
    if l.is_at_infinity:
        return ProjTransform.identity()
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    # Keep two unit rows; the dropped index must carry a nonzero entry of l.
    for drop in (2, 1, 0):
        if l[drop] != 0:
            u, v = (basis[i] for i in range(3) if i != drop)
            T = (u, v, tuple(l))
            if _det3(*T) < 0:
                T = (v, u, tuple(l))
            return ProjTransform(T)
    raise AssertionError("unreachable")


def _chart_candidates(points: Sequence[ProjPoint]):
    has_x_dir = ProjPoint._trusted((1, 0, 0)) in points
    has_y_dir = ProjPoint._trusted((0, 1, 0)) in points
    if not (has_x_dir and has_y_dir):
        c = 1
        while True:
            yield ProjLine._trusted((1, 0, -c))
            yield ProjLine._trusted((0, 1, -c))
            c += 1
    # Both axis directions present: every axis-parallel candidate is blocked,
    # so widen the search to slanted lines (1, s, -c).
    c = 1
    while True:
        for s in range(1, c + 1):
            yield ProjLine(1, s, -c)
            yield ProjLine(1, -s, -c)
        c += 1


def euclidean_chart(points: Sequence[ProjPoint]) -> ProjTransform:
    """Transform moving every point of `points` off the line at infinity.

    Returns the identity when all points are already finite.
    """
    pts = list(points)
    if all(p[2] != 0 for p in pts):
        return ProjTransform.identity()
    for cand in _chart_candidates(pts):
        if not any(incident(p, cand) for p in pts):
            return to_infinity(cand)
    raise AssertionError("unreachable")


def euclideanize_points(points: Sequence[ProjPoint]) -> tuple[ProjTransform, tuple[ProjPoint, ...]]:
    T = euclidean_chart(points)
    if T.is_identity:
        return T, tuple(points)
    return T, tuple(apply(T, p) for p in points)


def affine_between(A: ProjPoint, T: ProjPoint, B: ProjPoint) -> bool:
    """True iff T lies strictly inside the segment AB (all three finite)."""
    if A[2] == 0 or T[2] == 0 or B[2] == 0:
        raise NotOnSegmentLine("segment endpoints and query must be finite")
    if A == B:
        raise NotOnSegmentLine("degenerate segment")
    if not collinear(A, T, B):
        raise NotOnSegmentLine(f"{T!r} is not on the line through {A!r} and {B!r}")
    if T == A or T == B:
        return False
    i = 0 if B[0] * A[2] != A[0] * B[2] else 1
    num = (T[i] * A[2] - A[i] * T[2]) * B[2]
    den = (B[i] * A[2] - A[i] * B[2]) * T[2]
    if den < 0:
        num, den = -num, -den
    return 0 < num < den


def direction(l: ProjLine) -> tuple[int, int]:
    """Reference direction vector of a finite line; the +1 half-lines point along it."""
    d = ProjPoint._trusted(_canonical(l[1], -l[0], 0))
    return d[0], d[1]


def half_line_side(A: ProjPoint, dir_line: ProjLine, S: ProjPoint) -> int:
    """Which open half-line of `dir_line` at A holds S: +1 or -1.

    +1 is the side reached by moving from A along ``direction(dir_line)``.
    A point at infinity on the line is assigned to the +1 side.
    """
    if A[2] == 0:
        raise InvalidHalfLineQuery("the origin of a half-line must be finite")
    if dir_line.is_at_infinity:
        raise InvalidHalfLineQuery("the line at infinity has no finite half-lines")
    if S == A:
        raise InvalidHalfLineQuery("S coincides with the origin")
    if not incident(A, dir_line) or not incident(S, dir_line):
        raise InvalidHalfLineQuery(f"{S!r} and {A!r} must both lie on {dir_line!r}")
    dx, dy = direction(dir_line)
    if S[2] == 0:
        d = S[0] * dx + S[1] * dy
        return 1 if d > 0 else -1
    vx = S[0] * A[2] - A[0] * S[2]
    vy = S[1] * A[2] - A[1] * S[2]
    d = vx * dx + vy * dy
    if (S[2] < 0) != (A[2] < 0):
        d = -d
    return 1 if d > 0 else -1
