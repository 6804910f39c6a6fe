"""Deterministic constructions and seeded random configurations.

Random generators use :class:`random.Random` (Mersenne Twister) seeded with
the caller's integer seed, and draw only through ``randrange``, so a given
(parameters, seed) pair reproduces the same configuration on any platform
running the same Python minor version.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .configuration import Configuration
from .errors import FamilyCheckFailed, GenerationExhausted, InvalidParams
from .incidence import incidence_report, line_members
from .kernel import ProjLine, ProjPoint, ProjTransform, apply, incident, join, to_infinity

__all__ = [
    "FamilyParams",
    "aikn_fig1",
    "aikn_fig2",
    "random_concurrent",
    "random_general",
    "random_transform",
    "apex_to_infinity",
    "generate",
]

FAMILIES = ("aikn1", "aikn2", "random-concurrent", "random-general")


@dataclass(frozen=True)
class FamilyParams:
    family: str
    k: int = 4
    counts: tuple[int, int, int] = (3, 3, 3)
    include_apex: bool = False
    n: int = 10
    bound: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family in ("aikn1", "aikn2") and self.k < 2:
            raise InvalidParams(f"k must be at least 2, got {self.k}")
        if self.family == "random-concurrent":
            if len(self.counts) != 3 or min(self.counts) < 0 or sum(self.counts) + self.include_apex < 3:
                raise InvalidParams(f"bad counts {self.counts}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParams("seed must be a 64-bit unsigned integer")


def _homogenize(x: Fraction, y: Fraction) -> ProjPoint:
    d = lcm(x.denominator, y.denominator)
    return ProjPoint(x.numerator * (d // x.denominator), y.numerator * (d // y.denominator), d)


def _check_counterexample(X: Configuration, family: str) -> None:
    rep = incidence_report(X)
    if rep.dirac_holds:
        raise FamilyCheckFailed(f"{family}: t = {rep.t} is not below ceil({X.n}/2) = {rep.threshold}")


def aikn_fig2(k: int) -> Configuration:
    """Three horizontal rows plus two points at infinity; n = 4k + 1.

    Bottom and top rows hold the even abscissae 0, 2, ..., 2k-2, the middle
    row every abscissa 0..2k-2. The horizontal direction is the common point
    of the rows; the vertical direction is the one extra point.
    """
    if k < 2:
        raise InvalidParams(f"k must be at least 2, got {k}")
    pts = [ProjPoint(2 * i, 0) for i in range(k)]
    pts += [ProjPoint(i, 1) for i in range(2 * k - 1)]
    pts += [ProjPoint(2 * i, 2) for i in range(k)]
    pts += [ProjPoint(1, 0, 0), ProjPoint(0, 1, 0)]
    X = Configuration(tuple(pts), {"family": "aikn2", "k": k, "infinity_1": "1 0 0", "infinity_2": "0 1 0"})
    _check_counterexample(X, "aikn2")
    return X


FIG1_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, -1))


def aikn_fig1_carriers(k: int) -> tuple[ProjLine, ProjLine, ProjLine]:
    """The two diagonals and the vertical line carrying the finite points."""
    s = k - 1
    return ProjLine(1, 1, -s), ProjLine(1, -1, -s), ProjLine(1, 0, 0)


def _fig1_finite(k: int) -> list[ProjPoint]:
    s = k - 1
    pts = [ProjPoint(0, 0), ProjPoint(0, s), ProjPoint(0, -s)]
    for j in range(-s, s + 1):
        # fan line y = j x / (2s) against the diagonals y = s - x and y = x - s
        xa = Fraction(2 * s * s, 2 * s + j)
        xb = Fraction(2 * s * s, 2 * s - j)
        pts.append(_homogenize(xa, s - xa))
        pts.append(_homogenize(xb, xb - s))
    out, seen = [], set()
    for P in pts:
        if P not in seen:
            seen.add(P)
            out.append(P)
    return out


def aikn_fig1(k: int) -> Configuration:
    """Origin, a fan of 2k-1 lines through it cut by two diagonals, plus one direction.

    With s = k - 1 the diagonals are x + y = s and x - y = s and the third
    carrier is the vertical line x = 0 through the diagonal endpoints (0, +-s).
    The fan lines join the origin to (2s, j) for j = -s..s; the fan line y = 0
    hits both diagonals at the same point (s, 0), leaving 4k finite points.
    The point at infinity is the first direction from ``FIG1_DIRECTIONS`` for
    which the set is a counterexample.
    """
    if k < 2:
        raise InvalidParams(f"k must be at least 2, got {k}")
    finite = _fig1_finite(k)
    if len(finite) != 4 * k:
        raise FamilyCheckFailed(f"aikn1: expected {4 * k} finite points, got {len(finite)}")
    tried = []
    for dx, dy in FIG1_DIRECTIONS:
        inf = ProjPoint(dx, dy, 0)
        X = Configuration(tuple(finite) + (inf,), {"family": "aikn1", "k": k, "infinity": f"{inf[0]} {inf[1]} 0"})
        rep = incidence_report(X)
        if not rep.dirac_holds:
            return X
        tried.append((inf, rep.t))
    raise FamilyCheckFailed(f"aikn1: no candidate direction gives a counterexample ({tried})")


def _primitive(rng: random.Random, bound: int) -> tuple[int, int]:
    while True:
        dx, dy = rng.randrange(-bound, bound + 1), rng.randrange(-bound, bound + 1)
        if (dx, dy) != (0, 0) and gcd(dx, dy) == 1:
            return dx, dy


def random_concurrent(
    counts: tuple[int, int, int],
    include_apex: bool = False,
    seed: int = 0,
    coordinate_bound: int = 20,
) -> Configuration:
    """Points on three random distinct lines through a random finite apex.

    Each line receives ``counts[i]`` points ``A + t*d`` with distinct nonzero
    integer t of either sign, so both half-lines get populated.
    """
    a, b, c = counts
    if min(counts) < 0:
        raise InvalidParams("counts must be non-negative")
    if sum(1 for v in counts if v) < 2:
        raise InvalidParams(f"counts {counts} put every point on one line through the apex")
    if a + b + c + include_apex < 3:
        raise InvalidParams("need at least three points")
    rng = random.Random(seed)
    A = (rng.randrange(-coordinate_bound, coordinate_bound + 1), rng.randrange(-coordinate_bound, coordinate_bound + 1))
    dirs: list[tuple[int, int]] = []
    while len(dirs) < 3:
        d = _primitive(rng, 4)
        if all(d[0] * e[1] - d[1] * e[0] != 0 for e in dirs):
            dirs.append(d)
    pts = []
    for cnt, (dx, dy) in zip(counts, dirs):
        span = max(2 * cnt, 4)
        ts = set()
        while len(ts) < cnt:
            t = rng.randrange(-span, span + 1)
            if t:
                ts.add(t)
        pts += [ProjPoint(A[0] + t * dx, A[1] + t * dy) for t in sorted(ts)]
    apex = ProjPoint(*A)
    if include_apex:
        pts.append(apex)
    rng.shuffle(pts)
    lines = [ProjLine(dy, -dx, dx * A[1] - dy * A[0]) for dx, dy in dirs]
    return Configuration(
        tuple(pts),
        {"family": "random-concurrent", "counts": list(counts), "include_apex": include_apex, "seed": seed,
         "apex": apex, "lines": lines},
    )


def random_general(n: int, coordinate_bound: int = 100, seed: int = 0, infinite: int = 0, retries: int = 1000) -> Configuration:
    """`n` distinct non-collinear integer points in a square, `infinite` of them directions."""
    if n < 3 or coordinate_bound < 2 or not 0 <= infinite <= n:
        raise InvalidParams(f"bad parameters n={n}, bound={coordinate_bound}, infinite={infinite}")
    rng = random.Random(seed)
    B = coordinate_bound
    for _ in range(retries):
        pts: list[ProjPoint] = []
        seen = set()
        attempts = 0
        while len(pts) < n and attempts < 50 * n:
            attempts += 1
            z = 0 if len(pts) < infinite else 1
            x, y = rng.randrange(-B, B + 1), rng.randrange(-B, B + 1)
            if (x, y, z) == (0, 0, 0):
                continue
            P = ProjPoint(x, y, z)
            if P not in seen:
                seen.add(P)
                pts.append(P)
        if len(pts) == n and len(line_members(pts)) > 1:
            return Configuration(
                tuple(pts),
                {"family": "random-general", "n": n, "bound": B, "seed": seed, "infinite": infinite},
            )
    raise GenerationExhausted(f"no non-collinear sample after {retries} attempts")


def random_transform(rng: random.Random, entry_bound: int = 5) -> ProjTransform:
    while True:
        m = tuple(tuple(rng.randrange(-entry_bound, entry_bound + 1) for _ in range(3)) for _ in range(3))
        a, b, c = m
        det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
        if det:
            return ProjTransform(m)


def apex_to_infinity(X: Configuration, apex: ProjPoint, seed: int = 0) -> tuple[ProjTransform, Configuration, ProjPoint]:
    """Send a random line through `apex` that misses X to infinity.

    The carrier lines become parallel. Every point of X other than the apex
    stays finite; an apex belonging to X becomes a point at infinity.
    """
    if apex[2] == 0:
        raise InvalidParams("the apex is already at infinity")
    rng = random.Random(seed)
    for _ in range(10_000):
        dx, dy = _primitive(rng, 9)
        L = join(apex, ProjPoint(dx, dy, 0))
        if any(incident(P, L) for P in X.points if P != apex):
            continue
        T = to_infinity(L)
        return T, Configuration(tuple(apply(T, P) for P in X.points), dict(X.metadata)), apply(T, apex)
    raise GenerationExhausted("no line through the apex avoids the configuration")


def generate(params: FamilyParams) -> Configuration:
    f = params.family
    if f == "aikn1":
        return aikn_fig1(params.k)
    if f == "aikn2":
        return aikn_fig2(params.k)
    if f == "random-concurrent":
        return random_concurrent(params.counts, params.include_apex, params.seed)
    return random_general(params.n, params.bound, params.seed)
