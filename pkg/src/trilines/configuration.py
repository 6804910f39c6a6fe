"""The point-set container used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidConfiguration
from .kernel import ProjPoint, ProjTransform, apply, euclidean_chart

__all__ = ["Configuration", "euclideanize", "transform"]


@dataclass(frozen=True)
class Configuration:
    """An ordered set of at least three distinct projective points.

    `metadata` carries free-form provenance (generator family, seed, chosen
    infinite directions); it does not take part in equality.
    """

    points: tuple[ProjPoint, ...]
    metadata: Mapping[str, object] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 3:
            raise InvalidConfiguration(f"need at least 3 points, got {len(pts)}")
        if len(set(pts)) != len(pts):
            seen = set()
            dup = next(p for p in pts if p in seen or seen.add(p))
            raise InvalidConfiguration(f"duplicate point {dup!r}")

    @classmethod
    def of(cls, points: Iterable, **metadata) -> "Configuration":
        return cls(tuple(points), metadata)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self.points

    @property
    def infinite_points(self) -> tuple[ProjPoint, ...]:
        return tuple(p for p in self.points if p[2] == 0)


def transform(T: ProjTransform, X: Configuration) -> Configuration:
    return Configuration(tuple(apply(T, p) for p in X.points), dict(X.metadata))


def euclideanize(X: Configuration) -> tuple[ProjTransform, Configuration]:
    """Projectively move X so that no point lies at infinity.

    The point order is preserved, so ``X.points[i]`` corresponds to
    ``image.points[i]``. All-finite input comes back unchanged with the
    identity transform.
    """
    T = euclidean_chart(X.points)
    if T.is_identity:
        return T, X
    return T, transform(T, X)
