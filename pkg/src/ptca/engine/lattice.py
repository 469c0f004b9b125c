"""Lattice geometry: points, neighborhoods and finite regions of Z^d."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

Point = tuple[int, ...]


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def neg(a: Point) -> Point:
    return tuple(-x for x in a)


@dataclass(frozen=True)
class Neighborhood:
    """Ordered offsets a cell reads; the origin is never included."""

    offsets: tuple[Point, ...]

    def __post_init__(self):
        offsets = tuple(tuple(int(c) for c in o) for o in self.offsets)
        object.__setattr__(self, "offsets", offsets)
        if not offsets:
            raise ValueError("neighborhood must be nonempty")
        dims = {len(o) for o in offsets}
        if len(dims) != 1:
            raise ValueError("neighborhood offsets have mixed dimensions")
        if len(set(offsets)) != len(offsets):
            raise ValueError("duplicate offsets in neighborhood")
        if any(all(c == 0 for c in o) for o in offsets):
            raise ValueError("neighborhood must exclude the origin")

    @property
    def dimension(self) -> int:
        return len(self.offsets[0])

    def __len__(self) -> int:
        return len(self.offsets)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.offsets)

    def index_of(self, offset: Point) -> int | None:
        try:
            return self.offsets.index(tuple(offset))
        except ValueError:
            return None


def _check_dim(d: int):
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")


def von_neumann(d: int) -> Neighborhood:
    """The 2d unit offsets (sum of |z_k| equal to 1), lexicographically ordered."""
    _check_dim(d)
    offsets = []
    for k in range(d):
        for sign in (-1, 1):
            o = [0] * d
            o[k] = sign
            offsets.append(tuple(o))
    return Neighborhood(tuple(sorted(offsets)))


def moore(d: int) -> Neighborhood:
    """{-1, 0, 1}^d without the origin, lexicographically ordered."""
    _check_dim(d)
    offsets = [o for o in itertools.product((-1, 0, 1), repeat=d) if any(o)]
    return Neighborhood(tuple(offsets))


@dataclass(frozen=True)
class Region:
    """Inclusive bounding box; cells outside it do not exist."""

    lower: Point
    upper: Point

    def __post_init__(self):
        lower, upper = tuple(self.lower), tuple(self.upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if len(lower) != len(upper) or not lower:
            raise ValueError("region bounds must share a positive dimension")
        if any(lo > hi for lo, hi in zip(lower, upper)):
            raise ValueError(f"empty region {lower}..{upper}")

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(hi - lo + 1 for lo, hi in zip(self.lower, self.upper))

    def __contains__(self, p) -> bool:
        return len(p) == len(self.lower) and all(
            lo <= c <= hi for c, lo, hi in zip(p, self.lower, self.upper)
        )

    def points(self) -> list[Point]:
        """All points in row-major (lexicographic) order."""
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.lower, self.upper)]
        return [tuple(p) for p in itertools.product(*ranges)]

    def __len__(self) -> int:
        n = 1
        for s in self.shape:
            n *= s
        return n


def neighbor_points(z: Point, nbhd: Sequence[Point] | Neighborhood) -> list[Point]:
    return [add(z, a) for a in nbhd]
