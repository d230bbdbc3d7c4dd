"""Node placement, sector arithmetic for directional beams and range tests."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi


class Position(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class BeamConfig:
    """Sectorized antenna: ``sector_count`` beams of width ``beamwidth`` rad."""

    beamwidth: float

    def __post_init__(self):
        if not (0.0 < self.beamwidth <= TWO_PI) or not math.isfinite(self.beamwidth):
            raise ValueError(f"beamwidth must be in (0, 2*pi], got {self.beamwidth!r}")

    @property
    def sector_count(self) -> int:
        # tolerate widths like 2*pi/12 that land a hair above an exact divisor
        k = TWO_PI / self.beamwidth
        return max(1, math.ceil(k - 1e-9))


@dataclass
class NodeState:
    id: int
    pos: Position
    beam: BeamConfig
    sensed_neighbors: dict[int, Position] = field(default_factory=dict)

    def __post_init__(self):
        if self.id in self.sensed_neighbors:
            raise ValueError(f"node {self.id} lists itself as a sensed neighbor")


def place_nodes(n: int, area: tuple[float, float], rng: np.random.Generator) -> list[Position]:
    """Draw ``n`` positions uniformly over the ``(width, height)`` rectangle."""
    width, height = area
    if not (width > 0 and height > 0):
        raise ValueError(f"deployment area must have positive sides, got {area!r}")
    if n < 0:
        raise ValueError(f"node count must be non-negative, got {n}")
    xy = rng.uniform(0.0, 1.0, size=(n, 2)) * np.array([width, height])
    return [Position(float(x), float(y)) for x, y in xy]


def bearing(src: Position, dst: Position) -> float:
    """Counterclockwise angle of ``dst - src`` from the +x axis, in [0, 2*pi)."""
    dx = dst[0] - src[0]
    dy = dst[1] - src[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError(f"bearing undefined for coincident points {src!r}")
    theta = math.atan2(dy, dx)
    if theta < 0.0:
        theta += TWO_PI
    # a tiny negative angle can round up to exactly 2*pi
    return 0.0 if theta >= TWO_PI else theta


def sector_of(src: Position, dst: Position, beam: BeamConfig) -> int:
    # plain division, not float //, so this agrees bit-for-bit with sectors_between
    k = math.floor(bearing(src, dst) / beam.beamwidth)
    return min(k, beam.sector_count - 1)


def sectors_between(points: np.ndarray, src: np.ndarray, dst: np.ndarray, beam: BeamConfig) -> np.ndarray:
    """:func:`sector_of` over index arrays into an ``(n, 2)`` array.

    Deliberately scalar: ``np.arctan2`` and ``math.atan2`` can differ by an ulp,
    which moves points sitting on a sector edge, and callers rely on both
    views agreeing.
    """
    pts = [Position(float(x), float(y)) for x, y in points]
    return np.array(
        [sector_of(pts[a], pts[b], beam) for a, b in zip(src.tolist(), dst.tolist())],
        dtype=np.int64,
    )


def in_range(a: Position, b: Position, radius: float) -> bool:
    return math.hypot(a[0] - b[0], a[1] - b[1]) <= radius


def feasible_links(positions: Iterable[Position], radius: float) -> set[tuple[int, int]]:
    """All unordered pairs ``(i, j)``, ``i < j``, within ``radius`` of each other."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    i, j = feasible_pair_arrays(np.asarray(list(positions), dtype=float).reshape(-1, 2), radius)
    return set(zip(i.tolist(), j.tolist()))


def feasible_pair_arrays(points: np.ndarray, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays ``(i, j)`` with ``i < j`` of in-range pairs, in lexicographic order."""
    n = len(points)
    if n < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    diff = points[:, None, :] - points[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    i, j = np.nonzero(np.triu(dist <= radius, k=1))
    return i.astype(np.int64), j.astype(np.int64)
