"""Topology order metrics and purpose-driven selection of a communication target.

The system entropy of a topology is a weighted sum of named order
parameters. Two are built in: ``degree_entropy`` (Shannon entropy of the
node-degree histogram) and ``link_churn`` (share of links that changed since
a previous snapshot). Further parameters can be added with
:func:`register_order_parameter`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .geometry import TWO_PI, Position, bearing

Pair = tuple[int, int]


def _norm(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Topology:
    node_count: int
    links: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        links = frozenset(_norm(a, b) for a, b in self.links)
        for a, b in links:
            if a == b:
                raise ValueError(f"self-loop on node {a}")
            if a < 0 or b >= self.node_count:
                raise ValueError(f"link {(a, b)} references a node outside 0..{self.node_count - 1}")
        object.__setattr__(self, "links", links)

    @classmethod
    def from_links(cls, node_count: int, links: Iterable[Pair]) -> Topology:
        return cls(node_count, frozenset(links))

    def with_link(self, a: int, b: int) -> Topology:
        return Topology(self.node_count, self.links | {_norm(a, b)})

    def degrees(self) -> list[int]:
        deg = [0] * self.node_count
        for a, b in self.links:
            deg[a] += 1
            deg[b] += 1
        return deg


OrderParameterFn = Callable[[Topology, Optional[Topology]], float]

_REGISTRY: dict[str, OrderParameterFn] = {}


def register_order_parameter(name: str, fn: OrderParameterFn) -> None:
    """Make ``fn(topology, previous)`` available as an order parameter level."""
    if name in _REGISTRY:
        raise ValueError(f"order parameter {name!r} already registered")
    _REGISTRY[name] = fn


def order_parameter_names() -> list[str]:
    return list(_REGISTRY)


def degree_distribution_entropy(topology: Topology) -> float:
    if topology.node_count < 1:
        raise ValueError("degree entropy needs at least one node")
    n = topology.node_count
    # sorted so relabelled (isomorphic) graphs give bit-identical values
    counts = sorted(Counter(topology.degrees()).values())
    h = -math.fsum(c / n * math.log2(c / n) for c in counts)
    return max(h, 0.0)


def link_churn(topology: Topology, previous: Topology | None) -> float:
    """Changed links in the two snapshots over the total links in both.

    Replacing 3 of 10 links gives 6 / 20 = 0.3. Zero without history.
    """
    if previous is None:
        return 0.0
    total = len(topology.links) + len(previous.links)
    if total == 0:
        return 0.0
    return len(topology.links ^ previous.links) / total


register_order_parameter("degree_entropy", lambda topo, prev: degree_distribution_entropy(topo))
register_order_parameter("link_churn", link_churn)


@dataclass(frozen=True)
class OrderParameters:
    levels: tuple[str, ...] = ("degree_entropy", "link_churn")
    weights: tuple[float, ...] = (1.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.levels) != len(self.weights):
            raise ValueError(
                f"{len(self.levels)} order parameter levels but {len(self.weights)} weights"
            )
        if any(w < 0 or not math.isfinite(w) for w in self.weights):
            raise ValueError("order parameter weights must be finite and non-negative")
        if not any(w > 0 for w in self.weights):
            raise ValueError("at least one order parameter weight must be positive")
        unknown = [lv for lv in self.levels if lv not in _REGISTRY]
        if unknown:
            raise ValueError(f"unknown order parameter(s) {unknown}; known: {order_parameter_names()}")


def order_parameter_values(
    topology: Topology, params: OrderParameters, previous: Topology | None = None
) -> dict[str, float]:
    return {lv: _REGISTRY[lv](topology, previous) for lv in params.levels}


def system_entropy(
    topology: Topology, params: OrderParameters = OrderParameters(), previous: Topology | None = None
) -> float:
    values = order_parameter_values(topology, params, previous)
    return sum(w * values[lv] for lv, w in zip(params.levels, params.weights))


@dataclass(frozen=True)
class Purpose:
    """Where a node wants to talk: a bearing window and a range limit."""

    origin: int
    bearing_center: float
    half_width: float
    max_range: float
    intent_tag: str = ""

    def __post_init__(self):
        if not (0 < self.half_width <= math.pi):
            raise ValueError(f"half_width must be in (0, pi], got {self.half_width!r}")
        if not self.max_range > 0:
            raise ValueError(f"max_range must be positive, got {self.max_range!r}")


def in_bearing_window(theta: float, center: float, half_width: float) -> bool:
    """Closed-interval test of ``theta`` against ``center +/- half_width`` on the circle."""
    offset = (theta - center) % TWO_PI
    if offset > math.pi:
        offset -= TWO_PI
    return abs(offset) <= half_width + 1e-12  # absorb rounding at the window edges


def candidate_set(
    purpose: Purpose, sensed: Sequence[tuple[int, Position]], origin_pos: Position
) -> list[int]:
    out = []
    for node_id, pos in sensed:
        if node_id == purpose.origin:
            continue
        dist = math.hypot(pos[0] - origin_pos[0], pos[1] - origin_pos[1])
        if dist == 0.0 or dist > purpose.max_range:
            continue
        if in_bearing_window(bearing(origin_pos, pos), purpose.bearing_center, purpose.half_width):
            out.append(node_id)
    return out


class NoTargetError(ValueError):
    pass


def select_target(
    candidates: Sequence[int],
    base_topology: Topology,
    params: OrderParameters = OrderParameters(),
    *,
    origin: int,
) -> int:
    """Pick the candidate whose link from ``origin`` leaves the smallest system entropy.

    Each hypothetical topology is scored with ``base_topology`` as the previous
    snapshot. Ties go to the lowest node id.
    """
    if not candidates:
        raise NoTargetError("no candidate communication targets")
    scored = [
        (system_entropy(base_topology.with_link(origin, c), params, previous=base_topology), c)
        for c in sorted(set(candidates))
    ]
    return min(scored)[1]


def ring(n: int) -> Topology:
    return Topology(n, frozenset(_norm(k, (k + 1) % n) for k in range(n)))
