"""Slotted topology construction: blind directional scanning vs. sensing-assisted pointing.

Both protocols share one slot model. A listener decodes a transmitter when the
transmitter's beam sector contains the listener, the listener's beam sector
contains the transmitter, the pair is within radio range, and no other in-range
transmitter reaches the same listener in that slot (no capture).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    BeamConfig,
    NodeState,
    Position,
    feasible_pair_arrays,
    sector_of,
    sectors_between,
)

DEFAULT_SLOT_CAP = 1_000_000

Pair = tuple[int, int]


@dataclass(frozen=True)
class DiscoveryPolicy:
    kind: str = "blind"
    transmit_probability: float = 0.5

    def __post_init__(self):
        if self.kind not in ("blind", "sensing_assisted"):
            raise ValueError(f"unknown discovery policy {self.kind!r}")
        if not 0.0 < self.transmit_probability < 1.0:
            raise ValueError(
                f"transmit_probability must be in (0, 1), got {self.transmit_probability!r}"
            )


@dataclass(frozen=True)
class SlotEvent:
    """One transmitter that illuminated at least one listener during a slot.

    ``receivers`` are the listeners that decoded it; ``collision`` is set when
    some listener it reached was also reached by another transmitter.
    """

    transmitter: int
    sector: int
    receivers: tuple[int, ...]
    collision: bool


@dataclass
class DiscoveryResult:
    slots_used: int
    discovered_links: set[Pair]
    slot_log: list[list[SlotEvent]]
    discovered_at: dict[Pair, int] = field(default_factory=dict)
    completed: bool = True


class DiscoveryTimeout(RuntimeError):
    def __init__(self, partial: DiscoveryResult, slot_cap: int):
        super().__init__(
            f"topology construction incomplete after {slot_cap} slots "
            f"({len(partial.discovered_links)} links discovered)"
        )
        self.partial = partial
        self.slot_cap = slot_cap


def replay_links(slot_log: list[list[SlotEvent]]) -> set[Pair]:
    """Rebuild the discovered link set from a slot log."""
    links = set()
    for events in slot_log:
        for ev in events:
            for r in ev.receivers:
                links.add((min(ev.transmitter, r), max(ev.transmitter, r)))
    return links


class _LinkTable:
    """Directed view of the feasible pairs with their true sector indices."""

    def __init__(self, points: np.ndarray, radius: float, beam: BeamConfig):
        i, j = feasible_pair_arrays(points, radius)
        self.n = len(points)
        self.pairs = list(zip(i.tolist(), j.tolist()))
        m = len(i)
        self.src = np.concatenate([i, j])
        self.dst = np.concatenate([j, i])
        self.pair_index = np.concatenate([np.arange(m), np.arange(m)])
        # sector at src that contains dst, and sector at dst that contains src
        self.sector_fwd = sectors_between(points, self.src, self.dst, beam)
        self.sector_back = sectors_between(points, self.dst, self.src, beam)

    def resolve(self, transmit, tx_sector, listen, rx_sector):
        """Apply one slot of the channel model.

        Returns ``(decoded_pair_indices, events)``.
        """
        src, dst = self.src, self.dst
        hit = (
            transmit[src]
            & listen[dst]
            & (tx_sector[src] == self.sector_fwd)
            & (rx_sector[dst] == self.sector_back)
        )
        hit_idx = np.flatnonzero(hit)
        if hit_idx.size == 0:
            return hit_idx, []
        load = np.bincount(dst[hit_idx], minlength=self.n)
        ok_mask = load[dst[hit_idx]] == 1
        decoded = hit_idx[ok_mask]

        events: dict[int, tuple[list[int], bool]] = {}
        for k, ok in zip(hit_idx.tolist(), ok_mask.tolist()):
            t = int(src[k])
            receivers, collided = events.setdefault(t, ([], False))
            if ok:
                receivers.append(int(dst[k]))
            elif not collided:
                events[t] = (receivers, True)
        log = [
            SlotEvent(t, int(tx_sector[t]), tuple(sorted(rs)), coll)
            for t, (rs, coll) in sorted(events.items())
        ]
        return self.pair_index[decoded], log


def _shared_beam(nodes: list[NodeState]) -> BeamConfig:
    if not nodes:
        raise ValueError("discovery needs at least one node")
    beam = nodes[0].beam
    if any(nd.beam != beam for nd in nodes):
        raise ValueError("all nodes must share one BeamConfig")
    for k, nd in enumerate(nodes):
        if nd.id != k:
            raise ValueError("node ids must be contiguous from 0 in list order")
    return beam


def _points(nodes: list[NodeState]) -> np.ndarray:
    return np.array([nd.pos for nd in nodes], dtype=float).reshape(-1, 2)


class _Progress:
    def __init__(self, table: _LinkTable):
        self.table = table
        self.remaining = np.ones(len(table.pairs), dtype=bool)
        self.left = len(table.pairs)
        self.discovered_at: dict[Pair, int] = {}
        self.log: list[list[SlotEvent]] = []

    def record(self, decoded: np.ndarray, events: list[SlotEvent]):
        slot = len(self.log)
        self.log.append(events)
        for p in np.unique(decoded).tolist():
            if self.remaining[p]:
                self.remaining[p] = False
                self.left -= 1
                self.discovered_at[self.table.pairs[p]] = slot

    def result(self, completed: bool) -> DiscoveryResult:
        return DiscoveryResult(
            slots_used=len(self.log),
            discovered_links=set(self.discovered_at),
            slot_log=self.log,
            discovered_at=dict(self.discovered_at),
            completed=completed,
        )


def run_blind_discovery(
    nodes: list[NodeState],
    radius: float,
    policy: DiscoveryPolicy,
    rng: np.random.Generator,
    slot_cap: int = DEFAULT_SLOT_CAP,
) -> DiscoveryResult:
    """Synchronous random transmit/listen scan over uniformly chosen sectors.

    Every slot each node transmits with ``policy.transmit_probability`` and
    otherwise listens, in either case pointing at a uniformly random sector.
    Runs until every feasible link has been decoded in at least one direction.
    """
    beam = _shared_beam(nodes)
    table = _LinkTable(_points(nodes), radius, beam)
    progress = _Progress(table)
    n, k = len(nodes), beam.sector_count
    p = policy.transmit_probability

    while progress.left:
        if len(progress.log) >= slot_cap:
            raise DiscoveryTimeout(progress.result(False), slot_cap)
        transmit = rng.random(n) < p
        sector = rng.integers(0, k, size=n)
        decoded, events = table.resolve(transmit, sector, ~transmit, sector)
        progress.record(decoded, events)
    return progress.result(True)


def build_nodes(
    positions: list[Position],
    beam: BeamConfig,
    radius: float,
    rng: np.random.Generator | None = None,
    position_noise: float = 0.0,
) -> list[NodeState]:
    """Wrap positions as nodes whose sensing prior covers every in-range neighbor.

    Estimated neighbor positions carry i.i.d. Gaussian error of standard
    deviation ``position_noise`` meters per axis.
    """
    if position_noise < 0:
        raise ValueError(f"position_noise must be non-negative, got {position_noise!r}")
    if position_noise > 0 and rng is None:
        raise ValueError("a random stream is required when position_noise > 0")
    nodes = [NodeState(k, Position(*p), beam) for k, p in enumerate(positions)]
    pts = np.asarray(positions, dtype=float).reshape(-1, 2)
    for a, b in zip(*feasible_pair_arrays(pts, radius)):
        a, b = int(a), int(b)
        nodes[a].sensed_neighbors[b] = _sense(positions[b], rng, position_noise)
        nodes[b].sensed_neighbors[a] = _sense(positions[a], rng, position_noise)
    return nodes


def _sense(true_pos, rng, sigma) -> Position:
    if sigma == 0:
        return Position(float(true_pos[0]), float(true_pos[1]))
    dx, dy = rng.normal(0.0, sigma, size=2)
    return Position(float(true_pos[0] + dx), float(true_pos[1] + dy))


def run_sensing_assisted_discovery(
    nodes: list[NodeState],
    radius: float,
    rng: np.random.Generator | None = None,
    slot_cap: int = DEFAULT_SLOT_CAP,
    position_noise: float = 0.0,
) -> DiscoveryResult:
    """Pointed pairwise handshakes scheduled from each node's sensing prior.

    Per slot a greedy matching walks the undiscovered feasible pairs in
    ``(lower id, higher id)`` order. A pair is scheduled when neither end
    already holds a role and, judged from the sensed positions, neither the new
    transmission nor any already-scheduled one would land in the other's
    listening beam. The lower id transmits toward its partner, which listens
    back toward it.

    A failed handshake (possible only with noisy priors) triggers a fresh
    sensing estimate for that pair, drawn with ``position_noise``.
    """
    beam = _shared_beam(nodes)
    table = _LinkTable(_points(nodes), radius, beam)
    progress = _Progress(table)
    n = len(nodes)
    if position_noise > 0 and rng is None:
        raise ValueError("a random stream is required when position_noise > 0")

    estimates: dict[Pair, Position] = {}
    for nd in nodes:
        for other, pos in nd.sensed_neighbors.items():
            estimates[(nd.id, other)] = pos
    for a, b in table.pairs:
        if (a, b) not in estimates or (b, a) not in estimates:
            raise ValueError(f"sensing prior misses feasible pair {(a, b)}")

    own = [nd.pos for nd in nodes]

    def aim(a: int, b: int) -> int:
        return sector_of(own[a], estimates[(a, b)], beam)

    def reaches(t: int, t_sector: int, lst: int, l_sector: int) -> bool:
        # only interference the nodes can foresee from their priors is avoided
        if (t, lst) not in estimates or (lst, t) not in estimates:
            return False
        return aim(t, lst) == t_sector and aim(lst, t) == l_sector

    while progress.left:
        if len(progress.log) >= slot_cap:
            raise DiscoveryTimeout(progress.result(False), slot_cap)
        busy = np.zeros(n, dtype=bool)
        scheduled: list[tuple[int, int, int, int]] = []
        for p in np.flatnonzero(progress.remaining).tolist():
            a, b = table.pairs[p]
            if busy[a] or busy[b]:
                continue
            sa, sb = aim(a, b), aim(b, a)
            if any(
                reaches(t, st, b, sb) or reaches(a, sa, lst, sl)
                for t, st, lst, sl in scheduled
            ):
                continue
            busy[a] = busy[b] = True
            scheduled.append((a, sa, b, sb))

        transmit = np.zeros(n, dtype=bool)
        listen = np.zeros(n, dtype=bool)
        tx_sector = np.zeros(n, dtype=np.int64)
        rx_sector = np.zeros(n, dtype=np.int64)
        for a, sa, b, sb in scheduled:
            transmit[a], tx_sector[a] = True, sa
            listen[b], rx_sector[b] = True, sb
        decoded, events = table.resolve(transmit, tx_sector, listen, rx_sector)
        progress.record(decoded, events)

        if position_noise > 0:
            done = {table.pairs[q] for q in decoded.tolist()}
            for a, _, b, _ in scheduled:
                if (a, b) not in done:
                    estimates[(a, b)] = _sense(own[b], rng, position_noise)
                    estimates[(b, a)] = _sense(own[a], rng, position_noise)
    return progress.result(True)


def run_discovery(
    nodes: list[NodeState],
    radius: float,
    policy: DiscoveryPolicy,
    rng: np.random.Generator,
    slot_cap: int = DEFAULT_SLOT_CAP,
    position_noise: float = 0.0,
) -> DiscoveryResult:
    if policy.kind == "blind":
        return run_blind_discovery(nodes, radius, policy, rng, slot_cap)
    return run_sensing_assisted_discovery(nodes, radius, rng, slot_cap, position_noise)


def reduction_ratio(blind: DiscoveryResult | int, assisted: DiscoveryResult | int) -> float:
    """Fractional saving in slots of the assisted run relative to the blind one."""
    b = blind if isinstance(blind, int) else blind.slots_used
    a = assisted if isinstance(assisted, int) else assisted.slots_used
    if b == 0:
        raise ZeroDivisionError("reduction ratio undefined when the blind run used no slots")
    return (b - a) / b



__all__ = [
    "DEFAULT_SLOT_CAP",
    "DiscoveryPolicy",
    "DiscoveryResult",
    "DiscoveryTimeout",
    "SlotEvent",
    "build_nodes",
    "reduction_ratio",
    "replay_links",
    "run_blind_discovery",
    "run_discovery",
    "run_sensing_assisted_discovery",
]

