"""Purpose-driven target choice: filter sensed nodes by intent, keep the most orderly link.

A lead vehicle wants the road state to its right. Every sensed node inside a
bearing window and range is a candidate; the one whose link leaves the
smallest system entropy wins.
"""

import math

import numpy as np

from jcsc_sim.geometry import feasible_links, place_nodes
from jcsc_sim.purpose import OrderParameters, Purpose, Topology, candidate_set, select_target, system_entropy

rng = np.random.default_rng(11)
positions = place_nodes(40, (800.0, 800.0), rng)
topo = Topology(len(positions), frozenset(feasible_links(positions, 150.0)))
origin = 0
print(f"origin at ({positions[origin].x:.0f}, {positions[origin].y:.0f}), {len(topo.links)} existing links")

right_turn = Purpose(origin=origin, bearing_center=-math.pi / 2 % (2 * math.pi), half_width=math.pi / 3,
                     max_range=400.0, intent_tag="right-turn road status")
sensed = [(k, p) for k, p in enumerate(positions) if k != origin]
cands = candidate_set(right_turn, sensed, positions[origin])
print(f"candidates for '{right_turn.intent_tag}': {cands}")

params = OrderParameters()
for c in cands:
    h = system_entropy(topo.with_link(origin, c), params, previous=topo)
    print(f"  link 0-{c:<3d} system entropy {h:.4f}")
if cands:
    print("selected:", select_target(cands, topo, params, origin=origin))

# weighting only the degree level removes the (constant) churn term
deg_only = OrderParameters(params.levels, (1.0, 0.0))
if cands:
    print("selected with degree entropy only:", select_target(cands, topo, deg_only, origin=origin))
