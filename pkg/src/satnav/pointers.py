"""The space of direction vectors and its probability measure.

At every branch node a pointer suggests one incident arc. With probability
p (the reliability) the pointer picks uniformly among the arcs on a
shortest path to home; otherwise it picks uniformly among the remaining
arcs. Pointers at different nodes are independent, and a drawn assignment
is held fixed for the whole journey: expected times condition on the
assignment and average afterwards, never re-randomizing per visit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import CapExceeded, ValidationError
from .network import Network, ShortestPathData, classify, shortest_paths

ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class DirectionVector:
    """One pointer arc per branch node."""

    pointer: Mapping[str, str]

    def arc_at(self, node: str) -> str:
        return self.pointer[node]


@dataclass(frozen=True)
class WeightedDirectionSpace:
    """All direction vectors with their probabilities under reliability p."""

    entries: tuple[tuple[DirectionVector, float], ...]
    reliability: float


def node_pointer_distribution(
    net: Network, spd: ShortestPathData, v: str, p: float
) -> dict[str, float]:
    """Probability of each incident arc being the pointer at branch node `v`.

    Correct arcs share p, the rest share 1-p. When every incident arc is
    correct (tied shortest paths), the split is uniform and p plays no role.
    """
    incident = net.incident(v)
    good = spd.correct_arcs[v]
    n_good = len(good)
    n_bad = len(incident) - n_good
    if n_bad == 0:
        return {a.arc_id: 1.0 / len(incident) for a in incident}
    return {
        a.arc_id: (p / n_good if a.arc_id in good else (1.0 - p) / n_bad)
        for a in incident
    }


def direction_space_size(net: Network) -> int:
    """Number of direction vectors: the product of branch-node degrees."""
    size = 1
    for v in classify(net).branch_nodes:
        size *= net.degree(v)
    return size


def enumerate_direction_space(
    net: Network,
    spd: ShortestPathData | None = None,
    p: float = 0.5,
    cap: int = ENUMERATION_CAP,
) -> WeightedDirectionSpace:
    """All direction vectors with product weights; weights sum to 1.

    Raises CapExceeded when the product of branch degrees exceeds `cap`;
    callers should fall back to simulation.
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"reliability p={p} outside [0, 1]")
    size = direction_space_size(net)
    if size > cap:
        raise CapExceeded(
            f"{size} direction vectors exceed the enumeration cap {cap}"
        )
    if spd is None:
        spd = shortest_paths(net)
    branch = sorted(classify(net).branch_nodes)
    per_node = [
        sorted(node_pointer_distribution(net, spd, v, p).items()) for v in branch
    ]
    entries = []
    for combo in itertools.product(*per_node):
        weight = math.prod(w for _, w in combo)
        pointer = {v: arc_id for v, (arc_id, _) in zip(branch, combo)}
        entries.append((DirectionVector(pointer), weight))
    return WeightedDirectionSpace(tuple(entries), p)


def sample_direction_vector(
    net: Network,
    spd: ShortestPathData,
    p: float,
    rng: np.random.Generator,
) -> DirectionVector:
    """Draw one pointer per branch node, independently."""
    pointer = {}
    for v in sorted(classify(net).branch_nodes):
        dist = sorted(node_pointer_distribution(net, spd, v, p).items())
        u = rng.random()
        acc = 0.0
        chosen = dist[-1][0]
        for arc_id, w in dist:
            acc += w
            if u < acc:
                chosen = arc_id
                break
        pointer[v] = chosen
    return DirectionVector(pointer)
