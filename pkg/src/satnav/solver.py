"""Exact expected hitting times for fixed pointers, and their average.

For one direction vector the walk is a Markov chain on the nodes with home
absorbing: at a branch node the pointer arc is taken with the trust
probability, every other incident arc uniformly otherwise; a leaf reflects.
Expected hitting times solve a dense linear system per direction vector and
are then averaged with the direction-space weights.

Nodes from which the induced chain cannot reach home -- or that can wander
into a region that cannot -- have infinite expected time. They are found by
reachability analysis before solving, so cycling pointer configurations are
exact infinities rather than solver blow-ups.

A vectorized Monte Carlo walker provides an independent check on all of the
exact machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import SingularSystem, ValidationError
from .network import Network, classify, shortest_paths
from .pointers import (
    ENUMERATION_CAP,
    DirectionVector,
    WeightedDirectionSpace,
    enumerate_direction_space,
    node_pointer_distribution,
)


def _check_probability(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name}={value} outside [0, 1]")
    return float(value)


@dataclass(frozen=True)
class Uniform:
    """One trust probability at every branch node."""

    q: float

    def __post_init__(self):
        _check_probability("trust q", self.q)

    def trust_at(self, degree: int) -> float:
        return self.q


@dataclass(frozen=True)
class ByDegree:
    """Trust indexed by the degree of the current node (counting agent)."""

    q_by_degree: Mapping[int, float]

    def __post_init__(self):
        for k, q in self.q_by_degree.items():
            _check_probability(f"trust q_{k}", q)

    def trust_at(self, degree: int) -> float:
        try:
            return self.q_by_degree[degree]
        except KeyError:
            raise ValidationError(
                f"policy defines no trust for degree {degree}"
            ) from None


TrustPolicy = Union[Uniform, ByDegree]


@dataclass
class TimeProfile:
    """Expected time to home from every node; +inf where home is not
    reached almost surely."""

    time: dict[str, float]


@dataclass(frozen=True)
class SimulationResult:
    mean: float
    std_error: float
    censored: int
    n_walks: int
    seed: int


def step_distribution(
    net: Network, d: DirectionVector, policy: TrustPolicy, v: str
) -> dict[str, float]:
    """Arc probabilities for one step from `v` (which must not be home)."""
    if v == net.home:
        raise ValidationError("no step is taken from the home node")
    incident = net.incident(v)
    n = len(incident)
    if n == 1:
        return {incident[0].arc_id: 1.0}
    q = policy.trust_at(n)
    ptr = d.arc_at(v)
    other = (1.0 - q) / (n - 1)
    return {a.arc_id: (q if a.arc_id == ptr else other) for a in incident}


def hitting_times_for_direction(
    net: Network, d: DirectionVector, policy: TrustPolicy
) -> TimeProfile:
    """Solve T(v) = sum_a P(a) (len(a) + T(other end)), T(home) = 0.

    Nodes whose walk has positive probability of never reaching home get
    +inf; the linear system is restricted to the rest.
    """
    home = net.home
    steps = {
        v: step_distribution(net, d, policy, v) for v in net.nodes if v != home
    }

    # nodes that can reach home through positive-probability arcs
    can_reach = {home}
    changed = True
    while changed:
        changed = False
        for v, dist in steps.items():
            if v in can_reach:
                continue
            for a in net.incident(v):
                if dist.get(a.arc_id, 0.0) > 0.0 and a.other(v) in can_reach:
                    can_reach.add(v)
                    changed = True
                    break

    # nodes with a positive-probability route into the complement: their
    # expected hitting time is infinite even if absorption is possible
    doomed = set(net.nodes) - can_reach
    changed = True
    while changed:
        changed = False
        for v, dist in steps.items():
            if v in doomed:
                continue
            for a in net.incident(v):
                if dist.get(a.arc_id, 0.0) > 0.0 and a.other(v) in doomed:
                    doomed.add(v)
                    changed = True
                    break

    unknowns = sorted(v for v in net.nodes if v != home and v not in doomed)
    time: dict[str, float] = {home: 0.0}
    time.update({v: math.inf for v in doomed})
    if unknowns:
        index = {v: i for i, v in enumerate(unknowns)}
        n = len(unknowns)
        mat = np.eye(n)
        rhs = np.zeros(n)
        for v in unknowns:
            i = index[v]
            for a in net.incident(v):
                prob = steps[v].get(a.arc_id, 0.0)
                if prob == 0.0:
                    continue
                rhs[i] += prob * a.length
                w = a.other(v)
                if w != home:
                    mat[i, index[w]] -= prob
        try:
            sol = np.linalg.solve(mat, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(
                f"hitting-time system singular for pointers {d.pointer}: {exc}"
            ) from None
        time.update({v: float(sol[index[v]]) for v in unknowns})
    return TimeProfile(time)


def profile_residual(
    net: Network, d: DirectionVector, policy: TrustPolicy, profile: TimeProfile
) -> float:
    """Max one-step recurrence violation over the finite entries."""
    worst = 0.0
    for v, t in profile.time.items():
        if v == net.home or math.isinf(t):
            continue
        expect = 0.0
        for a, prob in step_distribution(net, d, policy, v).items():
            arc = net.arc(a)
            expect += prob * (arc.length + profile.time[arc.other(v)])
        worst = max(worst, abs(t - expect))
    return worst


def _validate_policy(net: Network, policy: TrustPolicy) -> None:
    for v in classify(net).branch_nodes:
        policy.trust_at(net.degree(v))


def expected_profile(
    net: Network,
    p: float,
    policy: TrustPolicy,
    cap: int = ENUMERATION_CAP,
    space: WeightedDirectionSpace | None = None,
) -> dict[str, float]:
    """Weight-averaged expected time to home from every node.

    Directions of weight zero are skipped, so reliability 0 or 1 stays
    finite whenever every pointer configuration that actually occurs leads
    home. A node is +inf as soon as one positive-weight direction strands it.
    """
    _validate_policy(net, policy)
    if space is None:
        space = enumerate_direction_space(net, p=p, cap=cap)
    total = {v: 0.0 for v in net.nodes}
    for d, weight in space.entries:
        if weight == 0.0:
            continue
        profile = hitting_times_for_direction(net, d, policy)
        for v, t in profile.time.items():
            total[v] += weight * t if not math.isinf(t) else math.inf
    return total


def expected_time(
    net: Network,
    p: float,
    policy: TrustPolicy,
    start: str,
    cap: int = ENUMERATION_CAP,
    space: WeightedDirectionSpace | None = None,
) -> float:
    """Expected time to reach home from `start`, averaged over pointers."""
    if start not in net.nodes:
        raise ValidationError(f"unknown start node {start!r}")
    return expected_profile(net, p, policy, cap=cap, space=space)[start]


def expected_time_between(
    net: Network,
    p: float,
    policy: TrustPolicy,
    start: str,
    to: str,
    cap: int = ENUMERATION_CAP,
) -> float:
    """Expected time to first reach `to` from `start`.

    The journey is solved on the network re-homed at `to`: the target is
    absorbing and pointer correctness means "on a shortest path to the
    target". This is what makes crossing times on a line telescope and
    reproduces the left/right asymmetry of travel between interior nodes.
    """
    if start not in net.nodes:
        raise ValidationError(f"unknown start node {start!r}")
    if start == to:
        return 0.0
    return expected_time(net.retargeted(to), p, policy, start, cap=cap)


def simulate(
    net: Network,
    p: float,
    policy: TrustPolicy,
    start: str,
    n_walks: int,
    max_time: float | None = None,
    seed: int = 0,
) -> SimulationResult:
    """Monte Carlo estimate of expected_time.

    Each walk draws one direction vector, then walks by the step
    distribution until home or until the accumulated time exceeds
    `max_time` (default 1e4 x distance(start)). Censored walks are
    excluded from the mean and counted, never silently truncated.
    """
    if n_walks < 1:
        raise ValidationError("n_walks must be >= 1")
    _check_probability("reliability p", p)
    _validate_policy(net, policy)
    if start not in net.nodes:
        raise ValidationError(f"unknown start node {start!r}")

    spd = shortest_paths(net)
    if max_time is None:
        max_time = 1e4 * max(spd.distance[start], 1.0)
    if max_time <= 0:
        raise ValidationError("max_time must be positive")
    rng = np.random.default_rng(seed)

    nodes = sorted(net.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    n_nodes = len(nodes)
    branch = classify(net).branch_nodes
    max_deg = max(net.degree(v) for v in nodes)

    dest = np.zeros((n_nodes, max_deg), dtype=np.int64)
    alen = np.zeros((n_nodes, max_deg), dtype=float)
    # cumulative step probabilities per (node, pointer slot)
    cum_step = np.ones((n_nodes, max_deg, max_deg))
    cum_mu = np.ones((n_nodes, max_deg))
    for v in nodes:
        i = idx[v]
        incident = net.incident(v)
        deg = len(incident)
        for s, a in enumerate(incident):
            dest[i, s] = idx[a.other(v)]
            alen[i, s] = a.length
        if v == net.home:
            continue
        if v in branch:
            mu = node_pointer_distribution(net, spd, v, p)
            cum_mu[i, :deg] = np.cumsum([mu[a.arc_id] for a in incident])
            q = policy.trust_at(deg)
            for ptr in range(deg):
                probs = np.full(deg, (1.0 - q) / (deg - 1))
                probs[ptr] = q
                cum_step[i, ptr, :deg] = np.cumsum(probs)
                cum_step[i, ptr, deg - 1] = 1.0
        else:  # leaf: forced reflection
            cum_step[i, 0, :] = 1.0
        cum_mu[i, deg - 1] = 1.0

    # one pointer slot per (walk, node); only branch columns are consulted
    ptr = np.zeros((n_walks, n_nodes), dtype=np.int64)
    for v in sorted(branch):
        i = idx[v]
        deg = net.degree(v)
        ptr[:, i] = np.searchsorted(
            cum_mu[i, :deg], rng.random(n_walks), side="right"
        )

    pos = np.full(n_walks, idx[start], dtype=np.int64)
    times = np.zeros(n_walks)
    walk_id = np.arange(n_walks)
    hit_times: list[np.ndarray] = []
    censored = 0
    home_i = idx[net.home]

    active = pos != home_i
    pos, times, walk_id = pos[active], times[active], walk_id[active]
    if n_walks - len(pos) > 0:
        hit_times.append(np.zeros(n_walks - len(pos)))

    while len(pos) > 0:
        cum = cum_step[pos, ptr[walk_id, pos]]
        slot = (rng.random((len(pos), 1)) > cum).sum(axis=1)
        times = times + alen[pos, slot]
        pos = dest[pos, slot]
        done = pos == home_i
        if done.any():
            hit_times.append(times[done])
        keep = ~done
        over = keep & (times >= max_time)
        censored += int(over.sum())
        keep &= ~over
        pos, times, walk_id = pos[keep], times[keep], walk_id[keep]

    finished = np.concatenate(hit_times) if hit_times else np.array([])
    if len(finished) == 0:
        return SimulationResult(math.nan, math.nan, censored, n_walks, seed)
    mean = float(finished.mean())
    if len(finished) > 1:
        se = float(finished.std(ddof=1) / math.sqrt(len(finished)))
    else:
        se = 0.0
    return SimulationResult(mean, se, censored, n_walks, seed)
