"""Direction-vector space: per-node distributions, enumeration, sampling."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from satnav import (
    CapExceeded,
    enumerate_direction_space,
    node_pointer_distribution,
    sample_direction_vector,
    shortest_paths,
)
from satnav import fixtures as fx
from conftest import small_networks


def test_triangle_node_distribution(triangle):
    spd = shortest_paths(triangle)
    dist = node_pointer_distribution(triangle, spd, "A", 0.75)
    assert dist == {"AB": 0.75, "AC": 0.25}


def test_c4_antipodal_ignores_p(c4):
    spd = shortest_paths(c4)
    for p in (0.1, 0.5, 0.99):
        dist = node_pointer_distribution(c4, spd, "C", p)
        assert dist == {"AC": 0.5, "CB": 0.5}


def test_degree_three_split(spike):
    spd = shortest_paths(spike)
    dist = node_pointer_distribution(spike, spd, "X", 0.75)
    assert dist["XH"] == pytest.approx(0.75)
    assert dist["AX1"] == pytest.approx(0.125)
    assert dist["AX2"] == pytest.approx(0.125)


def test_triangle_enumeration_weights(triangle):
    p = 0.75
    space = enumerate_direction_space(triangle, p=p)
    assert len(space.entries) == 4
    weights = sorted(w for _, w in space.entries)
    assert weights == pytest.approx(
        sorted([p * p, p * (1 - p), (1 - p) * p, (1 - p) ** 2])
    )
    all_correct = [w for d, w in space.entries
                   if d.pointer == {"A": "AB", "B": "BC"}]
    assert all_correct == [pytest.approx(p * p)]


def test_spike_has_six_vectors(spike):
    assert len(enumerate_direction_space(spike, p=0.75).entries) == 6


def test_tree_has_six_vectors(tree):
    space = enumerate_direction_space(tree, p=0.75)
    assert len(space.entries) == 6
    for d, _ in space.entries:
        assert set(d.pointer) == {"A", "B"}


def test_cap_exceeded(triangle):
    with pytest.raises(CapExceeded):
        enumerate_direction_space(triangle, p=0.5, cap=3)


@pytest.mark.parametrize("name", sorted(fx.FIXTURES))
@pytest.mark.parametrize("p", [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0])
def test_weights_sum_to_one_on_fixtures(name, p):
    space = enumerate_direction_space(fx.fixture(name), p=p)
    assert abs(sum(w for _, w in space.entries) - 1.0) < 1e-12


@given(small_networks(), st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=40, deadline=None)
def test_weights_sum_to_one_generated(net, p):
    space = enumerate_direction_space(net, p=p)
    assert abs(sum(w for _, w in space.entries) - 1.0) < 1e-12


def test_all_correct_weight_is_product(tree):
    p = 0.6
    spd = shortest_paths(tree)
    space = enumerate_direction_space(tree, spd, p)
    correct = {v: next(iter(arcs)) for v, arcs in spd.correct_arcs.items()}
    weight = [w for d, w in space.entries if dict(d.pointer) == correct]
    # both branch nodes have a unique correct arc, so the product is p * p
    assert weight == [pytest.approx(p * p, abs=1e-15)]
    expected = math.prod(
        node_pointer_distribution(tree, spd, v, p)[a] for v, a in correct.items()
    )
    assert weight == [pytest.approx(expected)]


def test_sampling_p_one_always_correct(triangle):
    spd = shortest_paths(triangle)
    rng = np.random.default_rng(1)
    for _ in range(50):
        d = sample_direction_vector(triangle, spd, 1.0, rng)
        assert d.pointer == {"A": "AB", "B": "BC"}


def test_sampling_p_zero_always_wrong(triangle):
    spd = shortest_paths(triangle)
    rng = np.random.default_rng(2)
    for _ in range(50):
        d = sample_direction_vector(triangle, spd, 0.0, rng)
        assert d.pointer == {"A": "AC", "B": "AB"}


def test_sampling_matches_enumeration(spike):
    p = 0.65
    n = 100_000
    spd = shortest_paths(spike)
    space = enumerate_direction_space(spike, spd, p)
    keys = [tuple(sorted(d.pointer.items())) for d, _ in space.entries]
    expected = np.array([w for _, w in space.entries]) * n
    counts = dict.fromkeys(keys, 0)
    rng = np.random.default_rng(20240817)
    for _ in range(n):
        d = sample_direction_vector(spike, spd, p, rng)
        counts[tuple(sorted(d.pointer.items()))] += 1
    observed = np.array([counts[k] for k in keys])
    result = stats.chisquare(observed, expected)
    assert result.pvalue > 1e-3
