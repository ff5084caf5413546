"""Shared test networks and generators."""

import warnings

import pytest
from hypothesis import strategies as st

from satnav import build_network
from satnav import fixtures as fx


@pytest.fixture
def triangle():
    return fx.triangle()


@pytest.fixture
def spike():
    return fx.spike()


@pytest.fixture
def tree():
    return fx.tree()


@pytest.fixture
def line5():
    return fx.line(5)


@pytest.fixture
def line7():
    return fx.line(7)


@pytest.fixture
def c3():
    return fx.cycle(3)


@pytest.fixture
def c4():
    return fx.cycle(4)


def star_network(n, c, rays):
    """Star with the home leaf at distance c and n-1 other rays."""
    arcs = [("h", "I", "H", c)]
    arcs += [(f"r{i}", "I", f"L{i}", r) for i, r in enumerate(rays)]
    return build_network("H", arcs)


def line_network(lengths, home=None):
    """Line 0-1-...-len(lengths) with the given arc lengths."""
    arcs = [(f"a{i}", str(i), str(i + 1), w) for i, w in enumerate(lengths)]
    return build_network(str(len(lengths)) if home is None else home, arcs)


def quiet_network(home, arcs):
    """build_network without the cut-home warning (generators hit it a lot)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_network(home, arcs)


@st.composite
def small_networks(draw, max_nodes=7, max_extra_arcs=3):
    """Random connected multigraph: a spanning tree plus a few extra arcs."""
    n = draw(st.integers(min_value=3, max_value=max_nodes))
    length = st.floats(min_value=0.5, max_value=3.0)
    arcs = []
    for i in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=i - 1))
        arcs.append((f"t{i}", str(i), str(parent), draw(length)))
    n_extra = draw(st.integers(min_value=0, max_value=max_extra_arcs))
    for j in range(n_extra):
        u = draw(st.integers(min_value=0, max_value=n - 1))
        v = draw(st.integers(min_value=0, max_value=n - 1))
        if u == v:
            continue
        arcs.append((f"x{j}", str(u), str(v), draw(length)))
    home = str(draw(st.integers(min_value=0, max_value=n - 1)))
    return quiet_network(home, arcs)


@st.composite
def small_trees(draw, max_nodes=7):
    """Random tree with random arc lengths."""
    n = draw(st.integers(min_value=2, max_value=max_nodes))
    length = st.floats(min_value=0.5, max_value=3.0)
    arcs = []
    for i in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=i - 1))
        arcs.append((f"t{i}", str(i), str(parent), draw(length)))
    home = str(draw(st.integers(min_value=0, max_value=n - 1)))
    return quiet_network(home, arcs)
