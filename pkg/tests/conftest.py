import itertools

import pytest
from hypothesis import strategies as st

from minmaxhom.digraph import Digraph


def directed_cycle(k: int) -> Digraph:
    return Digraph.from_arcs(k, [(i, (i + 1) % k) for i in range(k)])


def path(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, i + 1) for i in range(n - 1)])


def dg(n: int, *arcs) -> Digraph:
    return Digraph.from_arcs(n, arcs)


TRANSITIVE_TOURNAMENT = dg(3, (0, 1), (0, 2), (1, 2))
C3_WITH_DIGON = dg(3, (0, 1), (1, 2), (2, 0), (1, 0))
REFLEXIVE_K2 = dg(2, (0, 0), (1, 1), (0, 1), (1, 0))


def all_digraphs(n: int, loops: bool):
    cells = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    for mask in range(1 << len(cells)):
        yield Digraph(n, frozenset(c for b, c in enumerate(cells) if mask >> b & 1))


@st.composite
def digraphs(draw, max_n: int = 6, loops: bool = True) -> Digraph:
    n = draw(st.integers(1, max_n))
    cells = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    chosen = draw(st.sets(st.sampled_from(cells))) if cells else set()
    return Digraph(n, frozenset(chosen))


@st.composite
def leveled_digraphs(draw, max_n: int = 7, max_k: int = 4) -> Digraph:
    """Digraphs that map to a directed k-cycle by construction."""
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(1, max_n))
    lv = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    cells = [(u, v) for u in range(n) for v in range(n) if lv[v] == (lv[u] + 1) % k]
    chosen = draw(st.sets(st.sampled_from(cells))) if cells else set()
    return Digraph(n, frozenset(chosen))


@pytest.fixture
def c6():
    return directed_cycle(6)
