"""Brute-force oracles.  Deliberately independent of the pair-graph machinery."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .digraph import Digraph, LevelAssignment
from .ordering import KMinMaxOrdering

ORDERING_GUARD = 10**7
SUBSET_GUARD = 2**20


class GuardExceeded(RuntimeError):
    pass


def _bad_quadruples(h: Digraph, classes: list[list[int]], k: int) -> np.ndarray:
    """Rows (i, j, s, r) where ir, js are arcs but is or jr is missing.

    For every such row the ordering must not have both i<j and s<r.
    """
    arcs = h.arcs
    rows = []
    for t in range(k):
        lower, upper = classes[t], classes[(t + 1) % k]
        for i in lower:
            for j in lower:
                if i == j:
                    continue
                for s in upper:
                    for r in upper:
                        if s == r:
                            continue
                        if (i, r) in arcs and (j, s) in arcs and not ((i, s) in arcs and (j, r) in arcs):
                            rows.append((i, j, s, r))
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


def oracle_ordering(
    h: Digraph,
    k: int = 1,
    levels: LevelAssignment | None = None,
    guard: int = ORDERING_GUARD,
    chunk: int = 2048,
) -> KMinMaxOrdering | None:
    """Lexicographically first k-Min-Max ordering by exhaustive search, or None."""
    if levels is None:
        if k != 1:
            raise ValueError("levels are required when k > 1")
        levels = LevelAssignment(1, dict.fromkeys(range(h.n), 0))
    if levels.k != k:
        raise ValueError("level assignment modulus differs from k")
    classes = levels.classes()
    total = math.prod(math.factorial(len(c)) for c in classes)
    if total > guard:
        raise GuardExceeded(f"{total} candidate orderings exceed the guard {guard}")
    bad = _bad_quadruples(h, classes, k)
    lv = tuple(levels.levels[v] for v in range(h.n))

    candidates = itertools.product(*(itertools.permutations(c) for c in classes))
    while True:
        batch = list(itertools.islice(candidates, chunk))
        if not batch:
            return None
        if len(bad) == 0:
            return KMinMaxOrdering(k, lv, batch[0])
        pos = np.empty((len(batch), h.n), dtype=np.int64)
        for row, orders in enumerate(batch):
            for order in orders:
                pos[row, list(order)] = np.arange(len(order))
        i, j, s, r = (pos[:, bad[:, c]] for c in range(4))
        ok = ~((i < j) & (s < r)).any(axis=1)
        hit = np.flatnonzero(ok)
        if hit.size:
            return KMinMaxOrdering(k, lv, batch[hit[0]])


@dataclass(frozen=True)
class InducedCycle:
    vertices: tuple[int, ...]  # in traversal order
    net_length: int  # non-negative, direction normalized


def oracle_induced_cycles(h: Digraph, max_len: int, guard: int = SUBSET_GUARD) -> list[InducedCycle]:
    """Vertex subsets (size <= max_len) inducing exactly one oriented cycle.

    A loop counts as a cycle of length one; a digon as one of length two.
    """
    n = h.n
    max_len = min(max_len, n)
    count = sum(math.comb(n, size) for size in range(1, max_len + 1))
    if count > guard:
        raise GuardExceeded(f"{count} subsets exceed the guard {guard}")
    arcs = h.arcs
    found = []
    for size in range(1, max_len + 1):
        for subset in itertools.combinations(range(n), size):
            inside = [(u, v) for u in subset for v in subset if (u, v) in arcs]
            if size == 1:
                if inside:
                    found.append(InducedCycle(subset, 1))
                continue
            if any(u == v for u, v in inside):
                continue
            if size == 2:
                if len(inside) == 2:
                    found.append(InducedCycle(subset, 2))
                continue
            if len(inside) != size:
                continue
            nbrs: dict[int, set[int]] = {v: set() for v in subset}
            for u, v in inside:
                nbrs[u].add(v)
                nbrs[v].add(u)
            if any(len(s) != 2 for s in nbrs.values()):
                continue
            # walk around; a 2-regular simple graph on `size` vertices is one cycle iff connected
            tour = [subset[0]]
            prev = None
            while True:
                cur = tour[-1]
                nxt = min(nbrs[cur] - {prev})
                if nxt == tour[0]:
                    break
                prev = cur
                tour.append(nxt)
            if len(tour) != size:
                continue
            net = 0
            for a, b in zip(tour, tour[1:] + tour[:1]):
                net += 1 if (a, b) in arcs else -1
            found.append(InducedCycle(tuple(tour), abs(net)))
    return found
