"""Minimum cost homomorphisms to templates with a k-Min-Max ordering.

Each instance vertex u gets a chain of nodes u_1 .. u_{t+1} (u_1 is the
source, u_{t+1} the sink) over its pruned candidate list; cutting the
forward arc u_j -> u_{j+1} means u maps to the j-th candidate.  Arc
constraints become infinite arcs between chains, which is exact because
neighbor sets in consecutive ordered classes form monotone intervals.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .classify import Polynomial, TemplateComponent
from .digraph import Digraph, InconsistentLevels, level_assignment, weak_components
from .maxflow import FlowNetwork

MAX_COST = 10**9
BRUTEFORCE_GUARD = 10**7


class StaircaseViolation(RuntimeError):
    pass


class CutStructureError(RuntimeError):
    pass


class GuardExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CostInstance:
    g: Digraph
    costs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(tuple(int(c) for c in row) for row in self.costs))
        if len(self.costs) != self.g.n:
            raise ValueError(f"cost matrix has {len(self.costs)} rows for {self.g.n} instance vertices")
        widths = {len(row) for row in self.costs}
        if len(widths) > 1:
            raise ValueError("cost matrix rows differ in length")
        for row in self.costs:
            for c in row:
                if not 0 <= c <= MAX_COST:
                    raise ValueError(f"cost {c} outside [0, {MAX_COST}]")

    @property
    def n_h(self) -> int | None:
        return len(self.costs[0]) if self.costs else None

    def check_template(self, h: Digraph) -> None:
        if self.n_h is not None and self.n_h != h.n:
            raise ValueError(f"cost rows have {self.n_h} entries but the template has {h.n} vertices")

    @classmethod
    def from_json(cls, data: dict) -> CostInstance:
        n = int(data["n_g"])
        arcs = [tuple(a) for a in data["arcs"]]
        return cls(Digraph.from_arcs(n, arcs), data["costs"])

    def to_json(self) -> dict:
        return {
            "n_g": self.g.n,
            "arcs": [list(a) for a in self.g.sorted_arcs],
            "costs": [list(r) for r in self.costs],
        }


@dataclass(frozen=True)
class Solution:
    status: str  # "optimal" or "infeasible"
    cost: int | None = None
    mapping: tuple[int, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def to_json(self) -> dict:
        if not self.optimal:
            return {"status": "infeasible"}
        return {"status": "optimal", "cost": self.cost, "mapping": list(self.mapping)}


INFEASIBLE = Solution("infeasible")


def is_homomorphism(g: Digraph, h: Digraph, mapping) -> bool:
    return all((mapping[u], mapping[v]) in h.arcs for u, v in g.arcs)


def mapping_cost(inst: CostInstance, mapping) -> int:
    return sum(inst.costs[u][mapping[u]] for u in range(inst.g.n))


# -- pruning ---------------------------------------------------------------


def prune_lists(
    g: Digraph,
    gamma: list[int],
    h: Digraph,
    tc: TemplateComponent,
    offset: int,
    inst_levels: dict[int, int] | None = None,
) -> dict[int, list[int]] | None:
    """Arc-consistent candidate lists (in template order), or None on wipeout.

    Raises InconsistentLevels if gamma has no level assignment mod tc.k.
    """
    k = tc.k
    if inst_levels is None:
        inst_levels = level_assignment(g, gamma, k).levels
    lists: dict[int, list[int]] = {}
    for u in gamma:
        cand = tc.orders[(inst_levels[u] + offset) % k]
        if g.has_loop(u):
            cand = tuple(v for v in cand if h.has_loop(v))
        if not cand:
            return None
        lists[u] = list(cand)

    members = set(gamma)
    arcs = [(u, w) for u, w in g.sorted_arcs if u in members]
    touching: dict[int, list[int]] = {u: [] for u in gamma}
    for idx, (u, w) in enumerate(arcs):
        touching[u].append(idx)
        touching[w].append(idx)

    out_h = [set(o) for o in h.out_neighbors]
    in_h = [set(i) for i in h.in_neighbors]
    queue = deque(range(len(arcs)))
    queued = [True] * len(arcs)
    while queue:
        idx = queue.popleft()
        queued[idx] = False
        u, w = arcs[idx]
        changed = []
        sw = set(lists[w])
        keep_u = [v for v in lists[u] if not out_h[v].isdisjoint(sw)]
        if len(keep_u) != len(lists[u]):
            lists[u] = keep_u
            changed.append(u)
        su = set(lists[u])
        keep_w = [v for v in lists[w] if not in_h[v].isdisjoint(su)]
        if len(keep_w) != len(lists[w]):
            lists[w] = keep_w
            changed.append(w)
        for x in changed:
            if not lists[x]:
                return None
            for other in touching[x]:
                if not queued[other]:
                    queued[other] = True
                    queue.append(other)
    return lists


def staircase(s_u: list[int], s_w: list[int], relation) -> tuple[list[int], list[int]]:
    """Neighbor interval [lo[j], hi[j]] in s_w of each s_u[j]; checks the staircase shape."""
    pos_w = {v: i for i, v in enumerate(s_w)}
    lo, hi = [], []
    for j, x in enumerate(s_u):
        idx = [pos_w[y] for y in s_w if (x, y) in relation]
        if not idx:
            raise StaircaseViolation(f"candidate {x} has no neighbor in the next list")
        a, b = min(idx), max(idx)
        if b - a + 1 != len(idx):
            raise StaircaseViolation(f"neighbors of {x} do not form an interval")
        if lo and (a < lo[-1] or b < hi[-1]):
            raise StaircaseViolation(f"interval endpoints decrease at candidate {x}")
        lo.append(a)
        hi.append(b)
    return lo, hi


# -- min cut ---------------------------------------------------------------


def solve_component(
    g: Digraph,
    gamma: list[int],
    h: Digraph,
    lists: dict[int, list[int]],
    inst: CostInstance,
    backend: str = "auto",
) -> tuple[int, dict[int, int]] | None:
    costs = inst.costs
    inf = 1 + sum(max(costs[u]) for u in gamma)
    source, sink = 0, 1
    base: dict[int, int] = {}
    nxt = 2
    for u in gamma:
        base[u] = nxt
        nxt += len(lists[u]) - 1

    def node(u: int, j: int) -> int:
        # j is 1-based along u's chain of length len(lists[u]) + 1
        if j == 1:
            return source
        if j == len(lists[u]) + 1:
            return sink
        return base[u] + j - 2

    net = FlowNetwork(nxt)
    chain_arcs: dict[int, list[int]] = {}
    for u in gamma:
        t = len(lists[u])
        chain_arcs[u] = []
        for j in range(1, t + 1):
            a, b = node(u, j), node(u, j + 1)
            chain_arcs[u].append(net.add_arc(a, b, costs[u][lists[u][j - 1]]))
            net.add_arc(b, a, inf)

    members = set(gamma)
    for u, w in g.sorted_arcs:
        if u not in members:
            continue
        lo, hi = staircase(lists[u], lists[w], h.arcs)
        tw = len(lists[w])
        tu = len(lists[u])
        # where lo (hi) does not step, the constraint already follows via the
        # infinite backward chain arcs, so only the steps get an arc
        for j in range(tu):
            # f(u) >= j  implies  f(w) >= lo[j]
            a, b = node(u, j + 1), node(w, lo[j] + 1)
            if a != b and (j == 0 or lo[j] > lo[j - 1]):
                net.add_arc(a, b, inf)
            # f(w) > hi[j]  implies  f(u) > j
            if hi[j] + 1 < tw and (j == tu - 1 or hi[j] < hi[j + 1]):
                a, b = node(w, hi[j] + 2), node(u, j + 2)
                if a != b:
                    net.add_arc(a, b, inf)

    value, side = net.min_cut(source, sink, backend)
    if value >= inf:
        return None
    mapping = {}
    for u in gamma:
        t = len(lists[u])
        flags = [side[node(u, j)] for j in range(1, t + 2)]
        c = max(j for j in range(t + 1) if flags[j])
        if flags != [True] * (c + 1) + [False] * (t - c):
            raise CutStructureError(f"cut crosses the chain of vertex {u} more than once")
        mapping[u] = lists[u][c]
    total = sum(costs[u][mapping[u]] for u in gamma)
    if total != value:
        raise CutStructureError(f"recovered mapping costs {total}, cut value is {value}")
    return value, mapping


def solve_polynomial(h: Digraph, classification: Polynomial, inst: CostInstance) -> Solution:
    if not isinstance(classification, Polynomial):
        raise TypeError("solve_polynomial needs a polynomial classification")
    inst.check_template(h)
    g = inst.g
    mapping = [0] * g.n
    total = 0
    for gamma in weak_components(g):
        best = None
        for tc in classification.components:
            try:
                levels = level_assignment(g, gamma, tc.k).levels
            except InconsistentLevels:
                continue
            for offset in range(tc.k):
                lists = prune_lists(g, gamma, h, tc, offset, levels)
                if lists is None:
                    continue
                result = solve_component(g, gamma, h, lists, inst)
                if result is not None and (best is None or result[0] < best[0]):
                    best = result
        if best is None:
            return INFEASIBLE
        total += best[0]
        for u, v in best[1].items():
            mapping[u] = v
    if not is_homomorphism(g, h, mapping) or mapping_cost(inst, mapping) != total:
        raise CutStructureError("assembled mapping failed its post-check")
    return Solution("optimal", total, tuple(mapping))


def solve_bruteforce(h: Digraph, inst: CostInstance, guard: int = BRUTEFORCE_GUARD) -> Solution:
    """Exhaustive minimum over all homomorphisms; ties go to the lexicographically smallest map.

    Maps are enumerated in lexicographic order by backtracking, dropping a
    partial map as soon as an arc between assigned vertices is not preserved.
    """
    inst.check_template(h)
    g = inst.g
    n = g.n
    if h.n ** n > guard:
        raise GuardExceeded(f"{h.n}^{n} maps exceed the guard {guard}")
    # arcs whose later endpoint is u, checked when u is assigned
    back = [[] for _ in range(n)]
    for a, b in g.arcs:
        back[max(a, b)].append((a, b))
    best_cost = None
    best_map = None
    f = [0] * n
    arcs = h.arcs

    def extend(u: int, acc: int):
        nonlocal best_cost, best_map
        if u == n:
            if best_cost is None or acc < best_cost:
                best_cost, best_map = acc, tuple(f)
            return
        for v in range(h.n):
            f[u] = v
            if all((f[a], f[b]) in arcs for a, b in back[u]):
                extend(u + 1, acc + inst.costs[u][v])

    if n == 0:
        return Solution("optimal", 0, ())
    if h.n == 0:
        return INFEASIBLE
    extend(0, 0)
    if best_map is None:
        return INFEASIBLE
    return Solution("optimal", best_cost, best_map)


def enumerate_maps(n_g: int, n_h: int):
    """Every vertex map in lexicographic order (reference for small tests)."""
    return itertools.product(range(n_h), repeat=n_g)
