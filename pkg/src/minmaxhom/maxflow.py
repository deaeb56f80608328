"""Exact integer maximum flow (Dinic) with residual min-cut extraction."""

from __future__ import annotations

from collections import deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

INT32_MAX = 2**31 - 1


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.initial: list[int] = []

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        """Add u->v; returns the arc id (its residual twin is ``id ^ 1``)."""
        if capacity < 0:
            raise ValueError("negative capacity")
        e = len(self.to)
        self.to += (v, u)
        self.cap += (capacity, 0)
        self.initial += (capacity, 0)
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        to, cap, adj = self.to, self.cap, self.adj
        while queue:
            u = queue.popleft()
            nl = level[u] + 1
            for e in adj[u]:
                w = to[e]
                if cap[e] > 0 and level[w] < 0:
                    level[w] = nl
                    queue.append(w)
        return level if level[t] >= 0 else None

    def _capacity_matrix(self) -> csr_matrix:
        """Capacities with parallel arcs summed, int64, self-loops dropped."""
        n = self.n
        to = np.array(self.to, dtype=np.int64)
        caps = np.array(self.initial, dtype=np.int64)[0::2]
        tails, heads = to[1::2], to[0::2]
        keep = tails != heads
        m = csr_matrix((caps[keep], (tails[keep], heads[keep])), shape=(n, n), dtype=np.int64)
        m.sum_duplicates()
        return m

    def min_cut(self, s: int, t: int, backend: str = "auto") -> tuple[int, list[bool]]:
        """Max-flow value and the residual source side.

        The source side reachable in the residual network is the same for
        every maximum flow, so the backend does not affect the returned cut.
        scipy's solver works in int32; "auto" uses it only when no summed
        capacity and no flow value can overflow.
        """
        if backend not in ("auto", "python", "scipy"):
            raise ValueError(f"unknown backend {backend!r}")
        if backend != "python":
            cap = self._capacity_matrix()
            fits = (cap.nnz == 0 or cap.data.max() <= INT32_MAX) and cap[s].sum() <= INT32_MAX
            if fits:
                return self._scipy_min_cut(cap, s, t)
            if backend == "scipy":
                raise OverflowError("capacities do not fit scipy's int32 max-flow")
        value = self.max_flow(s, t)
        return value, self.source_side(s)

    def _scipy_min_cut(self, cap: csr_matrix, s: int, t: int) -> tuple[int, list[bool]]:
        n = self.n
        result = maximum_flow(cap.astype(np.int32), s, t, method="dinic")
        residual = (cap - result.flow.tocsr().astype(np.int64)).tocoo()
        pos = residual.data > 0
        r = csr_matrix((np.ones(int(pos.sum()), dtype=np.int8), (residual.row[pos], residual.col[pos])), shape=(n, n))
        side = [False] * n
        for v in breadth_first_order(r, s, directed=True, return_predecessors=False).tolist():
            side[v] = True
        return int(result.flow_value), side

    def max_flow(self, s: int, t: int) -> int:
        if s == t:
            raise ValueError("source equals sink")
        to, cap, adj = self.to, self.cap, self.adj
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            ptr = [0] * self.n
            while True:
                # iterative DFS along the level graph
                path: list[int] = []
                u = s
                while u != t:
                    edges = adj[u]
                    i = ptr[u]
                    while i < len(edges):
                        e = edges[i]
                        w = to[e]
                        if cap[e] > 0 and level[w] == level[u] + 1:
                            break
                        i += 1
                    ptr[u] = i
                    if i == len(edges):
                        if u == s:
                            break
                        level[u] = -1
                        e = path.pop()
                        u = to[e ^ 1]
                        ptr[u] += 1
                        continue
                    path.append(edges[i])
                    u = to[edges[i]]
                if u != t:
                    break
                push = min(cap[e] for e in path)
                for e in path:
                    cap[e] -= push
                    cap[e ^ 1] += push
                total += push

    def source_side(self, s: int) -> list[bool]:
        """Vertices reachable from s in the residual network."""
        seen = [False] * self.n
        seen[s] = True
        queue = deque([s])
        to, cap, adj = self.to, self.cap, self.adj
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                w = to[e]
                if cap[e] > 0 and not seen[w]:
                    seen[w] = True
                    queue.append(w)
        return seen

    def flow_on(self, e: int) -> int:
        return self.initial[e] - self.cap[e]
