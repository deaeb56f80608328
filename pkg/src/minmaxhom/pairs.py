"""The pair digraph H* and its level-restricted subgraph H^(k).

Pair vertices are coded densely as ``x * n + y``, so code order is the
lexicographic order of pairs.  Arcs are stored as sorted numpy arrays.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .digraph import INFINITE, Digraph, LevelAssignment, OrientedWalk, InvalidWalk

Pair = tuple[int, int]


@dataclass(frozen=True)
class ComponentInfo:
    id: int
    members: tuple[Pair, ...]  # sorted
    dual_id: int
    height: object  # int or INFINITE
    self_dual: bool

    @property
    def smallest(self) -> Pair:
        return self.members[0]


class PairGraph:
    """Materialized pair digraph of `base`, optionally restricted to equal levels."""

    def __init__(self, base: Digraph, levels: LevelAssignment | None = None):
        self.base = base
        self.levels = levels
        self.k = 1 if levels is None else levels.k
        n = base.n
        self.n = n

        lv = np.zeros(n, dtype=np.int64)
        if levels is not None:
            if set(levels.levels) != set(range(n)):
                raise ValueError("level assignment must cover every vertex")
            lv[:] = [levels.levels[v] for v in range(n)]

        idx = np.arange(n)
        present = (idx[:, None] != idx[None, :]) & (lv[:, None] == lv[None, :])
        self._present = present.ravel()

        self.arc_src, self.arc_dst = _pair_arcs(base, lv)
        self._build_components()

    # -- construction ------------------------------------------------------

    def _build_components(self):
        n = self.n
        size = n * n
        present_codes = np.flatnonzero(self._present)
        comp = np.full(size, -1, dtype=np.int64)
        ncomp = 0
        if present_codes.size:
            m = len(self.arc_src)
            g = coo_matrix((np.ones(m, dtype=np.int8), (self.arc_src, self.arc_dst)), shape=(size, size))
            _, raw = connected_components(g, directed=True, connection="weak")
            # relabel so ids follow the smallest member code
            relabel: dict[int, int] = {}
            ids = []
            for r in raw[present_codes].tolist():
                if r not in relabel:
                    relabel[r] = len(relabel)
                ids.append(relabel[r])
            comp[present_codes] = ids
            ncomp = len(relabel)
        self.component_of_code = comp

        members: list[list[Pair]] = [[] for _ in range(ncomp)]
        for code, c in zip(present_codes.tolist(), comp[present_codes].tolist()):
            members[c].append(divmod(code, n))

        heights = self._component_heights(ncomp, [m[0][0] * n + m[0][1] for m in members])

        infos = []
        for c in range(ncomp):
            x, y = members[c][0]
            dual = int(comp[y * n + x])
            infos.append(ComponentInfo(c, tuple(members[c]), dual, heights[c], dual == c))
        self.components: list[ComponentInfo] = infos

    def _component_heights(self, ncomp: int, roots: list[int]) -> list:
        """Heights from spanning-tree potentials; one BFS from a virtual super-root."""
        if ncomp == 0:
            return []
        size = self.n * self.n
        comp = self.component_of_code
        src = np.concatenate([self.arc_src, np.full(ncomp, size)])
        dst = np.concatenate([self.arc_dst, np.array(roots, dtype=np.int64)])
        g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size + 1, size + 1)).tocsr()
        order, pred = breadth_first_order(g, size, directed=False, return_predecessors=True)
        order = order[1:]
        parents = pred[order]
        step = np.where(self._is_arc(parents, order), 1, -1)
        step[parents == size] = 0
        potl = [0] * (size + 1)
        for v, p, s in zip(order.tolist(), parents.tolist(), step.tolist()):
            potl[v] = potl[p] + s
        pot = np.array(potl[:size], dtype=np.int64)

        bad = pot[self.arc_dst] - pot[self.arc_src] != 1
        unbalanced = np.zeros(ncomp, dtype=bool)
        unbalanced[comp[self.arc_src[bad]]] = True
        codes = np.flatnonzero(comp >= 0)
        hi = np.full(ncomp, np.iinfo(np.int64).min)
        lo = np.full(ncomp, np.iinfo(np.int64).max)
        np.maximum.at(hi, comp[codes], pot[codes])
        np.minimum.at(lo, comp[codes], pot[codes])
        return [INFINITE if unbalanced[c] else int(hi[c] - lo[c]) for c in range(ncomp)]

    def _is_arc(self, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
        codes = src * (self.n * self.n) + dst
        arc_codes = self._arc_codes
        i = np.searchsorted(arc_codes, codes)
        i = np.minimum(i, max(len(arc_codes) - 1, 0))
        if len(arc_codes) == 0:
            return np.zeros(len(codes), dtype=bool)
        return arc_codes[i] == codes

    @cached_property
    def undirected_csr(self):
        """(indptr, neighbor codes, forward flags), neighbors ascending per vertex."""
        size = self.n * self.n
        src = np.concatenate([self.arc_src, self.arc_dst])
        dst = np.concatenate([self.arc_dst, self.arc_src])
        fwd = np.concatenate([np.ones(len(self.arc_src), bool), np.zeros(len(self.arc_src), bool)])
        order = np.lexsort((~fwd, dst, src))
        src, dst, fwd = src[order], dst[order], fwd[order]
        ptr = np.zeros(size + 1, dtype=np.int64)
        np.add.at(ptr, src + 1, 1)
        np.cumsum(ptr, out=ptr)
        return ptr, dst, fwd

    @cached_property
    def _arc_codes(self) -> np.ndarray:
        return self.arc_src * (self.n * self.n) + self.arc_dst

    # -- queries -----------------------------------------------------------

    def code(self, p: Pair) -> int:
        return p[0] * self.n + p[1]

    def has_pair(self, p: Pair) -> bool:
        x, y = p
        return 0 <= x < self.n and 0 <= y < self.n and bool(self._present[x * self.n + y])

    @property
    def pair_vertices(self) -> list[Pair]:
        return [divmod(c, self.n) for c in np.flatnonzero(self._present).tolist()]

    @property
    def pair_arcs(self) -> list[tuple[Pair, Pair]]:
        n = self.n
        return [
            (divmod(s, n), divmod(t, n))
            for s, t in zip(self.arc_src.tolist(), self.arc_dst.tolist())
        ]

    def has_pair_arc(self, p: Pair, q: Pair) -> bool:
        code = self.code(p) * (self.n * self.n) + self.code(q)
        i = np.searchsorted(self._arc_codes, code)
        return bool(i < len(self._arc_codes) and self._arc_codes[i] == code)

    def component(self, p: Pair) -> int:
        """Component id of pair `p`, or -1 if `p` is not a pair vertex."""
        if not self.has_pair(p):
            return -1
        return int(self.component_of_code[self.code(p)])

    def pair_walk(self, start: Pair, goal: Pair) -> OrientedWalk | None:
        """Shortest oriented walk between two pair vertices, as a walk on pair codes.

        Breadth-first, neighbors in ascending code order with forward steps
        preferred, so the result is reproducible.
        """
        if self.component(start) < 0 or self.component(start) != self.component(goal):
            return None
        ptr, nbr, fwd = self.undirected_csr
        s, t = self.code(start), self.code(goal)
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for e in range(int(ptr[u]), int(ptr[u + 1])):
                w = int(nbr[e])
                if w not in parent:
                    parent[w] = (u, bool(fwd[e]))
                    queue.append(w)
        verts, dirs = [t], []
        x = t
        while parent[x] is not None:
            u, f = parent[x]
            verts.append(u)
            dirs.append(f)
            x = u
        return OrientedWalk(tuple(reversed(verts)), tuple(reversed(dirs)))

    def decode_walk(self, walk: OrientedWalk) -> list[Pair]:
        return [divmod(c, self.n) for c in walk.vertices]

    def validate_pair_walk(self, walk: OrientedWalk) -> None:
        for i, (a, b, f) in enumerate(walk.steps()):
            p, q = divmod(a, self.n), divmod(b, self.n)
            ok = self.has_pair_arc(p, q) if f else self.has_pair_arc(q, p)
            if not ok:
                raise InvalidWalk(f"pair-walk step {i + 1} ({p} -> {q}) is not an arc")


def _pair_arcs(base: Digraph, lv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All arcs (x,y)->(x',y'): xx', yy' arcs, x!=y, x'!=y', equal levels, not both xy', yx'."""
    n = base.n
    arcs = np.array(base.sorted_arcs, dtype=np.int64).reshape(-1, 2)
    if len(arcs) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy()
    adj = np.zeros((n, n), dtype=bool)
    adj[arcs[:, 0], arcs[:, 1]] = True
    ys, yps = arcs[:, 0], arcs[:, 1]
    srcs, dsts = [], []
    for x in range(n):
        for xp in base.out_neighbors[x]:
            ok = (ys != x) & (yps != xp) & (lv[ys] == lv[x])
            ok &= ~(adj[x, yps] & adj[ys, xp])
            if ok.any():
                srcs.append(x * n + ys[ok])
                dsts.append(xp * n + yps[ok])
    if not srcs:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy()
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    order = np.lexsort((dst, src))
    return src[order], dst[order]


def build_pair_graph(h: Digraph, levels: LevelAssignment | None = None) -> PairGraph:
    return PairGraph(h, levels)


@dataclass(frozen=True)
class SymInvertible:
    u: int
    v: int
    pair_walk: OrientedWalk  # over pair codes x * n + y
    component_id: int


def find_sym_invertible(pg: PairGraph) -> SymInvertible | None:
    """Smallest pair (u,v) sharing a component with (v,u), with a connecting pair walk."""
    best = None
    for info in pg.components:
        if info.self_dual and (best is None or info.smallest < best.smallest):
            best = info
    if best is None:
        return None
    u, v = best.smallest
    walk = pg.pair_walk((u, v), (v, u))
    return SymInvertible(u, v, walk, best.id)


def extract_congruent_walks(pg: PairGraph, pair_walk: OrientedWalk) -> tuple[OrientedWalk, OrientedWalk]:
    """Project a pair walk onto its two coordinates."""
    pg.validate_pair_walk(pair_walk)
    pairs = pg.decode_walk(pair_walk)
    p = OrientedWalk(tuple(x for x, _ in pairs), pair_walk.forward)
    q = OrientedWalk(tuple(y for _, y in pairs), pair_walk.forward)
    return p, q


def walks_avoid(h: Digraph, p: OrientedWalk, q: OrientedWalk) -> bool:
    """True iff congruent walks p, q have no step with faithful arcs both ways."""
    if p.forward != q.forward:
        raise InvalidWalk("walks are not congruent")
    xs, ys = p.vertices, q.vertices
    for i, f in enumerate(p.forward):
        if f:
            pq = (xs[i], ys[i + 1]) in h.arcs
            qp = (ys[i], xs[i + 1]) in h.arcs
        else:
            pq = (ys[i + 1], xs[i]) in h.arcs
            qp = (xs[i + 1], ys[i]) in h.arcs
        if pq and qp:
            return False
    return True
