"""Deciding, building and checking (k-)Min-Max orderings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .digraph import Digraph, LevelAssignment, height_key
from .pairs import PairGraph, Pair, find_sym_invertible


class InternalInvariantViolation(RuntimeError):
    def __init__(self, message: str, chains: Sequence[Sequence[Pair]] = ()):
        super().__init__(message)
        self.chains = [list(c) for c in chains]


class OrderingStructureError(ValueError):
    pass


@dataclass(frozen=True)
class CircularChain:
    pairs: tuple[Pair, ...]
    component_id: int

    def to_json(self, k: int) -> dict:
        return {
            "kind": "circular_chain",
            "k": k,
            "pairs": [list(p) for p in self.pairs],
            "component_id": self.component_id,
        }


@dataclass(frozen=True)
class Verdict:
    """Outcome of the existence test; falsy when a certificate was found."""

    certificate: CircularChain | None = None

    def __bool__(self) -> bool:
        return self.certificate is None


@dataclass(frozen=True)
class KMinMaxOrdering:
    k: int
    levels: tuple[int, ...]
    orders: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"k": self.k, "levels": list(self.levels), "orders": [list(o) for o in self.orders]}

    @classmethod
    def from_json(cls, data: dict) -> KMinMaxOrdering:
        try:
            k = int(data["k"])
            levels = tuple(int(x) for x in data["levels"])
            orders = tuple(tuple(int(x) for x in o) for o in data["orders"])
        except (KeyError, TypeError, ValueError) as exc:
            raise OrderingStructureError(f"malformed ordering document: {exc}") from None
        return cls(k, levels, orders)

    def position(self) -> dict[int, int]:
        return {v: i for order in self.orders for i, v in enumerate(order)}


def circular_chain_in(pairs: Iterable[Pair]) -> list[Pair] | None:
    """Directed cycle of the relation `pairs`, or None if it is acyclic.

    Depth-first from vertices in ascending order, successors ascending; the
    cycle reported is the first back edge met.
    """
    succ: dict[int, list[int]] = {}
    for a, b in pairs:
        succ.setdefault(a, []).append(b)
        succ.setdefault(b, [])
    for lst in succ.values():
        lst.sort()
    WHITE, GRAY, BLACK = 0, 1, 2
    color = dict.fromkeys(succ, WHITE)
    for root in sorted(succ):
        if color[root] != WHITE:
            continue
        color[root] = GRAY
        path = [root]
        stack = [iter(succ[root])]
        while stack:
            for w in stack[-1]:
                if color[w] == GRAY:
                    cyc = path[path.index(w):]
                    return [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
                if color[w] == WHITE:
                    color[w] = GRAY
                    path.append(w)
                    stack.append(iter(succ[w]))
                    break
            else:
                stack.pop()
                color[path.pop()] = BLACK
    return None


def admits_ordering(pg: PairGraph) -> Verdict:
    sym = find_sym_invertible(pg)
    if sym is not None:
        return Verdict(CircularChain(((sym.u, sym.v), (sym.v, sym.u)), sym.component_id))
    for info in pg.components:
        chain = circular_chain_in(info.members)
        if chain is not None:
            return Verdict(CircularChain(tuple(chain), info.id))
    return Verdict()


def check_certificate(pg: PairGraph, chain: CircularChain | Sequence[Pair]) -> bool:
    pairs = list(chain.pairs if isinstance(chain, CircularChain) else chain)
    if len(pairs) < 2:
        return False
    for i, (a, b) in enumerate(pairs):
        if b != pairs[(i + 1) % len(pairs)][0]:
            return False
    comps = {pg.component(p) for p in pairs}
    if len(comps) != 1 or -1 in comps:
        return False
    if isinstance(chain, CircularChain) and chain.component_id not in comps:
        return False
    return True


# -- synthesis -------------------------------------------------------------


@dataclass(frozen=True)
class Selection:
    chosen: tuple[int, ...]
    processed_heights: tuple  # height of each component processed, in order


class _Closure:
    """Transitive closure of an acyclic relation as per-vertex bitsets."""

    def __init__(self, n: int):
        self.desc = [0] * n

    def add(self, a: int, b: int) -> bool:
        """Insert a<b; False (and nothing changed for this arc) if it closes a cycle."""
        desc = self.desc
        if a == b or (desc[b] >> a) & 1:
            return False
        if (desc[a] >> b) & 1:
            return True
        new = desc[b] | (1 << b)
        abit = 1 << a
        for x in range(len(desc)):
            if x == a or desc[x] & abit:
                desc[x] |= new
        return True


def greedy_selection(pg: PairGraph) -> Selection:
    """Choose components by decreasing height, falling back to the dual."""
    return _greedy(pg)[0]


def _greedy(pg: PairGraph) -> tuple[Selection, _Closure]:
    n = pg.n
    comps = pg.components
    order = sorted(comps, key=lambda c: (height_key(c.height), c.smallest))
    closure = _Closure(n)
    settled = [False] * len(comps)
    chosen = []
    heights = []
    relation: list[Pair] = []
    for info in order:
        if settled[info.id]:
            continue
        heights.append(info.height)
        if info.self_dual:
            raise InternalInvariantViolation(f"component {info.id} is self-dual")
        picked = None
        failures = []
        for cand in (info, comps[info.dual_id]):
            saved = list(closure.desc)
            if all(closure.add(a, b) for a, b in cand.members):
                picked = cand
                break
            closure.desc = saved
            failures.append(circular_chain_in(relation + list(cand.members)))
        if picked is None:
            raise InternalInvariantViolation(
                f"both component {info.id} and its dual {info.dual_id} close a circular chain",
                failures,
            )
        relation.extend(picked.members)
        chosen.append(picked.id)
        settled[info.id] = settled[info.dual_id] = True
    _check_total(pg, closure)
    return Selection(tuple(chosen), tuple(heights)), closure


def _level_classes(pg: PairGraph) -> list[list[int]]:
    if pg.levels is None:
        return [list(range(pg.n))]
    return pg.levels.classes()


def _check_total(pg: PairGraph, closure: _Closure) -> None:
    for cls in _level_classes(pg):
        mask = sum(1 << v for v in cls)
        counts = sorted(bin(closure.desc[v] & mask).count("1") for v in cls)
        if counts != list(range(len(cls))):
            raise InternalInvariantViolation("chosen relation is not a total order on a level class")


def synthesize_ordering(h: Digraph, pg: PairGraph) -> KMinMaxOrdering:
    if pg.base is not h and pg.base != h:
        raise ValueError("pair graph was built for a different digraph")
    _, closure = _greedy(pg)
    orders = []
    for cls in _level_classes(pg):
        mask = sum(1 << v for v in cls)
        orders.append(tuple(sorted(cls, key=lambda v: -bin(closure.desc[v] & mask).count("1"))))
    levels = tuple(pg.levels.levels[v] for v in range(h.n)) if pg.levels else (0,) * h.n
    return KMinMaxOrdering(pg.k, levels, tuple(orders))


# -- verification ----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    s: int
    r: int
    missing: tuple[int, int]


def _check_structure(h: Digraph, ordm: KMinMaxOrdering) -> None:
    k = ordm.k
    if k < 1:
        raise OrderingStructureError("modulus must be at least 1")
    if len(ordm.levels) != h.n:
        raise OrderingStructureError(f"expected {h.n} levels, got {len(ordm.levels)}")
    if len(ordm.orders) != k:
        raise OrderingStructureError(f"expected {k} level lists, got {len(ordm.orders)}")
    seen = set()
    for t, order in enumerate(ordm.orders):
        for v in order:
            if not 0 <= v < h.n:
                raise OrderingStructureError(f"vertex {v} out of range")
            if v in seen:
                raise OrderingStructureError(f"vertex {v} listed twice")
            if ordm.levels[v] != t:
                raise OrderingStructureError(f"vertex {v} has level {ordm.levels[v]} but is listed in class {t}")
            seen.add(v)
    if len(seen) != h.n:
        missing = sorted(set(range(h.n)) - seen)
        raise OrderingStructureError(f"vertices missing from the ordering: {missing}")
    for u, v in h.sorted_arcs:
        if ordm.levels[v] != (ordm.levels[u] + 1) % k:
            raise OrderingStructureError(f"arc {u}->{v} breaks the level increment mod {k}")


def verify_ordering(h: Digraph, ordm: KMinMaxOrdering) -> Violation | None:
    """First Min-Max violation in scan order, or None.

    Scans residue t, then i<j in class t, then s<r in class t+1 (all by
    position), and requires is and jr whenever ir and js are arcs.
    """
    _check_structure(h, ordm)
    arcs = h.arcs
    k = ordm.k
    for t in range(k):
        lower = ordm.orders[t]
        upper = ordm.orders[(t + 1) % k]
        for a, i in enumerate(lower):
            for j in lower[a + 1:]:
                for b, s in enumerate(upper):
                    if (j, s) not in arcs:
                        continue
                    for r in upper[b + 1:]:
                        if (i, r) not in arcs:
                            continue
                        if (i, s) not in arcs:
                            return Violation(i, j, s, r, (i, s))
                        if (j, r) not in arcs:
                            return Violation(i, j, s, r, (j, r))
    return None


def levels_as_assignment(ordm: KMinMaxOrdering) -> LevelAssignment:
    return LevelAssignment(ordm.k, dict(enumerate(ordm.levels)))
