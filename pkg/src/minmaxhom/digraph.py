"""Digraphs on dense integer vertex ids, plus leveling and net-length tools."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

Arc = tuple[int, int]


class ParseError(ValueError):
    """A `.dg` document could not be parsed.

    ``kind`` is one of ``header``, ``syntax``, ``range``, ``duplicate`` or
    ``count``; ``line`` is 1-based (0 when the problem is at end of input).
    """

    def __init__(self, kind: str, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.kind = kind
        self.line = line


class InconsistentLevels(ValueError):
    def __init__(self, k: int, arc: Arc):
        super().__init__(f"arc {arc[0]}->{arc[1]} breaks the level increment mod {k}")
        self.k = k
        self.arc = arc


class InvalidWalk(ValueError):
    pass


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[Arc]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u},{v}) out of range for n={self.n}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc]) -> Digraph:
        arcs = [tuple(a) for a in arcs]
        s = frozenset(arcs)
        if len(s) != len(arcs):
            raise ValueError("duplicate arcs")
        return cls(n, s)

    @cached_property
    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    @cached_property
    def out_neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_arcs:
            out[u].append(v)
        return out

    @cached_property
    def in_neighbors(self) -> list[list[int]]:
        inn: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_arcs:
            inn[v].append(u)
        for lst in inn:
            lst.sort()
        return inn

    @cached_property
    def neighbors(self) -> list[list[int]]:
        """Underlying undirected adjacency, ascending, without repeats."""
        return [sorted(set(o) | set(i)) for o, i in zip(self.out_neighbors, self.in_neighbors)]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def has_loop(self, u: int) -> bool:
        return (u, u) in self.arcs

    def induced(self, vertices: Sequence[int]) -> Digraph:
        """Induced subdigraph, relabelled so ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        arcs = [(index[u], index[v]) for u, v in self.arcs if u in index and v in index]
        return Digraph(len(vertices), frozenset(arcs))

    def serialize(self) -> str:
        lines = [f"p dg {self.n} {len(self.arcs)}"]
        lines.extend(f"a {u} {v}" for u, v in self.sorted_arcs)
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs})"


def parse_digraph(text: str) -> Digraph:
    header = None
    arcs: list[Arc] = []
    seen: set[Arc] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        tokens = line.split(" ")
        if header is None:
            if len(tokens) != 4 or tokens[:2] != ["p", "dg"]:
                raise ParseError("header", lineno, f"expected 'p dg <n> <m>', got {line!r}")
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise ParseError("header", lineno, f"non-integer header field in {line!r}") from None
            if n < 0 or m < 0:
                raise ParseError("header", lineno, "negative count in header")
            header = (n, m)
            continue
        if len(tokens) != 3 or tokens[0] != "a":
            raise ParseError("syntax", lineno, f"expected 'a <u> <v>', got {line!r}")
        try:
            u, v = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise ParseError("syntax", lineno, f"non-integer vertex in {line!r}") from None
        n, m = header
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError("range", lineno, f"vertex out of range [0,{n}) in {line!r}")
        if (u, v) in seen:
            raise ParseError("duplicate", lineno, f"duplicate arc {u} {v}")
        if len(arcs) == m:
            raise ParseError("count", lineno, f"more than the declared {m} arcs")
        seen.add((u, v))
        arcs.append((u, v))
    if header is None:
        raise ParseError("header", 0, "missing 'p dg' header")
    if len(arcs) != header[1]:
        raise ParseError("count", 0, f"declared {header[1]} arcs, found {len(arcs)}")
    return Digraph(header[0], frozenset(arcs))


def weak_components(d: Digraph) -> list[list[int]]:
    """Weak components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * d.n
    parts = []
    for root in range(d.n):
        if seen[root]:
            continue
        seen[root] = True
        part = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in d.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    part.append(w)
                    queue.append(w)
        parts.append(sorted(part))
    return parts


# -- oriented walks ---------------------------------------------------------


@dataclass(frozen=True)
class OrientedWalk:
    """Vertices x0..xq with one direction flag per step (True = forward)."""

    vertices: tuple[int, ...]
    forward: tuple[bool, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidWalk("a walk needs at least one vertex")
        if len(self.forward) != len(self.vertices) - 1:
            raise InvalidWalk("need exactly one direction per step")

    @classmethod
    def trivial(cls, x: int) -> OrientedWalk:
        return cls((x,), ())

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.forward)

    def prefix_heights(self) -> list[int]:
        h = [0]
        for f in self.forward:
            h.append(h[-1] + (1 if f else -1))
        return h

    @property
    def net_length(self) -> int:
        return sum(1 if f else -1 for f in self.forward)

    @property
    def min_height(self) -> int:
        return min(self.prefix_heights())

    @property
    def max_height(self) -> int:
        return max(self.prefix_heights())

    def reverse(self) -> OrientedWalk:
        return OrientedWalk(self.vertices[::-1], tuple(not f for f in reversed(self.forward)))

    def concat(self, other: OrientedWalk) -> OrientedWalk:
        if self.end != other.start:
            raise InvalidWalk(f"walk ends at {self.end} but the next starts at {other.start}")
        return OrientedWalk(self.vertices + other.vertices[1:], self.forward + other.forward)

    def steps(self):
        for i, f in enumerate(self.forward):
            yield self.vertices[i], self.vertices[i + 1], f

    def validate(self, d: Digraph) -> None:
        for i, (a, b, f) in enumerate(self.steps()):
            arc = (a, b) if f else (b, a)
            if arc not in d.arcs:
                raise InvalidWalk(f"step {i + 1} cites missing arc {arc[0]}->{arc[1]}")


def walk_net_length(w: OrientedWalk, d: Digraph | None = None) -> tuple[int, int, int]:
    """Return ``(net length, min height, max height)``; validates against `d` if given."""
    if d is not None:
        w.validate(d)
    h = w.prefix_heights()
    return h[-1], min(h), max(h)


# -- balance, height, levels ------------------------------------------------


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()
"""Height of an unbalanced digraph; finite heights are plain ints."""


def height_key(h) -> tuple[int, int]:
    """Sort key placing larger heights first and INFINITE before every int."""
    return (0, 0) if h is INFINITE else (1, -h)


@dataclass(frozen=True)
class Balanced:
    labels: dict[int, int]


@dataclass(frozen=True)
class Unbalanced:
    witness: OrientedWalk


def _spanning_tree(d: Digraph, vertices: Sequence[int]):
    """BFS tree from the smallest vertex: potentials and parent links.

    Tree arcs move the potential by +1 when followed forward, -1 backward.
    """
    root = min(vertices)
    pot = {root: 0}
    parent: dict[int, tuple[int, bool]] = {}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in d.out_neighbors[u]:
            if w not in pot:
                pot[w] = pot[u] + 1
                parent[w] = (u, True)
                queue.append(w)
        for w in d.in_neighbors[u]:
            if w not in pot:
                pot[w] = pot[u] - 1
                parent[w] = (u, False)
                queue.append(w)
    return root, pot, parent


def _tree_path_from_root(parent, x: int) -> OrientedWalk:
    verts = [x]
    dirs = []
    while x in parent:
        p, fwd = parent[x]
        verts.append(p)
        dirs.append(fwd)
        x = p
    return OrientedWalk(tuple(reversed(verts)), tuple(reversed(dirs)))


def _component_arcs(d: Digraph, pot: dict[int, int]):
    for u, v in d.sorted_arcs:
        if u in pot:
            yield u, v


def balance_labeling(d: Digraph, vertices: Sequence[int]) -> Balanced | Unbalanced:
    root, pot, parent = _spanning_tree(d, vertices)
    for u, v in _component_arcs(d, pot):
        if pot[v] != pot[u] + 1:
            to_u = _tree_path_from_root(parent, u)
            to_v = _tree_path_from_root(parent, v)
            closed = to_u.concat(OrientedWalk((u, v), (True,))).concat(to_v.reverse())
            return Unbalanced(closed)
    low = min(pot.values())
    return Balanced({x: p - low for x, p in sorted(pot.items())})


def height_of(d: Digraph, vertices: Sequence[int]):
    result = balance_labeling(d, vertices)
    if isinstance(result, Unbalanced):
        return INFINITE
    return max(result.labels.values())


def cycle_gcd(d: Digraph, vertices: Sequence[int]) -> int:
    """Largest k such that the component maps to the directed k-cycle; 0 if balanced."""
    _, pot, _ = _spanning_tree(d, vertices)
    g = 0
    for u, v in _component_arcs(d, pot):
        g = gcd(g, abs(pot[u] + 1 - pot[v]))
    return g


@dataclass(frozen=True)
class LevelAssignment:
    k: int
    levels: dict[int, int]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v in sorted(self.levels):
            out[self.levels[v]].append(v)
        return out


def level_assignment(d: Digraph, vertices: Sequence[int], k: int) -> LevelAssignment:
    if k < 1:
        raise ValueError("modulus must be at least 1")
    _, pot, _ = _spanning_tree(d, vertices)
    levels = {x: p % k for x, p in sorted(pot.items())}
    for u, v in _component_arcs(d, pot):
        if levels[v] != (levels[u] + 1) % k:
            raise InconsistentLevels(k, (u, v))
    return LevelAssignment(k, levels)


def global_level_assignment(d: Digraph, k: int) -> LevelAssignment:
    """Level assignment mod k of the whole digraph, one root per weak component."""
    levels: dict[int, int] = {}
    for comp in weak_components(d):
        levels.update(level_assignment(d, comp, k).levels)
    return LevelAssignment(k, dict(sorted(levels.items())))
