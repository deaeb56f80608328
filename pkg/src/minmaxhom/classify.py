"""Polynomial / NP-complete classification of MinHOM(H)."""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, cycle_gcd, level_assignment, weak_components
from .ordering import (
    CircularChain,
    KMinMaxOrdering,
    admits_ordering,
    check_certificate,
    synthesize_ordering,
    verify_ordering,
)
from .pairs import PairGraph, build_pair_graph


@dataclass(frozen=True)
class TemplateComponent:
    """One weak component of H with its modulus and ordering, in H's vertex ids."""

    vertices: tuple[int, ...]
    k: int
    levels: dict[int, int]
    orders: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "k": self.k,
            "levels": [self.levels[v] for v in self.vertices],
            "orders": [list(o) for o in self.orders],
        }


@dataclass(frozen=True)
class Polynomial:
    components: tuple[TemplateComponent, ...]

    status = "polynomial"

    def to_json(self) -> dict:
        return {"status": self.status, "components": [c.to_json() for c in self.components]}


@dataclass(frozen=True)
class NPComplete:
    certificate: CircularChain  # pairs in H's vertex ids; component id refers to the component's pair graph
    vertices: tuple[int, ...]
    k: int

    status = "np_complete"

    def to_json(self) -> dict:
        return {"status": self.status, "k": self.k, "certificate": self.certificate.to_json(self.k)}


Classification = Polynomial | NPComplete


def component_modulus(h: Digraph, vertices) -> int:
    g = cycle_gcd(h, vertices)
    return 1 if g == 0 else g


def component_pair_graph(h: Digraph, vertices, k: int) -> tuple[Digraph, PairGraph]:
    """Pair graph of the induced component (local ids 0..len-1) under levels mod k."""
    sub = h.induced(vertices)
    levels = level_assignment(sub, range(sub.n), k) if k > 1 else None
    return sub, build_pair_graph(sub, levels)


def classify(h: Digraph) -> Classification:
    done = []
    for comp in weak_components(h):
        k = component_modulus(h, comp)
        sub, pg = component_pair_graph(h, comp, k)
        verdict = admits_ordering(pg)
        if not verdict:
            cert = verdict.certificate
            pairs = tuple((comp[a], comp[b]) for a, b in cert.pairs)
            return NPComplete(CircularChain(pairs, cert.component_id), tuple(comp), k)
        done.append((comp, k, sub, pg))
    out = []
    for comp, k, sub, pg in done:
        ordm = synthesize_ordering(sub, pg)
        levels = {comp[i]: ordm.levels[i] for i in range(sub.n)}
        orders = tuple(tuple(comp[i] for i in order) for order in ordm.orders)
        out.append(TemplateComponent(tuple(comp), k, levels, orders))
    return Polynomial(tuple(out))


def local_ordering(h: Digraph, tc: TemplateComponent) -> tuple[Digraph, KMinMaxOrdering]:
    """The component's induced digraph and its ordering in local ids."""
    index = {v: i for i, v in enumerate(tc.vertices)}
    sub = h.induced(tc.vertices)
    levels = tuple(tc.levels[v] for v in tc.vertices)
    orders = tuple(tuple(index[v] for v in o) for o in tc.orders)
    return sub, KMinMaxOrdering(tc.k, levels, orders)


def check_classification(h: Digraph, c: Classification) -> bool:
    """Independent re-check of a classification's evidence."""
    if isinstance(c, NPComplete):
        index = {v: i for i, v in enumerate(c.vertices)}
        _, pg = component_pair_graph(h, c.vertices, c.k)
        try:
            local = tuple((index[a], index[b]) for a, b in c.certificate.pairs)
        except KeyError:
            return False
        return check_certificate(pg, CircularChain(local, c.certificate.component_id))
    covered = sorted(v for tc in c.components for v in tc.vertices)
    if covered != list(range(h.n)):
        return False
    for tc in c.components:
        sub, ordm = local_ordering(h, tc)
        if verify_ordering(sub, ordm) is not None:
            return False
    return True


def explain(c: Classification) -> str:
    if isinstance(c, NPComplete):
        chain = " ".join(f"({a},{b})" for a, b in c.certificate.pairs)
        return "\n".join(
            [
                "MinHOM(H) is NP-complete",
                f"component vertices: {list(c.vertices)}",
                f"k={c.k}",
                f"circular chain in pair-graph component {c.certificate.component_id}: {chain}",
            ]
        ) + "\n"
    lines = [f"MinHOM(H) is polynomial ({len(c.components)} component{'s' if len(c.components) != 1 else ''})"]
    for idx, tc in enumerate(c.components):
        sizes = ",".join(str(len(o)) for o in tc.orders)
        lines.append(f"component {idx}: k={tc.k} vertices={list(tc.vertices)} class sizes=[{sizes}]")
        for t, order in enumerate(tc.orders):
            lines.append(f"  level {t}: " + " < ".join(map(str, order)))
    return "\n".join(lines) + "\n"
