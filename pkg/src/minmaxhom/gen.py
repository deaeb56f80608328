"""Bit-exact splitmix64 generators for test corpora."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .digraph import Digraph

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def unit(self) -> float:
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next() >> 11) * 2.0**-53

    def below(self, bound: int) -> int:
        return self.next() % bound


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    p: float
    seed: int
    loops: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def gen_random(spec: GeneratorSpec) -> Digraph:
    rng = SplitMix64(spec.seed)
    arcs = []
    for u in range(spec.n):
        for v in range(spec.n):
            if u == v and not spec.loops:
                continue
            if rng.unit() < spec.p:
                arcs.append((u, v))
    return Digraph(spec.n, frozenset(arcs))


def gen_proper_interval(n: int, seed: int) -> Digraph:
    """Reflexive symmetric intersection digraph of n random unit intervals.

    Left endpoints are uniform on [0, n/2), which gives a mix of connected
    stretches and gaps.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = SplitMix64(seed)
    spread = n / 2
    left = [rng.unit() * spread for _ in range(n)]
    arcs = [(u, v) for u in range(n) for v in range(n) if abs(left[u] - left[v]) <= 1.0]
    return Digraph(n, frozenset(arcs))


def random_costs(n_g: int, n_h: int, seed: int, top: int = 9) -> list[list[int]]:
    """Cost matrix with entries uniform on 0..top, row-major from one stream."""
    rng = SplitMix64(seed)
    return [[rng.below(top + 1) for _ in range(n_h)] for _ in range(n_g)]


def manifest_entry(spec: GeneratorSpec, text: str) -> dict:
    return {
        "seed": spec.seed,
        "n": spec.n,
        "p": spec.p,
        "loops": spec.loops,
        "sha256": hashlib.sha256(text.encode()).hexdigest(),
    }


def write_corpus(directory: Path, specs: list[GeneratorSpec]) -> list[dict]:
    """Write canonical `.dg` files plus ``manifest.json`` into `directory`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for spec in specs:
        text = gen_random(spec).serialize()
        name = f"n{spec.n}_p{spec.p}_s{spec.seed}{'_loops' if spec.loops else ''}.dg"
        (directory / name).write_text(text)
        entries.append({"file": name, **manifest_entry(spec, text)})
    (directory / "manifest.json").write_text(json.dumps(entries, indent=2) + "\n")
    return entries
