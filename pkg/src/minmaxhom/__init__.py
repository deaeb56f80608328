"""Min-Max orderings of digraphs and the MinHOM dichotomy."""

from .classify import NPComplete, Polynomial, classify, explain
from .digraph import Digraph, parse_digraph, weak_components
from .ordering import admits_ordering, synthesize_ordering, verify_ordering
from .pairs import build_pair_graph, find_sym_invertible
from .solver import CostInstance, Solution, solve_bruteforce, solve_polynomial

__all__ = [
    "CostInstance",
    "Digraph",
    "NPComplete",
    "Polynomial",
    "Solution",
    "admits_ordering",
    "build_pair_graph",
    "classify",
    "explain",
    "find_sym_invertible",
    "parse_digraph",
    "solve_bruteforce",
    "solve_polynomial",
    "synthesize_ordering",
    "verify_ordering",
    "weak_components",
]
