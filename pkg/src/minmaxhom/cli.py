"""Command-line interface.

Exit codes: 0 positive verdict, 1 negative verdict or infeasible, 2 input
error, 3 oracle guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd

from . import oracles
from .classify import Polynomial, classify, explain
from .digraph import (
    Digraph,
    InconsistentLevels,
    ParseError,
    cycle_gcd,
    global_level_assignment,
    parse_digraph,
    weak_components,
)
from .gen import GeneratorSpec, gen_proper_interval, gen_random
from .ordering import (
    KMinMaxOrdering,
    OrderingStructureError,
    admits_ordering,
    synthesize_ordering,
    verify_ordering,
)
from .pairs import build_pair_graph
from .solver import CostInstance, GuardExceeded as SolverGuardExceeded, solve_bruteforce, solve_polynomial

OK, NEGATIVE, INPUT_ERROR, GUARD_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(INPUT_ERROR)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_digraph(path: str) -> Digraph:
    try:
        return parse_digraph(_read_text(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def _modulus_arg(value: str):
    if value == "auto":
        return value
    try:
        k = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'auto' or a positive integer") from None
    if k < 1:
        raise argparse.ArgumentTypeError("modulus must be at least 1")
    return k


def auto_modulus(h: Digraph) -> int:
    """Largest k with a homomorphism of all of H to the directed k-cycle (1 if balanced)."""
    g = 0
    for comp in weak_components(h):
        g = gcd(g, cycle_gcd(h, comp))
    return g or 1


def _levels_for(h: Digraph, k):
    if k == "auto":
        k = auto_modulus(h)
    try:
        levels = global_level_assignment(h, k)
    except InconsistentLevels as exc:
        raise InputError(str(exc)) from None
    return k, levels


# -- subcommands -------------------------------------------------------------


def cmd_classify(args) -> int:
    h = _read_digraph(args.h)
    c = classify(h)
    if args.human:
        sys.stdout.write(explain(c))
    else:
        _emit(c.to_json())
    return OK if isinstance(c, Polynomial) else NEGATIVE


def cmd_order(args) -> int:
    h = _read_digraph(args.h)
    k, levels = _levels_for(h, args.k)
    pg = build_pair_graph(h, levels if k > 1 else None)
    verdict = admits_ordering(pg)
    if not verdict:
        _emit(verdict.certificate.to_json(k))
        return NEGATIVE
    _emit(synthesize_ordering(h, pg).to_json())
    return OK


def cmd_verify(args) -> int:
    h = _read_digraph(args.h)
    data = _read_json(args.ordering)
    if not isinstance(data, dict):
        raise InputError("ordering document must be a JSON object")
    try:
        violation = verify_ordering(h, KMinMaxOrdering.from_json(data))
    except OrderingStructureError as exc:
        raise InputError(str(exc)) from None
    if violation is None:
        _emit({"status": "ok"})
        return OK
    v = violation
    _emit({"status": "violation", "i": v.i, "j": v.j, "s": v.s, "r": v.r, "missing": list(v.missing)})
    return NEGATIVE


def _read_instance(path: str, h: Digraph) -> CostInstance:
    data = _read_json(path)
    try:
        inst = CostInstance.from_json(data)
        inst.check_template(h)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad instance: {exc}") from None
    return inst


def cmd_solve(args) -> int:
    h = _read_digraph(args.h)
    inst = _read_instance(args.instance, h)
    c = classify(h)
    if not isinstance(c, Polynomial):
        raise InputError("template is NP-complete; use 'oracle solve' for small instances")
    sol = solve_polynomial(h, c, inst)
    _emit(sol.to_json())
    return OK if sol.optimal else NEGATIVE


def cmd_oracle(args) -> int:
    h = _read_digraph(args.h)
    try:
        if args.what == "ordering":
            k, levels = _levels_for(h, args.k)
            found = oracles.oracle_ordering(h, k, levels, guard=args.guard)
            if found is None:
                _emit({"status": "none", "k": k})
                return NEGATIVE
            _emit(found.to_json())
            return OK
        if args.what == "cycles":
            cycles = oracles.oracle_induced_cycles(h, args.max_len, guard=args.guard)
            _emit([{"vertices": list(c.vertices), "net_length": c.net_length} for c in cycles])
            return OK
        inst = _read_instance(args.instance, h)
        sol = solve_bruteforce(h, inst, guard=args.guard)
        _emit(sol.to_json())
        return OK if sol.optimal else NEGATIVE
    except (oracles.GuardExceeded, SolverGuardExceeded) as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return GUARD_ERROR


def cmd_gen(args) -> int:
    try:
        if args.proper_interval:
            d = gen_proper_interval(args.n, args.seed)
        else:
            if args.p is None:
                raise InputError("--p is required unless --proper-interval is given")
            d = gen_random(GeneratorSpec(args.n, args.p, args.seed, args.loops))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(d.serialize())
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minmaxhom", description="Min-Max orderings and MinHOM dichotomy for digraphs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify MinHOM(H) as polynomial or NP-complete")
    p.add_argument("h", help="template .dg file ('-' for stdin)")
    p.add_argument("--human", action="store_true", help="readable report instead of JSON")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("order", help="build a k-Min-Max ordering or a circular-chain certificate")
    p.add_argument("h")
    p.add_argument("--k", type=_modulus_arg, default="auto")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("verify", help="check an ordering JSON against a template")
    p.add_argument("h")
    p.add_argument("ordering")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="solve a MinHOM instance for a polynomial template")
    p.add_argument("h")
    p.add_argument("instance")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    o = osub.add_parser("ordering")
    o.add_argument("h")
    o.add_argument("--k", type=_modulus_arg, default="auto")
    o.add_argument("--guard", type=int, default=oracles.ORDERING_GUARD)
    o.set_defaults(func=cmd_oracle)
    o = osub.add_parser("cycles")
    o.add_argument("h")
    o.add_argument("--max-len", type=int, required=True)
    o.add_argument("--guard", type=int, default=oracles.SUBSET_GUARD)
    o.set_defaults(func=cmd_oracle)
    o = osub.add_parser("solve")
    o.add_argument("h")
    o.add_argument("instance")
    o.add_argument("--guard", type=int, default=10**7)
    o.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a generated digraph as canonical .dg")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--loops", action="store_true")
    p.add_argument("--proper-interval", action="store_true")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
