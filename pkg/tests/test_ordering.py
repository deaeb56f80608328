import itertools

import pytest
from hypothesis import given, settings

from minmaxhom.digraph import INFINITE, cycle_gcd, height_key, level_assignment, weak_components
from minmaxhom.gen import gen_proper_interval
from minmaxhom.oracles import oracle_ordering
from minmaxhom.ordering import (
    CircularChain,
    KMinMaxOrdering,
    OrderingStructureError,
    Violation,
    admits_ordering,
    check_certificate,
    circular_chain_in,
    greedy_selection,
    synthesize_ordering,
    verify_ordering,
)
from minmaxhom.pairs import build_pair_graph

from conftest import C3_WITH_DIGON, REFLEXIVE_K2, TRANSITIVE_TOURNAMENT, dg, digraphs, directed_cycle, leveled_digraphs, path


def flat(h, order):
    return KMinMaxOrdering(1, (0,) * h.n, (tuple(order),))


def literal_ok(h, order):
    """Min-Max condition straight from the definition, for one linear order."""
    pos = {v: i for i, v in enumerate(order)}
    for (i, r), (j, s) in itertools.product(h.arcs, repeat=2):
        if pos[i] < pos[j] and pos[s] < pos[r]:
            if (i, s) not in h.arcs or (j, r) not in h.arcs:
                return False
    return True


class TestCircularChain:
    def test_acyclic(self):
        assert circular_chain_in([(0, 1), (1, 2), (0, 2)]) is None

    def test_triangle(self):
        assert circular_chain_in([(2, 0), (0, 1), (1, 2)]) == [(0, 1), (1, 2), (2, 0)]

    def test_two_cycle(self):
        assert circular_chain_in([(1, 0), (0, 1)]) == [(0, 1), (1, 0)]

    def test_empty(self):
        assert circular_chain_in([]) is None


class TestAdmits:
    def test_c3(self):
        pg = build_pair_graph(directed_cycle(3))
        v = admits_ordering(pg)
        assert not v
        assert v.certificate.pairs == ((0, 1), (1, 2), (2, 0))
        assert check_certificate(pg, v.certificate)

    def test_hexagon_mod6(self, c6):
        pg = build_pair_graph(c6, level_assignment(c6, range(6), 6))
        assert admits_ordering(pg)

    def test_hexagon_mod3_is_chain(self, c6):
        pg = build_pair_graph(c6, level_assignment(c6, range(6), 3))
        v = admits_ordering(pg)
        assert v.certificate.pairs == ((0, 3), (3, 0))
        assert check_certificate(pg, v.certificate)

    def test_transitive_tournament(self):
        assert admits_ordering(build_pair_graph(TRANSITIVE_TOURNAMENT))

    def test_c3_with_digon(self):
        assert not admits_ordering(build_pair_graph(C3_WITH_DIGON))

    def test_certificate_json(self):
        v = admits_ordering(build_pair_graph(directed_cycle(3)))
        doc = v.certificate.to_json(1)
        assert doc == {"kind": "circular_chain", "k": 1, "pairs": [[0, 1], [1, 2], [2, 0]], "component_id": doc["component_id"]}


class TestCheckCertificate:
    def test_rejects_open_chain(self):
        pg = build_pair_graph(directed_cycle(3))
        assert not check_certificate(pg, [(0, 1), (1, 2)])

    def test_rejects_single(self):
        assert not check_certificate(build_pair_graph(directed_cycle(3)), [(0, 1)])

    def test_rejects_mixed_components(self):
        # (0,1) and (1,0) lie in dual components of the 3-cycle
        pg = build_pair_graph(directed_cycle(3))
        assert not check_certificate(pg, [(0, 1), (1, 0)])

    def test_rejects_wrong_component_id(self):
        pg = build_pair_graph(directed_cycle(3))
        cid = pg.component((0, 1))
        assert not check_certificate(pg, CircularChain(((0, 1), (1, 2), (2, 0)), pg.components[cid].dual_id))


class TestSynthesize:
    def test_transitive_tournament_valid(self):
        h = TRANSITIVE_TOURNAMENT
        ordm = synthesize_ordering(h, build_pair_graph(h))
        valid = [p for p in itertools.permutations(range(3)) if literal_ok(h, p)]
        assert ordm.orders[0] in valid
        assert verify_ordering(h, ordm) is None

    def test_hexagon(self, c6):
        pg = build_pair_graph(c6, level_assignment(c6, range(6), 6))
        ordm = synthesize_ordering(c6, pg)
        assert ordm.k == 6
        assert ordm.levels == (0, 1, 2, 3, 4, 5)
        assert verify_ordering(c6, ordm) is None

    def test_path(self):
        h = path(4)
        ordm = synthesize_ordering(h, build_pair_graph(h))
        assert sorted(ordm.orders[0]) == [0, 1, 2, 3]
        assert verify_ordering(h, ordm) is None

    def test_unbalanced_component_first(self):
        h = dg(3, (0, 0), (1, 1), (0, 1), (1, 2))
        pg = build_pair_graph(h)
        sel = greedy_selection(pg)
        assert sel.processed_heights[0] is INFINITE
        assert verify_ordering(h, synthesize_ordering(h, pg)) is None

    def test_wrong_digraph(self):
        with pytest.raises(ValueError):
            synthesize_ordering(path(3), build_pair_graph(directed_cycle(3)))

    def test_selection_heights_decrease(self):
        h = dg(4, (0, 1), (1, 2), (2, 3), (0, 0))
        pg = build_pair_graph(h)
        sel = greedy_selection(pg)
        keys = [height_key(x) for x in sel.processed_heights]
        assert keys == sorted(keys)
        assert sel.processed_heights[0] == 2
        assert max(c.height for c in pg.components if c.height is not INFINITE) == 2


class TestVerify:
    def test_violation(self):
        h = dg(4, (0, 3), (1, 2))
        assert verify_ordering(h, flat(h, [0, 1, 2, 3])) == Violation(0, 1, 2, 3, (0, 2))

    def test_reflexive_k2(self):
        assert verify_ordering(REFLEXIVE_K2, flat(REFLEXIVE_K2, [0, 1])) is None

    def test_second_missing_arc(self):
        h = dg(4, (0, 3), (1, 2), (0, 2))
        assert verify_ordering(h, flat(h, [0, 1, 2, 3])) == Violation(0, 1, 2, 3, (1, 3))

    @pytest.mark.parametrize(
        "ordm",
        [
            KMinMaxOrdering(1, (0, 0), ((0,),)),
            KMinMaxOrdering(1, (0, 0), ((0, 0, 1),)),
            KMinMaxOrdering(1, (0, 0, 0), ((0, 1, 2),)),
            KMinMaxOrdering(2, (0, 0), ((0, 1), ())),
            KMinMaxOrdering(2, (0, 1), ((1,), (0,))),
            KMinMaxOrdering(0, (0, 0), ()),
        ],
    )
    def test_structure_errors(self, ordm):
        with pytest.raises(OrderingStructureError):
            verify_ordering(dg(2, (0, 1)), ordm)

    def test_from_json_malformed(self):
        with pytest.raises(OrderingStructureError):
            KMinMaxOrdering.from_json({"k": 1, "levels": [0]})

    def test_json_round_trip(self, c6):
        ordm = synthesize_ordering(c6, build_pair_graph(c6, level_assignment(c6, range(6), 6)))
        assert KMinMaxOrdering.from_json(ordm.to_json()) == ordm

    @settings(max_examples=80)
    @given(digraphs(max_n=5))
    def test_matches_literal_condition(self, h):
        for order in itertools.islice(itertools.permutations(range(h.n)), 24):
            assert (verify_ordering(h, flat(h, order)) is None) == literal_ok(h, order)


@settings(max_examples=200)
@given(digraphs(max_n=5))
def test_soundness_and_completeness(h):
    pg = build_pair_graph(h)
    verdict = admits_ordering(pg)
    expected = oracle_ordering(h) is not None
    assert bool(verdict) == expected
    if verdict:
        assert verify_ordering(h, synthesize_ordering(h, pg)) is None
    else:
        assert check_certificate(pg, verdict.certificate)


@settings(max_examples=150)
@given(leveled_digraphs(max_n=6, max_k=4))
def test_k_orderings_agree_with_oracle(h):
    comps = weak_components(h)
    if len(comps) != 1:
        return
    g = cycle_gcd(h, comps[0]) or 1
    levels = level_assignment(h, range(h.n), g) if g > 1 else None
    pg = build_pair_graph(h, levels)
    verdict = admits_ordering(pg)
    assert bool(verdict) == (oracle_ordering(h, g, levels) is not None)
    if verdict:
        ordm = synthesize_ordering(h, pg)
        assert ordm.k == g
        assert verify_ordering(h, ordm) is None
        # each class is listed exactly once, i.e. the chosen relation is total per class
        assert sorted(v for o in ordm.orders for v in o) == list(range(h.n))


@settings(max_examples=100)
@given(digraphs(max_n=6))
def test_greedy_heights_monotone(h):
    pg = build_pair_graph(h)
    if not admits_ordering(pg):
        return
    sel = greedy_selection(pg)
    keys = [height_key(x) for x in sel.processed_heights]
    assert keys == sorted(keys)
    assert len(sel.chosen) == len(pg.components) // 2
    for cid in sel.chosen:
        assert pg.components[cid].dual_id not in sel.chosen


@pytest.mark.parametrize("seed", range(20))
def test_proper_interval_admits(seed):
    h = gen_proper_interval(3 + seed % 8, seed)
    pg = build_pair_graph(h)
    assert admits_ordering(pg)
    assert verify_ordering(h, synthesize_ordering(h, pg)) is None
