from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minmaxhom.digraph import (
    INFINITE,
    Balanced,
    Digraph,
    InconsistentLevels,
    InvalidWalk,
    OrientedWalk,
    ParseError,
    Unbalanced,
    balance_labeling,
    cycle_gcd,
    height_of,
    level_assignment,
    parse_digraph,
    walk_net_length,
    weak_components,
)

from conftest import dg, digraphs, directed_cycle, path


class TestParse:
    def test_single_arc(self):
        assert parse_digraph("p dg 2 1\na 0 1") == Digraph(2, frozenset({(0, 1)}))

    def test_loop(self):
        d = parse_digraph("p dg 1 1\na 0 0")
        assert d.arcs == {(0, 0)}

    def test_comments_and_trailing_newline(self):
        d = parse_digraph("# hexagon-ish\np dg 3 2\n# arcs\na 0 1\na 1 2\n")
        assert d.sorted_arcs == [(0, 1), (1, 2)]

    @pytest.mark.parametrize(
        "text, kind, line",
        [
            ("p dg 2 2\na 0 1\na 0 1", "duplicate", 3),
            ("p dg 2 1\na 0 2", "range", 2),
            ("p dg 2 2\na 0 1", "count", 0),
            ("p dg 2 1\na 0 1\na 1 0", "count", 3),
            ("q dg 2 1\na 0 1", "header", 1),
            ("p dg x 1\na 0 1", "header", 1),
            ("p dg 2 1\nb 0 1", "syntax", 2),
            ("p dg 2 1\na  0 1", "syntax", 2),
            ("", "header", 0),
        ],
    )
    def test_errors(self, text, kind, line):
        with pytest.raises(ParseError) as exc:
            parse_digraph(text)
        assert exc.value.kind == kind
        assert exc.value.line == line

    @given(digraphs(max_n=6))
    def test_round_trip_canonical(self, d):
        text = d.serialize()
        again = parse_digraph(text)
        assert again == d
        assert again.serialize() == text

    def test_canonical_sorts_arcs(self):
        d = parse_digraph("p dg 3 3\na 2 0\na 0 2\na 0 1\n")
        assert d.serialize() == "p dg 3 3\na 0 1\na 0 2\na 2 0\n"


class TestWeakComponents:
    def test_cycle(self):
        assert weak_components(directed_cycle(3)) == [[0, 1, 2]]

    def test_two_arcs(self):
        assert weak_components(dg(4, (0, 1), (2, 3))) == [[0, 1], [2, 3]]

    def test_empty(self):
        assert weak_components(Digraph(3, frozenset())) == [[0], [1], [2]]

    def test_ordered_by_smallest_member(self):
        assert weak_components(dg(4, (3, 0), (2, 1))) == [[0, 3], [1, 2]]


class TestBalance:
    def test_path(self):
        res = balance_labeling(path(3), [0, 1, 2])
        assert res == Balanced({0: 0, 1: 1, 2: 2})

    def test_c3(self):
        res = balance_labeling(directed_cycle(3), [0, 1, 2])
        assert isinstance(res, Unbalanced)
        assert walk_net_length(res.witness, directed_cycle(3))[0] == 3
        assert res.witness.start == res.witness.end

    def test_loop(self):
        d = dg(1, (0, 0))
        res = balance_labeling(d, [0])
        assert isinstance(res, Unbalanced)
        assert res.witness == OrientedWalk((0, 0), (True,))

    def test_min_label_zero(self):
        d = dg(3, (1, 0), (2, 0))
        assert balance_labeling(d, [0, 1, 2]) == Balanced({0: 1, 1: 0, 2: 0})

    def test_heights(self):
        assert height_of(path(3), [0, 1, 2]) == 2
        assert height_of(directed_cycle(4), [0, 1, 2, 3]) is INFINITE
        assert height_of(Digraph(1, frozenset()), [0]) == 0

    @given(digraphs(max_n=7))
    def test_trichotomy_agrees(self, d):
        for comp in weak_components(d):
            res = balance_labeling(d, comp)
            g = cycle_gcd(d, comp)
            h = height_of(d, comp)
            assert (h is INFINITE) == (g > 0) == isinstance(res, Unbalanced)
            if isinstance(res, Balanced):
                assert min(res.labels.values()) == 0
                for u, v in d.arcs:
                    if u in res.labels:
                        assert res.labels[v] - res.labels[u] == 1
            else:
                net, _, _ = walk_net_length(res.witness, d)
                assert net != 0
                assert res.witness.start == res.witness.end
                assert set(res.witness.vertices) <= set(comp)


def _closed_walk_gcd(d, comp, max_len):
    """Gcd of net lengths of all closed oriented walks up to max_len steps (brute force)."""
    g = 0
    members = set(comp)
    for start in comp:
        frontier = {(start, 0)}
        for _ in range(max_len):
            nxt = set()
            for x, net in frontier:
                for y in d.out_neighbors[x]:
                    nxt.add((y, net + 1))
                for y in d.in_neighbors[x]:
                    nxt.add((y, net - 1))
            frontier = {s for s in nxt if s[0] in members}
            for x, net in frontier:
                if x == start:
                    g = gcd(g, abs(net))
    return g


class TestCycleGcd:
    def test_c6(self):
        assert cycle_gcd(directed_cycle(6), range(6)) == 6

    def test_c2_c3_share_vertex(self):
        d = dg(4, (0, 1), (1, 0), (0, 2), (2, 3), (3, 0))
        assert cycle_gcd(d, range(4)) == 1

    def test_path(self):
        assert cycle_gcd(path(3), range(3)) == 0

    @settings(max_examples=60)
    @given(digraphs(max_n=5))
    def test_matches_closed_walk_enumeration(self, d):
        for comp in weak_components(d):
            assert cycle_gcd(d, comp) == _closed_walk_gcd(d, comp, 2 * d.n + 2)


class TestLevels:
    def test_c6_mod3(self):
        la = level_assignment(directed_cycle(6), range(6), 3)
        assert [la.levels[v] for v in range(6)] == [0, 1, 2, 0, 1, 2]

    def test_k1_all_zero(self):
        la = level_assignment(directed_cycle(5), range(5), 1)
        assert set(la.levels.values()) == {0}

    def test_c3_mod2_inconsistent(self):
        with pytest.raises(InconsistentLevels) as exc:
            level_assignment(directed_cycle(3), range(3), 2)
        assert exc.value.k == 2

    @given(digraphs(max_n=6), st.integers(1, 6))
    def test_success_iff_divides(self, d, k):
        for comp in weak_components(d):
            g = cycle_gcd(d, comp)
            expect = k == 1 or g == 0 or g % k == 0
            try:
                la = level_assignment(d, comp, k)
            except InconsistentLevels:
                assert not expect
                continue
            assert expect
            for u, v in d.arcs:
                if u in la.levels:
                    assert la.levels[v] == (la.levels[u] + 1) % k


class TestWalks:
    def test_ffb(self):
        d = dg(3, (0, 1), (1, 2), (0, 2))
        w = OrientedWalk((0, 1, 2, 0), (True, True, False))
        assert walk_net_length(w, d) == (1, 0, 2)

    def test_trivial(self):
        assert walk_net_length(OrientedWalk.trivial(4)) == (0, 0, 0)

    def test_bf(self):
        d = dg(2, (1, 0))
        w = OrientedWalk((0, 1, 0), (False, True))
        assert walk_net_length(w, d) == (0, -1, 0)

    def test_invalid_step(self):
        with pytest.raises(InvalidWalk):
            walk_net_length(OrientedWalk((0, 1), (False,)), dg(2, (0, 1)))

    @given(st.lists(st.booleans(), max_size=10), st.lists(st.booleans(), max_size=10))
    def test_concat_and_reverse(self, a, b):
        p = OrientedWalk(tuple(range(len(a) + 1)), tuple(a))
        q = OrientedWalk(tuple(range(len(a), len(a) + len(b) + 1)), tuple(b))
        assert p.concat(q).net_length == p.net_length + q.net_length
        assert p.reverse().net_length == -p.net_length
        assert p.reverse().reverse() == p
