"""Tests for triangle-free Ramsey witnesses, search, and the value table."""

import json
import random
import time
from itertools import combinations

import pytest

from orw.ramsey import (
    RamseyError,
    RamseyRecord,
    TableEntry,
    WitnessGraph,
    brute_force_ramsey,
    builtin_record,
    canonical_form,
    circulant,
    load_ramsey_table,
    ramsey_value,
    relabel_red_prefix,
    search_witnesses,
    verify_witness,
    witness_from_json,
    witness_to_json,
)


class TestWitnessGraph:
    def test_from_pairs_normalizes(self):
        g = WitnessGraph.from_pairs(4, [(3, 1), (1, 3), (0, 2)])
        assert g.edges == frozenset({(1, 3), (0, 2)})
        assert g.has_edge(3, 1) and g.has_edge(1, 3)
        assert not g.has_edge(0, 1)

    def test_rejects_loops_and_range(self):
        with pytest.raises(RamseyError):
            WitnessGraph.from_pairs(3, [(1, 1)])
        with pytest.raises(RamseyError):
            WitnessGraph.from_pairs(3, [(0, 3)])

    def test_degree_multiset(self):
        g = circulant(5, (1,))
        assert g.degree_multiset() == (2, 2, 2, 2, 2)

    def test_relabel_preserves_structure(self):
        g = circulant(8, (1, 4))
        perm = [3, 1, 4, 0, 6, 2, 7, 5]
        h = g.relabel(perm)
        assert len(h.edges) == len(g.edges)
        assert h.degree_multiset() == g.degree_multiset()
        for a, b in combinations(range(8), 2):
            assert h.has_edge(perm[a], perm[b]) == g.has_edge(a, b)

    def test_circulant_edge_count(self):
        # each of the 13 vertices picks up both steps; 13*2 edges counted twice
        g = circulant(13, (1, 5))
        assert g.order == 13
        assert len(g.edges) == 13 * 2
        assert g.degree_multiset() == (4,) * 13


class TestVerifyWitness:
    def test_five_cycle_is_a_witness_for_3(self):
        # oracle: exhaustive check of all 10 triples of C5
        rep = verify_witness(circulant(5, (1,)), 3)
        assert rep.ok and rep.triangle is None and rep.independent_set is None

    def test_thirteen_cycle_witness_for_5_is_fast(self):
        t0 = time.time()
        rep = verify_witness(circulant(13, (1, 5)), 5)
        assert rep.ok
        assert time.time() - t0 < 1.0

    def test_triangle_is_reported(self):
        k3 = WitnessGraph.from_pairs(3, [(0, 1), (0, 2), (1, 2)])
        rep = verify_witness(k3, 3)
        assert not rep.ok
        assert rep.triangle == (0, 1, 2)

    def test_independent_set_is_reported(self):
        empty = WitnessGraph.from_pairs(5, [])
        rep = verify_witness(empty, 3)
        assert not rep.ok and rep.triangle is None
        s = rep.independent_set
        assert len(s) == 3 and len(set(s)) == 3

    def test_reported_triangle_is_real(self):
        rng = random.Random(7)
        for _ in range(50):
            order = rng.randrange(4, 9)
            pairs = [p for p in combinations(range(order), 2)
                     if rng.random() < 0.45]
            g = WitnessGraph.from_pairs(order, pairs)
            rep = verify_witness(g, 3)
            if rep.triangle is not None:
                a, b, c = rep.triangle
                assert g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
            if rep.independent_set is not None:
                assert all(not g.has_edge(a, b) for a, b in
                           combinations(rep.independent_set, 2))


class TestCanonicalForm:
    def test_invariant_under_relabeling(self):
        rng = random.Random(11)
        for _ in range(30):
            order = rng.randrange(2, 8)
            pairs = [p for p in combinations(range(order), 2)
                     if rng.random() < 0.4]
            g = WitnessGraph.from_pairs(order, pairs)
            perm = list(range(order))
            rng.shuffle(perm)
            assert canonical_form(g) == canonical_form(g.relabel(perm))

    def test_distinguishes_non_isomorphic(self):
        path = WitnessGraph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
        star = WitnessGraph.from_pairs(4, [(0, 1), (0, 2), (0, 3)])
        assert canonical_form(path) != canonical_form(star)


class TestSearch:
    def test_unique_extremal_graph_for_3(self):
        found = search_witnesses(5, 3)
        assert len(found) == 1
        assert canonical_form(found[0]) == canonical_form(circulant(5, (1,)))

    def test_no_witness_of_order_6_for_3(self):
        # oracle: exhaustive canonical search over order-6 graphs
        assert search_witnesses(6, 3) == []

    def test_limit_short_circuits(self):
        assert len(search_witnesses(5, 3, limit=1)) == 1


class TestBruteForce:
    def test_value_for_2_is_3(self):
        rec = brute_force_ramsey(2)
        assert rec.value == 3 and rec.source == "computed"
        assert rec.witness.order == 2 and rec.verified()

    def test_value_for_3_is_6(self):
        rec = brute_force_ramsey(3)
        assert rec.value == 6
        assert canonical_form(rec.witness) == canonical_form(circulant(5, (1,)))
        assert rec.verified()

    def test_value_for_4_is_9(self):
        t0 = time.time()
        rec = brute_force_ramsey(4)
        assert rec.value == 9
        assert rec.witness.order == 8 and rec.verified()
        assert time.time() - t0 < 300.0

    def test_rejects_out_of_range(self):
        with pytest.raises(RamseyError):
            brute_force_ramsey(5)


class TestBuiltins:
    @pytest.mark.parametrize("n,value,order", [(3, 6, 5), (4, 9, 8), (5, 14, 13)])
    def test_builtin_verifies(self, n, value, order):
        rec = builtin_record(n)
        assert rec.value == value and rec.witness.order == order
        assert rec.verified()

    def test_verified_false_on_tampered_value(self):
        rec = builtin_record(3)
        bad = RamseyRecord(rec.n, rec.value + 1, rec.witness, rec.source)
        assert not bad.verified()

    def test_unknown_builtin(self):
        with pytest.raises(RamseyError):
            builtin_record(6)


class TestRelabelRedPrefix:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_prefix_independent_and_still_verifies(self, n):
        rec = relabel_red_prefix(builtin_record(n))
        g = rec.witness
        assert all(not g.has_edge(a, b)
                   for a, b in combinations(range(n - 1), 2))
        assert rec.verified()

    def test_preserves_edge_count_and_degrees(self):
        before = builtin_record(5)
        after = relabel_red_prefix(before)
        assert len(after.witness.edges) == len(before.witness.edges)
        assert after.witness.degree_multiset() == before.witness.degree_multiset()

    def test_identity_when_already_prefixed(self):
        once = relabel_red_prefix(builtin_record(4))
        twice = relabel_red_prefix(once)
        assert twice.witness.edges == once.witness.edges


class TestTable:
    def test_default_table_values(self):
        table = load_ramsey_table()
        want = {3: 6, 4: 9, 5: 14, 6: 18, 7: 23, 8: 28,
                9: 36, 10: 40, 11: 46, 12: 52, 13: 59}
        for n, v in want.items():
            assert table[n].value == v

    def test_provenance_flags(self):
        table = load_ramsey_table()
        assert table[3].source == "computed"
        assert table[4].source == "computed"
        for n in range(5, 14):
            assert table[n].source == "external"

    def test_computed_entries_reproduce(self):
        table = load_ramsey_table()
        for n in (3, 4):
            assert brute_force_ramsey(n).value == table[n].value

    def test_ramsey_value_lookup(self):
        assert ramsey_value(5) == TableEntry(14, "external")

    def test_missing_value_names_the_argument(self):
        with pytest.raises(RamseyError, match="14"):
            ramsey_value(14)

    def test_custom_table_file(self, tmp_path):
        p = tmp_path / "table.json"
        p.write_text(json.dumps({"format": 1, "values": {"3": 6}}))
        table = load_ramsey_table(str(p))
        assert table[3].value == 6 and 4 not in table


class TestWitnessJson:
    def test_round_trip(self):
        rec = builtin_record(4)
        text = witness_to_json(rec)
        back = witness_from_json(text)
        assert back.n == rec.n and back.value == rec.value
        assert back.witness.edges == rec.witness.edges
        assert back.source == "user-file"

    def test_loading_verifies(self):
        k3 = WitnessGraph.from_pairs(3, [(0, 1), (0, 2), (1, 2)])
        text = json.dumps({"n": 3, "order": 3,
                           "edges": sorted(map(list, k3.edges))})
        with pytest.raises(RamseyError):
            witness_from_json(text)

    def test_rejects_malformed(self):
        with pytest.raises(RamseyError):
            witness_from_json(json.dumps({"order": 5, "edges": []}))
