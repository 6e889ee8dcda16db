"""Tests for the CNF solver core and the clause-catalogue replay."""

import json
import random

import pytest

from orw.lowerbound import build_gn, build_partition, induced_lower_coloring
from orw.ordinals import NodeClassId, OrdinalError, parse
from orw.ramsey import builtin_record, relabel_red_prefix
from orw.replay import (
    ClauseSystem,
    VariableSpace,
    assignment_from_coloring,
    decide,
    first_violated_clause,
    instantiate_clauses,
    model_tables,
    replay_theorem,
)
from orw.solver import (
    BudgetExceeded,
    Trace,
    TraceStep,
    check_trace,
    solve,
    truth_table_status,
)


def php_clauses(holes):
    """Pigeonhole: holes+1 objects into `holes` slots (unsatisfiable)."""
    var = {}
    for p in range(holes + 1):
        for h in range(holes):
            var[p, h] = len(var) + 1
    cls = [tuple(var[p, h] for h in range(holes)) for p in range(holes + 1)]
    for h in range(holes):
        for p1 in range(holes + 1):
            for p2 in range(p1 + 1, holes + 1):
                cls.append((-var[p1, h], -var[p2, h]))
    return cls, len(var)


class TestSolver:
    def test_empty_system_is_sat(self):
        r = solve([], 0)
        assert r.status == "sat" and r.model == {}

    def test_contradictory_units(self):
        cls = [(1,), (-1,)]
        r = solve(cls, 1)
        assert r.status == "unsat"
        assert check_trace(cls, r.trace)

    def test_propagation_chain_unsat(self):
        cls = [(1, 2), (-1, 2), (-2,)]
        r = solve(cls, 2)
        assert r.status == "unsat" and check_trace(cls, r.trace)

    def test_sat_model_is_total_and_satisfying(self):
        cls = [(1, 2), (-1,), (3, -2)]
        r = solve(cls, 4)
        assert r.status == "sat"
        assert set(r.model) == {1, 2, 3, 4}
        for c in cls:
            assert any(r.model[abs(l)] == (l > 0) for l in c)

    def test_agrees_with_truth_table(self):
        # oracle: exhaustive enumeration oracle on small random systems
        rng = random.Random(42)
        for _ in range(500):
            nv = rng.randrange(1, 10)
            cls = []
            for _ in range(rng.randrange(0, 30)):
                cls.append(tuple((v if rng.random() < 0.5 else -v) for v in
                                 (rng.randrange(1, nv + 1)
                                  for _ in range(rng.randrange(1, 4)))))
            got = solve(cls, nv)
            want, _ = truth_table_status(cls, nv)
            assert got.status == want
            if got.status == "unsat":
                assert check_trace(cls, got.trace)
            else:
                for c in cls:
                    assert any(got.model[abs(l)] == (l > 0) for l in c)

    def test_pigeonhole_refutations_verify(self):
        for holes in (3, 4, 5):
            cls, nv = php_clauses(holes)
            r = solve(cls, nv)
            assert r.status == "unsat"
            assert check_trace(cls, r.trace)

    def test_budget_is_distinct_from_answers(self):
        cls, nv = php_clauses(6)
        with pytest.raises(BudgetExceeded):
            solve(cls, nv, budget=5)

    def test_deterministic(self):
        cls, nv = php_clauses(5)
        a, b = solve(cls, nv), solve(cls, nv)
        assert a.nodes == b.nodes
        assert a.trace.steps == b.trace.steps

    def test_order_changes_search_not_answer(self):
        cls, nv = php_clauses(4)
        r = solve(cls, nv, order=list(range(nv, 0, -1)))
        assert r.status == "unsat" and check_trace(cls, r.trace)

    def test_checker_rejects_tampering(self):
        cls = [(1,), (-1,)]
        r = solve(cls, 1)
        steps = list(r.trace.steps)
        # pretend an axiom had different content
        bad = steps.copy()
        i = next(i for i, s in enumerate(bad) if s.kind == "axiom")
        bad[i] = TraceStep("axiom", bad[i].left, -1, 0, frozenset({1, -1}))
        assert not check_trace(cls, Trace(tuple(bad), r.trace.final))
        # final step must be empty
        nonfinal = next(i for i, s in enumerate(steps) if s.clause)
        assert not check_trace(cls, Trace(tuple(steps), nonfinal))

    def test_checker_rejects_bad_pivot(self):
        steps = (TraceStep("axiom", 0, -1, 0, frozenset({1})),
                 TraceStep("axiom", 1, -1, 0, frozenset({2})),
                 TraceStep("resolve", 0, 1, 1, frozenset()))
        assert not check_trace([(1,), (2,)], Trace(steps, 2))

    def test_truth_table_size_limit(self):
        with pytest.raises(ValueError):
            truth_table_status([(1,)], 25)


class TestVariableSpace:
    def test_counts_for_3_7(self):
        # oracle: 23 classes, C(23,2)-16 cross-component pairs, plus 6
        sp = VariableSpace(3, 7)
        assert sp.num_vars == 243
        assert len(sp.classes) == 23

    def test_symmetric_lookup(self):
        sp = VariableSpace(3, 7)
        a, b = NodeClassId(2, 1), NodeClassId(5, 0)
        assert sp.tilde_var(a, b) == sp.tilde_var(b, a)

    def test_same_component_pair_is_undeclared(self):
        sp = VariableSpace(3, 7)
        with pytest.raises(OrdinalError):
            sp.tilde_var(NodeClassId(2, 0), NodeClassId(2, 1))

    def test_limit_aliases(self):
        sp = VariableSpace(3, 7)
        assert sp.limit_class(2) == NodeClassId(2, 2)
        assert sp.limit_class(9) == NodeClassId(9, 1)
        with pytest.raises(OrdinalError):
            sp.limit_class(11)

    def test_names_round_trip(self):
        sp = VariableSpace(3, 7)
        v = sp.tilde_var(NodeClassId(1, 0), NodeClassId(4, 1))
        assert sp.var_name(v) == "t(1,0;4,1)"
        assert sp.var_name(sp.hat_var(3, 1)) == "h(3,1)"

    def test_rejects_small_parameters(self):
        with pytest.raises(OrdinalError):
            VariableSpace(2, 7)
        with pytest.raises(OrdinalError):
            VariableSpace(3, 1)


class TestInstantiation:
    def test_schema_counts_for_3_7(self):
        # oracle: per-schema combinatorial counts at n=3, K=7
        sys_ = instantiate_clauses(3, 7)
        assert sys_.schema_counts() == {
            "C1": 60, "C2": 18, "C3": 3, "C4": 189, "C5": 54, "C6": 20,
            "C7": 2, "C8": 170, "C9": 40, "C10": 64, "C11": 36,
            "C12": 1561, "C13": 120, "C14": 72}

    def test_tags_are_total_and_redundancy_flagged(self):
        sys_ = instantiate_clauses(3, 5)
        assert len(sys_.tags) == len(sys_.clauses)
        for t in sys_.tags:
            assert t.redundant == (t.schema in ("C4", "C10"))

    def test_clauses_reference_declared_variables(self):
        sys_ = instantiate_clauses(3, 5)
        nv = sys_.space.num_vars
        for c in sys_.clauses:
            assert c, "empty clause at construction"
            assert len(set(c)) == len(c)
            assert all(1 <= abs(l) <= nv for l in c)

    def test_example_clause_spread_over_two_tops(self):
        sys_ = instantiate_clauses(3, 7)
        sp = sys_.space
        L = sp.limit_class
        want = sorted([
            sp.tilde_var(L(3), L(2)),
            sp.tilde_var(L(2), NodeClassId(1, 0)),
            sp.tilde_var(L(3), NodeClassId(1, 0)),
            sp.tilde_var(L(2), L(1)),
            sp.tilde_var(L(3), L(1)),
            sp.hat_var(1, 0)])
        found = [sorted(c) for c, t in zip(sys_.clauses, sys_.tags)
                 if t.schema == "C8" and t.params == (1, 0, 2, 3)]
        assert found == [want]

    def test_example_clause_top_exclusivity(self):
        sys_ = instantiate_clauses(3, 7)
        sp = sys_.space
        found = [sorted(c) for c, t in zip(sys_.clauses, sys_.tags)
                 if t.schema == "C3" and t.params == (2,)]
        assert found == [sorted([-sp.hat_var(2, 0), -sp.hat_var(2, 1)])]

    def test_example_clause_red_top_forces_blue(self):
        sys_ = instantiate_clauses(3, 7)
        sp = sys_.space
        found = [sorted(c) for c, t in zip(sys_.clauses, sys_.tags)
                 if t.schema == "C5" and t.params == (4, 0, 1, 1)]
        want = sorted([sp.hat_var(1, 1),
                       sp.tilde_var(NodeClassId(4, 0), NodeClassId(1, 1)),
                       sp.tilde_var(NodeClassId(4, 0), NodeClassId(1, 2))])
        assert found == [want]

    def test_pendant_exclusion_arity(self):
        sys_ = instantiate_clauses(3, 7)
        lens = {len(c) for c, t in zip(sys_.clauses, sys_.tags)
                if t.schema == "C11"}
        assert lens == {8}  # K falsity literals plus the excluded top

    def test_drop_removes_schema(self):
        sys_ = instantiate_clauses(3, 5, drop=("C8",))
        assert "C8" not in sys_.schema_counts()
        with pytest.raises(ValueError):
            instantiate_clauses(3, 5, drop=("C99",))

    def test_select_strips_redundant(self):
        full = instantiate_clauses(3, 5)
        core = full.select(include_redundant=False)
        assert len(core) < len(full)
        assert all(not t.redundant for t in core.tags)


def lower_coloring(n):
    rec = relabel_red_prefix(builtin_record(n))
    return induced_lower_coloring(build_gn(build_partition(n, rec)))


class TestConsistencyBridge:
    @pytest.mark.parametrize("n,k", [(3, 3), (4, 5), (5, 9)])
    def test_catalogue_holds_on_the_construction(self, n, k):
        # the lower-bound coloring has no blue triple and no red closed
        # omega+n, so every constraint must evaluate true on its tables
        sys_ = instantiate_clauses(n, k)
        asg = assignment_from_coloring(sys_.space, lower_coloring(n))
        assert first_violated_clause(sys_, asg) is None

    def test_violations_are_detected(self):
        sys_ = instantiate_clauses(3, 3)
        asg = assignment_from_coloring(sys_.space, lower_coloring(3))
        # force both top-pair colors blue for component 1: violates C3
        asg[sys_.space.hat_var(1, 0)] = True
        asg[sys_.space.hat_var(1, 1)] = True
        bad = first_violated_clause(sys_, asg)
        assert bad is not None


class TestReplay:
    @pytest.mark.parametrize("mode,k", [("square-K", 5), ("ramsey-K", 7)])
    def test_replay_3_is_unsat(self, mode, k):
        rep = replay_theorem(3, mode)
        assert rep.status == "unsat"
        assert rep.k == k
        assert rep.gamma == parse(f"w^2*3+w*{k}+1")
        assert rep.nodes <= 10_000_000
        assert rep.trace_verified is True
        assert rep.redundant_status == "unsat"

    def test_ramsey_value_provenance(self):
        rep = replay_theorem(3, "ramsey-K")
        assert rep.ramsey_used.value == 6
        assert rep.ramsey_used.source == "computed"
        assert replay_theorem(3, "square-K").ramsey_used is None

    def test_record_override(self):
        rep = replay_theorem(3, "ramsey-K", rec=builtin_record(3))
        assert rep.k == 7 and rep.status == "unsat"
        with pytest.raises(OrdinalError):
            replay_theorem(3, "ramsey-K", rec=builtin_record(4))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            replay_theorem(3, "cubic-K")

    def test_budget_propagates(self):
        with pytest.raises(BudgetExceeded):
            replay_theorem(3, "ramsey-K", budget=3)

    def test_dropping_spread_schema_gives_model(self):
        # negative control: without C8 the system is satisfiable and the
        # solver's first model leaves every top-top pair red
        rep = replay_theorem(3, "ramsey-K", drop=("C8",))
        assert rep.status == "sat"
        assert rep.trace_verified is None
        sp = VariableSpace(3, 7)
        tops = {tuple(sp.limit_class(i)) for i in range(1, 11)}
        block = [e for e in rep.model["tilde"]
                 if tuple(e["a"]) in tops and tuple(e["b"]) in tops]
        assert len(block) == 45
        assert all(e["color"] == 0 for e in block)

    def test_monotone_in_k(self):
        # more space means more instances of every schema: still unsat
        for k in (5, 6, 7, 8):
            sys_ = instantiate_clauses(3, k).select(include_redundant=False)
            assert decide(sys_).status == "unsat"

    def test_report_json_round_trip_and_determinism(self):
        a = replay_theorem(3, "square-K")
        b = replay_theorem(3, "square-K")
        assert a.to_json() == b.to_json()
        doc = json.loads(a.to_json())
        assert doc["status"] == "unsat"
        # oracle: k=1..3 give (C(7,2)+C(6,2)+C(5,2))*2 = 92 at n=3, K=5
        assert doc["schema_counts"]["C8"] == 92
        assert doc["ramsey_used"] is None

    def test_model_tables_cover_space(self):
        rep = replay_theorem(3, "ramsey-K", drop=("C8",))
        assert len(rep.model["tilde"]) == 237
        assert len(rep.model["hat"]) == 6


class TestDimacs:
    def test_header_and_shape(self):
        sys_ = instantiate_clauses(3, 7)
        text = sys_.to_dimacs()
        lines = text.strip().splitlines()
        assert lines[1] == "p cnf 243 2409"
        assert all(line.endswith(" 0") for line in lines[2:])
        assert len(lines) == 2 + 2409

    def test_sidecar_aligns(self):
        sys_ = instantiate_clauses(3, 5)
        doc = json.loads(sys_.sidecar_json())
        assert len(doc["variables"]) == sys_.space.num_vars
        assert len(doc["clauses"]) == len(sys_)
        assert doc["variables"]["1"] == sys_.space.var_name(1)
        assert {c["schema"] for c in doc["clauses"]} == set(
            sys_.schema_counts())

    def test_export_round_trips_through_solver(self):
        sys_ = instantiate_clauses(3, 5).select(include_redundant=False)
        lines = sys_.to_dimacs().strip().splitlines()
        nv = int(lines[1].split()[2])
        parsed = [tuple(map(int, line.split()[:-1])) for line in lines[2:]]
        assert parsed == list(sys_.clauses)
        assert solve(parsed, nv).status == "unsat"
