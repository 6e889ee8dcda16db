"""Propositional replay of the upper-bound arguments.

Over the space [0, w^2*n + w*K + 1), a normal omega-homogeneous coloring with
no blue triangle and no red closed omega+n satisfies a catalogue of boolean
constraints on its class-pair color table.  This module instantiates that
catalogue over one variable per cross-component class pair (plus one per
within-component pair against a singleton top), decides satisfiability with
the deterministic solver, and reports.  Joint unsatisfiability mechanically
replays the contradiction behind the two upper bounds; a satisfiable outcome
is surfaced as a structured color table for analysis, never patched over.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

from .coloring import QuotientColoring
from .ordinals import NodeClassId, Ordinal, OrdinalError, valid_classes
from .ramsey import RamseyRecord, TableEntry, ramsey_value
from .solver import SolveResult, Trace, check_trace, solve

__all__ = [
    "VariableSpace",
    "ClauseTag",
    "ClauseSystem",
    "instantiate_clauses",
    "decide",
    "replay_theorem",
    "resolve_k",
    "ReplayReport",
    "assignment_from_coloring",
    "first_violated_clause",
    "model_tables",
    "replay_gamma",
    "SCHEMAS",
    "REDUNDANT_SCHEMAS",
]

SCHEMAS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10",
           "C11", "C12", "C13", "C14")
REDUNDANT_SCHEMAS = ("C4", "C10")


def replay_gamma(n: int, k: int) -> Ordinal:
    return (Ordinal.omega_power(2, n) + Ordinal.omega_power(1, k)
            + Ordinal.from_int(1))


class VariableSpace:
    """Boolean variables for the color table of [0, w^2*n + w*K + 1).

    One variable per unordered pair of classes in distinct components
    ("t(i,j;k,l)"), and one per pair (component top, lower level of the same
    component) for components 1..n ("h(i,l)").  Indices are assigned in
    component-major order so the solver's default order scans components in
    sequence.
    """

    def __init__(self, n: int, k: int):
        if n < 3:
            raise OrdinalError(f"replay needs n >= 3, got {n}")
        if k < 2:
            raise OrdinalError(f"replay needs K >= 2, got {k}")
        self.n = n
        self.k = k
        self.gamma = replay_gamma(n, k)
        self.classes = tuple(valid_classes(self.gamma))
        entries: list[tuple[tuple, str, tuple]] = []
        for i in range(1, n + 1):
            for lvl in (0, 1):
                entries.append(((i, 0, lvl, 0, 0), "hat", (i, lvl)))
        for a, b in combinations(self.classes, 2):
            if a.index != b.index:
                entries.append(((a.index, 1, a.level, b.index, b.level),
                                "tilde", (a, b)))
        entries.sort(key=lambda e: e[0])
        self._tilde: dict[tuple[NodeClassId, NodeClassId], int] = {}
        self._hat: dict[tuple[int, int], int] = {}
        self._names: list[str] = [""]  # 1-based
        for _, kind, payload in entries:
            idx = len(self._names)
            if kind == "hat":
                i, lvl = payload
                self._hat[(i, lvl)] = idx
                self._names.append(f"h({i},{lvl})")
            else:
                a, b = payload
                self._tilde[(a, b)] = idx
                self._names.append(f"t({a.index},{a.level};"
                                   f"{b.index},{b.level})")

    @property
    def num_vars(self) -> int:
        return len(self._names) - 1

    def tilde_var(self, a: NodeClassId, b: NodeClassId) -> int:
        key = (a, b) if a < b else (b, a)
        got = self._tilde.get(key)
        if got is None:
            raise OrdinalError(f"no color variable for classes {a}, {b}")
        return got

    def hat_var(self, i: int, level: int) -> int:
        got = self._hat.get((i, level))
        if got is None:
            raise OrdinalError(f"no top-pair variable for ({i},{level})")
        return got

    def limit_class(self, i: int) -> NodeClassId:
        """The singleton top class of component i (written L_i)."""
        if not 1 <= i <= self.n + self.k:
            raise OrdinalError(f"component {i} out of range")
        return NodeClassId(i, 2 if i <= self.n else 1)

    def var_name(self, idx: int) -> str:
        return self._names[idx]

    def hat_items(self):
        return sorted(self._hat.items())

    def tilde_items(self):
        return sorted(self._tilde.items())


class ClauseTag(NamedTuple):
    schema: str
    redundant: bool
    params: tuple


@dataclass(frozen=True)
class ClauseSystem:
    space: VariableSpace
    clauses: tuple[tuple[int, ...], ...]
    tags: tuple[ClauseTag, ...]

    def __len__(self) -> int:
        return len(self.clauses)

    def schema_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for t in self.tags:
            out[t.schema] = out.get(t.schema, 0) + 1
        return out

    def select(self, include_redundant: bool = True) -> "ClauseSystem":
        if include_redundant:
            return self
        keep = [(c, t) for c, t in zip(self.clauses, self.tags)
                if not t.redundant]
        return ClauseSystem(self.space,
                            tuple(c for c, _ in keep),
                            tuple(t for _, t in keep))

    def to_dimacs(self) -> str:
        lines = [f"c class-pair color constraints, n={self.space.n} "
                 f"K={self.space.k}",
                 f"p cnf {self.space.num_vars} {len(self.clauses)}"]
        for c in self.clauses:
            lines.append(" ".join(map(str, c)) + " 0")
        return "\n".join(lines) + "\n"

    def sidecar_json(self) -> str:
        return json.dumps({
            "n": self.space.n,
            "k": self.space.k,
            "variables": {str(i): self.space.var_name(i)
                          for i in range(1, self.space.num_vars + 1)},
            "clauses": [{"schema": t.schema, "redundant": t.redundant,
                         "params": list(t.params)} for t in self.tags],
        }, indent=2)


def instantiate_clauses(n: int, k: int,
                        drop: tuple[str, ...] = ()) -> ClauseSystem:
    """Build the full tagged catalogue C1..C14 (C4/C10 flagged redundant).

    `drop` removes whole schemas, for ablation experiments.
    """
    for s in drop:
        if s not in SCHEMAS:
            raise ValueError(f"unknown schema {s!r}")
    space = VariableSpace(n, k)
    clauses: list[tuple[int, ...]] = []
    tags: list[ClauseTag] = []

    def t(a: NodeClassId, b: NodeClassId) -> int:
        return space.tilde_var(a, b)

    def h(i: int, lvl: int) -> int:
        return space.hat_var(i, lvl)

    L = space.limit_class

    def add(schema: str, params: tuple, lits: list[int]) -> None:
        if schema in drop:
            return
        assert lits and len(set(lits)) == len(lits)
        assert not any(-x in lits for x in lits)
        clauses.append(tuple(lits))
        tags.append(ClauseTag(schema, schema in REDUNDANT_SCHEMAS, params))

    def sources(k0: int):
        """The (i,j) ranges shared by several schemas: components above k0."""
        for i in range(k0 + 1, n + 1):
            for j in (0, 1):
                yield NodeClassId(i, j)
        for i in range(n + 1, n + k + 1):
            yield NodeClassId(i, 0)

    # C1: nothing is blue to both lower levels of a squared component
    for k0 in range(1, n + 1):
        for s in space.classes:
            if s.index != k0:
                add("C1", (s.index, s.level, k0),
                    [-t(s, NodeClassId(k0, 0)), -t(s, NodeClassId(k0, 1))])

    # C2: no target is blue to both lower levels of another squared component
    for i in range(1, n + 1):
        for k0 in range(1, n + 1):
            if i == k0:
                continue
            for lvl in (0, 1, 2):
                tgt = NodeClassId(k0, lvl)
                add("C2", (i, k0, lvl),
                    [-t(NodeClassId(i, 0), tgt), -t(NodeClassId(i, 1), tgt)])

    # C3: a component top is blue to at most one of its levels
    for i in range(1, n + 1):
        add("C3", (i,), [-h(i, 0), -h(i, 1)])

    # C4 (redundant): two sources blue to a common target are not blue
    for k0 in range(1, n + 1):
        for lvl in (0, 1, 2):
            tgt = NodeClassId(k0, lvl)
            for i, m in combinations(range(n + 1, n + k + 1), 2):
                a, b = NodeClassId(i, 0), NodeClassId(m, 0)
                add("C4", (i, m, k0, lvl),
                    [-t(b, tgt), -t(a, tgt), -t(b, a)])

    # C5: a red top-level forces blue toward the level or the top
    for k0 in range(1, n + 1):
        for lvl in (0, 1):
            for s in sources(k0):
                add("C5", (s.index, s.level, k0, lvl),
                    [h(k0, lvl), t(s, NodeClassId(k0, lvl)), t(s, L(k0))])

    # C6: every source is blue to some level of a lower squared component
    for k0 in range(1, n):
        for s in sources(k0):
            add("C6", (s.index, s.level, k0),
                [t(s, NodeClassId(k0, 0)), t(s, NodeClassId(k0, 1)),
                 t(s, L(k0))])

    # C7: each lower component top is blue to at least one of its levels
    for i in range(1, n):
        add("C7", (i,), [h(i, 0), h(i, 1)])

    # C8: a fully red spread over n-1 higher tops forces a blue top pair
    for k0 in range(1, n + 1):
        for lvl in (0, 1):
            for subset in combinations(range(k0 + 1, n + k + 1), n - 1):
                lits = [t(L(b), L(a)) for a, b in combinations(subset, 2)]
                lits += [t(L(i), NodeClassId(k0, lvl)) for i in subset]
                lits += [t(L(i), L(k0)) for i in subset]
                lits.append(h(k0, lvl))
                add("C8", (k0, lvl) + subset, lits)

    # C9: nothing above is blue to the level the top is blue to
    for k0 in range(1, n):
        for lvl in (0, 1):
            for s in sources(k0):
                add("C9", (s.index, s.level, k0, lvl),
                    [-h(k0, lvl), -t(s, NodeClassId(k0, lvl))])

    # C10 (redundant): the two guarded corollaries of C5/C6/C9
    for k0 in range(1, n):
        for lvl in (0, 1):
            g = h(k0, lvl)  # guard: clause active when (k0,lvl) is red-named
            for i in range(n + 1, n + k + 1):
                s = NodeClassId(i, 0)
                add("C10", ("pair", i, k0, lvl),
                    [g, t(s, NodeClassId(k0, lvl)), t(s, L(k0))])
            for i in range(k0 + 1, n + 1):
                a = t(NodeClassId(i, 1), L(k0))
                b = t(NodeClassId(i, 0), NodeClassId(k0, lvl))
                c = t(NodeClassId(i, 1), NodeClassId(k0, lvl))
                d = t(NodeClassId(i, 0), L(k0))
                for tag, (p, q) in (("fwd", (a, b)), ("bwd", (b, a))):
                    add("C10", ("iff-" + tag, i, k0, lvl), [g, -p, q])
                for name, x in (("c", c), ("d", d)):
                    add("C10", ("excl-" + name, i, k0, lvl), [g, -a, -x])
                    add("C10", ("cover-" + name, i, k0, lvl), [g, a, x])

    # C11: all pendant bases blue to a low target bar its pendant tops
    for i in range(1, n):
        for j in (0, 1, 2):
            tgt = NodeClassId(i, j)
            base = [-t(NodeClassId(m, 0), tgt)
                    for m in range(n + 1, n + k + 1)]
            for m2 in range(n + 1, n + k):
                add("C11", (i, j, m2), base + [-t(L(m2), tgt)])

    # C12: no three classes in distinct components are pairwise blue,
    # and no top/level pair of one component is jointly blue to a third
    for a, b, c in combinations(space.classes, 3):
        if a.index != b.index and a.index != c.index and b.index != c.index:
            add("C12", (a, b, c), [-t(a, b), -t(a, c), -t(b, c)])
    for i in range(1, n + 1):
        for j in (0, 1):
            for x in space.classes:
                if x.index != i:
                    add("C12", ("mixed", i, j, x),
                        [-t(NodeClassId(i, 2), x), -t(NodeClassId(i, j), x),
                         -h(i, j)])

    # C13: no blue triangle among the component tops
    for a, b, c in combinations(range(1, n + k + 1), 3):
        add("C13", (a, b, c),
            [-t(L(b), L(a)), -t(L(c), L(a)), -t(L(c), L(b))])

    # C14: a top blue toward one name of a lower component excludes
    # pendant tops from the swapped name
    for k0 in range(1, n):
        for i in range(k0 + 1, n + 1):
            for lvl in (0, 1):
                g = -h(k0, 1 - lvl)  # active when (k0,lvl) is the red name
                for m in range(n + 1, n + k):
                    add("C14", ("a", k0, i, lvl, m),
                        [g, -t(L(i), NodeClassId(k0, lvl)),
                         -t(L(m), L(k0))])
                    add("C14", ("b", k0, i, lvl, m),
                        [g, -t(L(i), L(k0)),
                         -t(L(m), NodeClassId(k0, lvl))])

    return ClauseSystem(space, tuple(clauses), tuple(tags))


def decide(system: ClauseSystem, budget: int = 10_000_000) -> SolveResult:
    """Run the deterministic solver on a clause system."""
    return solve(system.clauses, system.space.num_vars, budget=budget)


def model_tables(space: VariableSpace, model: dict[int, bool]) -> dict:
    """Render a satisfying assignment as structured color tables."""
    return {
        "hat": [{"component": i, "level": lvl, "color": int(model[v])}
                for (i, lvl), v in space.hat_items()],
        "tilde": [{"a": list(a), "b": list(b), "color": int(model[v])}
                  for (a, b), v in space.tilde_items()],
    }


def assignment_from_coloring(space: VariableSpace,
                             coloring: QuotientColoring) -> dict[int, bool]:
    """Read the variables of `space` off a concrete coloring's class tables.

    The coloring's class system must contain every class of `space`; this
    lets constraints instantiated over a shorter space be evaluated against
    a coloring living on a longer one.
    """
    out: dict[int, bool] = {}
    for (i, lvl), v in space.hat_items():
        out[v] = bool(coloring.class_pair_color(NodeClassId(i, 2),
                                                NodeClassId(i, lvl)))
    for (a, b), v in space.tilde_items():
        out[v] = bool(coloring.class_pair_color(a, b))
    return out


def first_violated_clause(system: ClauseSystem,
                          assignment: dict[int, bool]) -> Optional[int]:
    """Index of the first clause the assignment falsifies, if any."""
    for idx, c in enumerate(system.clauses):
        if not any(assignment[abs(l)] == (l > 0) for l in c):
            return idx
    return None


@dataclass(frozen=True)
class ReplayReport:
    n: int
    mode: str
    k: int
    gamma: Ordinal
    ramsey_used: Optional[TableEntry]
    dropped: tuple[str, ...]
    num_vars: int
    num_clauses: int
    schema_counts: dict[str, int]
    status: str
    nodes: int
    trace_steps: int
    trace_verified: Optional[bool]
    redundant_status: Optional[str]
    model: Optional[dict]

    def to_json(self) -> str:
        doc = {
            "n": self.n, "mode": self.mode, "k": self.k,
            "gamma": str(self.gamma),
            "ramsey_used": (None if self.ramsey_used is None else
                            {"value": self.ramsey_used.value,
                             "source": self.ramsey_used.source}),
            "dropped": list(self.dropped),
            "num_vars": self.num_vars,
            "num_clauses": self.num_clauses,
            "schema_counts": dict(sorted(self.schema_counts.items())),
            "status": self.status,
            "nodes": self.nodes,
            "trace_steps": self.trace_steps,
            "trace_verified": self.trace_verified,
            "redundant_status": self.redundant_status,
            "model": self.model,
        }
        return json.dumps(doc, indent=2)


def resolve_k(n: int, mode: str, rec: Optional[RamseyRecord] = None,
              table: Optional[dict[int, TableEntry]] = None,
              ) -> tuple[int, Optional[TableEntry]]:
    """The limit-row budget K for a mode, with the Ramsey value it used.

    mode "ramsey-K" gives K = R(2n-3,3)+1 (from `rec` if supplied, else the
    value table); mode "square-K" gives K = n^2-4 and uses no Ramsey value.
    """
    if mode == "ramsey-K":
        m = 2 * n - 3
        if rec is not None:
            if rec.n != m:
                raise OrdinalError(
                    f"record is for R({rec.n},3); mode needs R({m},3)")
            used = TableEntry(rec.value, rec.source)
        else:
            used = ramsey_value(m, table)
        return used.value + 1, used
    if mode == "square-K":
        return n * n - 4, None
    raise ValueError(f"unknown mode {mode!r}")


def replay_theorem(n: int, mode: str, rec: Optional[RamseyRecord] = None,
                   budget: int = 10_000_000, drop: tuple[str, ...] = (),
                   table: Optional[dict[int, TableEntry]] = None,
                   ) -> ReplayReport:
    """Instantiate the catalogue at the bound-specific K and decide it.

    mode "ramsey-K" uses K = R(2n-3,3)+1; mode "square-K" uses K = n^2-4.
    Unsatisfiability of the non-redundant catalogue replays the upper-bound
    contradiction; the run also re-decides with the redundant schemas added
    to confirm they do not change the answer, and independently re-verifies
    the refutation trace.
    """
    k, used = resolve_k(n, mode, rec=rec, table=table)
    full = instantiate_clauses(n, k, drop=drop)
    core = full.select(include_redundant=False)
    res = decide(core, budget=budget)
    trace_verified = None
    redundant_status = None
    model = None
    trace_steps = 0
    if res.status == "unsat":
        trace_steps = len(res.trace.steps)
        trace_verified = check_trace(core.clauses, res.trace)
        redundant_status = decide(full, budget=budget).status
    else:
        model = model_tables(full.space, res.model)
    return ReplayReport(
        n=n, mode=mode, k=k, gamma=full.space.gamma, ramsey_used=used,
        dropped=tuple(drop), num_vars=full.space.num_vars,
        num_clauses=len(core), schema_counts=full.schema_counts(),
        status=res.status, nodes=res.nodes, trace_steps=trace_steps,
        trace_verified=trace_verified, redundant_status=redundant_status,
        model=model)
