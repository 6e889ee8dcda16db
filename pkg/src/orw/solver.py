"""Deterministic CNF decision core with verifiable resolution traces.

Variables are positive integers; a literal is a signed integer; a clause is a
tuple of literals.  The solver does unit propagation with two-literal
watching, branches on the first unassigned variable of a fixed order with
false tried first, and learns a clause at every conflict, so identical
inputs explore identical search trees.  Every learned clause is derived by
logged resolution steps from the input clauses, and unsatisfiable runs end
with a derivation of the empty clause that an independent checker replays;
satisfiable runs return a total model.  Exceeding the decision budget
raises, keeping resource exhaustion distinct from either answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

__all__ = [
    "BudgetExceeded",
    "SolveResult",
    "Trace",
    "TraceStep",
    "check_trace",
    "solve",
    "truth_table_status",
]


class BudgetExceeded(RuntimeError):
    """Raised when the search exceeds its node budget before an answer."""

    def __init__(self, nodes: int):
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.nodes = nodes


class TraceStep(NamedTuple):
    kind: str  # "axiom" | "resolve"
    left: int  # clause index (axiom) or step index (resolve)
    right: int  # -1 (axiom) or step index (resolve)
    pivot: int  # 0 (axiom) or the resolved variable
    clause: frozenset[int]


@dataclass(frozen=True)
class Trace:
    steps: tuple[TraceStep, ...]
    final: int  # index of the empty-clause step


@dataclass(frozen=True)
class SolveResult:
    status: str  # "sat" | "unsat"
    model: Optional[dict[int, bool]]
    trace: Optional[Trace]
    nodes: int


def solve(clauses: Sequence[Sequence[int]], num_vars: int,
          budget: int = 10_000_000,
          order: Optional[Sequence[int]] = None) -> SolveResult:
    cls = [tuple(dict.fromkeys(c)) for c in clauses]
    n_orig = len(cls)
    for c in cls:
        if any(abs(l) < 1 or abs(l) > num_vars for l in c):
            raise ValueError(f"literal out of range in clause {c}")
    order = list(range(1, num_vars + 1)) if order is None else list(order)

    assign = [0] * (num_vars + 1)  # 0 unassigned, +1 true, -1 false
    reason: list[Optional[int]] = [None] * (num_vars + 1)
    level = [0] * (num_vars + 1)
    trail: list[int] = []
    trail_lim: list[int] = []  # trail length at each decision
    qhead = 0
    nodes = 0

    steps: list[TraceStep] = []
    axiom_of: dict[int, int] = {}
    learned_step: dict[int, int] = {}

    def axiom(ci: int) -> int:
        got = axiom_of.get(ci)
        if got is None:
            got = len(steps)
            steps.append(TraceStep("axiom", ci, -1, 0, frozenset(cls[ci])))
            axiom_of[ci] = got
        return got

    def step_of(ci: int) -> int:
        return axiom(ci) if ci < n_orig else learned_step[ci]

    def resolve(pos_step: int, neg_step: int, var: int) -> int:
        merged = ((steps[pos_step].clause - {var})
                  | (steps[neg_step].clause - {-var}))
        steps.append(TraceStep("resolve", pos_step, neg_step, var,
                               frozenset(merged)))
        return len(steps) - 1

    def val(lit: int) -> int:
        return assign[lit] if lit > 0 else -assign[-lit]

    def set_lit(lit: int, why: Optional[int]) -> None:
        var = abs(lit)
        assign[var] = 1 if lit > 0 else -1
        reason[var] = why
        level[var] = len(trail_lim)
        trail.append(lit)

    # two-literal watching; watches are not repaired on backtrack
    watch_lits: list[list[int]] = []
    watches: dict[int, list[int]] = {}

    def attach(ci: int) -> None:
        c = cls[ci]
        pair = [c[0], c[1] if len(c) > 1 else c[0]]
        watch_lits.append(pair)
        for lit in set(pair):
            watches.setdefault(lit, []).append(ci)

    for ci, c in enumerate(cls):
        if not c:
            step = axiom(ci)
            return SolveResult("unsat", None, Trace(tuple(steps), step), 0)
        attach(ci)

    def propagate() -> Optional[int]:
        nonlocal qhead
        asg = assign
        wmap = watches
        wpairs = watch_lits
        while qhead < len(trail):
            flit = -trail[qhead]
            qhead += 1
            wl = wmap.get(flit)
            if not wl:
                continue
            i = 0
            while i < len(wl):
                ci = wl[i]
                a, b = wpairs[ci]
                other = b if a == flit else a
                if other == flit:
                    return ci  # unit clause just falsified
                ov = asg[other] if other > 0 else -asg[-other]
                if ov == 1:
                    i += 1
                    continue
                moved = False
                for lit2 in cls[ci]:
                    if lit2 != other and lit2 != flit and (
                            asg[lit2] if lit2 > 0 else -asg[-lit2]) >= 0:
                        wpairs[ci] = [other, lit2]
                        wmap.setdefault(lit2, []).append(ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        moved = True
                        break
                if moved:
                    continue
                if ov == 0:
                    set_lit(other, ci)
                    i += 1
                else:
                    return ci
        return None

    def resolve_to_empty(sid: int) -> int:
        # at decision level 0 every trail literal has a reason clause
        for lit in reversed(trail):
            if -lit in steps[sid].clause:
                rstep = step_of(reason[abs(lit)])
                if lit > 0:
                    sid = resolve(rstep, sid, lit)
                else:
                    sid = resolve(sid, rstep, -lit)
        assert not steps[sid].clause
        return sid

    def analyze(conf_ci: int) -> tuple[frozenset[int], int, int, int]:
        # derive a clause with a single current-level literal (first UIP)
        cur = len(trail_lim)
        sid = step_of(conf_ci)
        cset = steps[sid].clause
        idx = len(trail) - 1
        while True:
            cur_lits = [l for l in cset if level[abs(l)] == cur]
            if len(cur_lits) <= 1:
                uip = cur_lits[0]
                break
            while True:
                lit = trail[idx]
                idx -= 1
                if (-lit in cset and level[abs(lit)] == cur
                        and reason[abs(lit)] is not None):
                    break
            rstep = step_of(reason[abs(lit)])
            if lit > 0:
                sid = resolve(rstep, sid, lit)
            else:
                sid = resolve(sid, rstep, -lit)
            cset = steps[sid].clause
        bj = max((level[abs(l)] for l in cset if l != uip), default=0)
        return cset, sid, bj, uip

    pos_of = [0] * (num_vars + 1)
    for p, v in enumerate(order):
        pos_of[v] = p

    def backjump(bj: int) -> int:
        nonlocal qhead
        mark = trail_lim[bj]
        mn = len(order)
        for lit in trail[mark:]:
            var = abs(lit)
            assign[var] = 0
            reason[var] = None
            if pos_of[var] < mn:
                mn = pos_of[var]
        del trail[mark:]
        del trail_lim[bj:]
        qhead = mark
        return mn

    # root-level units
    for ci, c in enumerate(cls):
        if len(c) == 1:
            lit = c[0]
            if val(lit) == -1:
                sid = resolve_to_empty(axiom(ci))
                return SolveResult("unsat", None, Trace(tuple(steps), sid), 0)
            if val(lit) == 0:
                set_lit(lit, ci)

    head = 0
    while True:
        conf = propagate()
        if conf is not None:
            if not trail_lim:
                sid = resolve_to_empty(step_of(conf))
                return SolveResult("unsat", None, Trace(tuple(steps), sid),
                                   nodes)
            cset, sid, bj, uip = analyze(conf)
            ci = len(cls)
            # put the asserting literal first, then a deepest-level literal,
            # so the stale-watch invariant holds after the jump back
            rest = sorted((l for l in cset if l != uip),
                          key=lambda l: (-level[abs(l)], abs(l)))
            cls.append(tuple([uip] + rest))
            learned_step[ci] = sid
            attach(ci)
            freed = backjump(bj)
            set_lit(uip, ci)
            if freed < head:
                head = freed
            continue
        while head < len(order) and assign[order[head]] != 0:
            head += 1
        if head == len(order):
            model = {v: assign[v] == 1 for v in range(1, num_vars + 1)}
            return SolveResult("sat", model, None, nodes)
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        trail_lim.append(len(trail))
        set_lit(-order[head], None)  # false first


def check_trace(clauses: Sequence[Sequence[int]], trace: Trace) -> bool:
    """Independently replay a refutation: every step must be a legal axiom
    citation or resolution, and the final step must be the empty clause."""
    steps = trace.steps
    for idx, st in enumerate(steps):
        if st.kind == "axiom":
            if not (0 <= st.left < len(clauses)):
                return False
            if st.clause != frozenset(clauses[st.left]):
                return False
        elif st.kind == "resolve":
            if not (0 <= st.left < idx and 0 <= st.right < idx):
                return False
            a, b, v = steps[st.left].clause, steps[st.right].clause, st.pivot
            if v <= 0 or v not in a or -v not in b:
                return False
            if st.clause != (a - {v}) | (b - {-v}):
                return False
        else:
            return False
    if not (0 <= trace.final < len(steps)):
        return False
    return not steps[trace.final].clause


def truth_table_status(clauses: Sequence[Sequence[int]],
                       num_vars: int) -> tuple[str, Optional[dict[int, bool]]]:
    """Exhaustive enumeration oracle for small systems.

    All 2^num_vars assignments are evaluated at once, bit-parallel: one big
    integer holds a clause's truth column, bit m being its value under the
    assignment whose variable v reads bit (m >> (v-1)) & 1.  The model
    returned for satisfiable systems is the one with the smallest such m.
    """
    if num_vars > 24:
        raise ValueError("truth-table oracle is limited to 24 variables")
    size = 1 << num_vars
    ones = (1 << size) - 1
    col = [0] * (num_vars + 1)
    for v in range(1, num_vars + 1):
        half = 1 << (v - 1)
        pat = ((1 << half) - 1) << half  # one period: half zeros, half ones
        width = half << 1
        while width < size:
            pat |= pat << width
            width <<= 1
        col[v] = pat
    acc = ones
    for c in clauses:
        m = 0
        for lit in c:
            m |= col[lit] if lit > 0 else ones ^ col[-lit]
        acc &= m
        if not acc:
            return "unsat", None
    m = (acc & -acc).bit_length() - 1
    return "sat", {v: bool((m >> (v - 1)) & 1)
                   for v in range(1, num_vars + 1)}
