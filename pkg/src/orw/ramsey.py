"""Classical Ramsey data: witness graphs, exact small values, relabeling.

A witness graph for R(n,3) > N is a triangle-free graph on N vertices with no
independent set of size n (graph edges play the role of blue pairs).  This
module verifies witnesses exhaustively, computes R(n,3) for n <= 4 by
isomorph-free exhaustive search, ships verified circulant witnesses for
n = 3, 4, 5, and loads larger values from a versioned table with explicit
provenance flags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from typing import Iterator, NamedTuple, Optional

__all__ = [
    "WitnessGraph",
    "WitnessReport",
    "RamseyRecord",
    "TableEntry",
    "circulant",
    "verify_witness",
    "canonical_form",
    "search_witnesses",
    "brute_force_ramsey",
    "builtin_record",
    "relabel_red_prefix",
    "load_ramsey_table",
    "ramsey_value",
    "witness_to_json",
    "witness_from_json",
]


class RamseyError(ValueError):
    """Raised for invalid witness data or unsupported queries."""


@dataclass(frozen=True)
class WitnessGraph:
    """A simple graph on vertices 0..order-1 with an immutable edge set."""

    order: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.order < 0:
            raise RamseyError("order must be nonnegative")
        for a, b in self.edges:
            if not (0 <= a < b < self.order):
                raise RamseyError(f"bad edge ({a},{b}) for order {self.order}")

    @classmethod
    def from_pairs(cls, order: int, pairs) -> "WitnessGraph":
        edges = set()
        for a, b in pairs:
            if a == b:
                raise RamseyError(f"loop at vertex {a}")
            edges.add((min(a, b), max(a, b)))
        return cls(order, frozenset(edges))

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.order
        for a, b in self.edges:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return masks

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def degree_multiset(self) -> tuple[int, ...]:
        deg = [0] * self.order
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(sorted(deg))

    def relabel(self, perm: list[int]) -> "WitnessGraph":
        """Apply a permutation: vertex v of self becomes perm[v]."""
        if sorted(perm) != list(range(self.order)):
            raise RamseyError("not a permutation")
        return WitnessGraph.from_pairs(
            self.order, ((perm[a], perm[b]) for a, b in self.edges))


def circulant(order: int, steps) -> WitnessGraph:
    """The circulant graph: i adjacent to i +- s (mod order) for each step."""
    pairs = [(i, (i + s) % order) for i in range(order) for s in steps]
    return WitnessGraph.from_pairs(order, pairs)


class WitnessReport(NamedTuple):
    ok: bool
    triangle: Optional[tuple[int, int, int]]
    independent_set: Optional[tuple[int, ...]]


def _find_triangle(g: WitnessGraph) -> Optional[tuple[int, int, int]]:
    masks = g.adjacency_masks()
    for a, b in sorted(g.edges):
        common = masks[a] & masks[b]
        if common:
            return tuple(sorted((a, b, (common & -common).bit_length() - 1)))
    return None


def _find_independent_set(g: WitnessGraph, size: int) -> Optional[tuple[int, ...]]:
    masks = g.adjacency_masks()

    def extend(chosen: list[int], banned: int, start: int):
        if len(chosen) == size:
            return tuple(chosen)
        for v in range(start, g.order):
            if g.order - v < size - len(chosen):
                return None
            if banned >> v & 1:
                continue
            got = extend(chosen + [v], banned | masks[v], v + 1)
            if got is not None:
                return got
        return None

    if size == 0:
        return ()
    return extend([], 0, 0)


def verify_witness(g: WitnessGraph, n: int) -> WitnessReport:
    """True iff g is triangle-free and has no independent set of size n."""
    tri = _find_triangle(g)
    if tri is not None:
        return WitnessReport(False, tri, None)
    ind = _find_independent_set(g, n)
    if ind is not None:
        return WitnessReport(False, None, ind)
    return WitnessReport(True, None, None)


# -- isomorph-free exhaustive search ----------------------------------------


def canonical_form(g: WitnessGraph) -> tuple[int, ...]:
    """Lexicographically least row-by-row adjacency bit string over orderings.

    Vertices are placed one at a time; each candidate contributes the bits of
    its adjacency to the already-placed vertices, and only candidates whose
    next row is minimal are branched on, which is exact for the minimum.
    """
    masks = g.adjacency_masks()
    n = g.order
    best: Optional[tuple[int, ...]] = None

    def rows_key(v: int, placed: list[int]) -> tuple[int, ...]:
        return tuple((masks[v] >> p) & 1 for p in placed)

    def rec(placed: list[int], acc: tuple[int, ...], remaining: frozenset[int]):
        nonlocal best
        if not remaining:
            if best is None or acc < best:
                best = acc
            return
        options = [(rows_key(v, placed), v) for v in remaining]
        least = min(k for k, _ in options)
        cand = acc + least
        if best is not None and cand > best[:len(cand)]:
            return
        for key, v in options:
            if key == least:
                rec(placed + [v], cand, remaining - {v})

    rec([], (), frozenset(range(n)))
    return best if best is not None else ()


def _independent_subsets(masks: list[int], k: int) -> Iterator[int]:
    """All subsets of 0..k-1 that are independent, as bitmasks."""

    def extend(mask: int, banned: int, start: int):
        yield mask
        for v in range(start, k):
            if not (banned >> v) & 1:
                yield from extend(mask | (1 << v), banned | masks[v], v + 1)

    yield from extend(0, 0, 0)


def search_witnesses(order: int, n: int,
                     limit: Optional[int] = None) -> list[WitnessGraph]:
    """Non-isomorphic triangle-free graphs of given order with no independent
    n-set, by vertex-by-vertex extension with canonical-form rejection."""
    level: dict[tuple[int, ...], tuple[int, ...]] = {(): ()}
    for k in range(order):
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for masks in level.values():
            ext = list(masks)
            for nb in _independent_subsets(list(masks), k):
                new_masks = [m | ((nb >> v & 1) << k) for v, m in enumerate(ext)]
                new_masks.append(nb)
                g = _graph_from_masks(k + 1, new_masks)
                if _find_independent_set(g, n) is not None:
                    continue
                nxt.setdefault(canonical_form(g), tuple(new_masks))
        level = nxt
        if not level:
            return []
    out = [_graph_from_masks(order, list(m)) for m in level.values()]
    out.sort(key=canonical_form)
    return out if limit is None else out[:limit]


def _graph_from_masks(order: int, masks: list[int]) -> WitnessGraph:
    pairs = [(a, b) for a in range(order) for b in range(a + 1, order)
             if masks[a] >> b & 1]
    return WitnessGraph.from_pairs(order, pairs)


@dataclass(frozen=True)
class RamseyRecord:
    """An R(n,3) value with its certifying witness and provenance."""

    n: int
    value: int
    witness: Optional[WitnessGraph]
    source: str  # "builtin" | "computed" | "user-file"

    def verified(self) -> bool:
        return (self.witness is not None
                and self.witness.order == self.value - 1
                and verify_witness(self.witness, self.n).ok)


def brute_force_ramsey(n: int) -> RamseyRecord:
    """Exact R(n,3) for n in {2,3,4}: the least order admitting no witness.

    Searches orders upward; at each order the isomorph-free survivors are the
    triangle-free graphs with independence number < n, so the first empty
    order is the value and any survivor one below is an extremal witness.
    """
    if n not in (2, 3, 4):
        raise RamseyError(f"exact search supports n in 2..4, got {n}")
    previous: list[WitnessGraph] = []
    order = 1
    while True:
        found = search_witnesses(order, n)
        if not found:
            return RamseyRecord(n, order, previous[0], "computed")
        previous = found
        order += 1


# -- builtin witnesses and the value table -----------------------------------


_BUILTIN_WITNESSES = {
    3: circulant(5, (1,)),
    4: circulant(8, (1, 4)),
    5: circulant(13, (1, 5)),
}
_BUILTIN_VALUES = {3: 6, 4: 9, 5: 14}

for _n, _g in _BUILTIN_WITNESSES.items():
    _rep = verify_witness(_g, _n)
    if not _rep.ok or _g.order != _BUILTIN_VALUES[_n] - 1:
        raise RamseyError(f"builtin witness for n={_n} failed verification: {_rep}")


def builtin_record(n: int) -> RamseyRecord:
    if n not in _BUILTIN_WITNESSES:
        raise RamseyError(f"no builtin witness for n={n} (have 3, 4, 5)")
    return RamseyRecord(n, _BUILTIN_VALUES[n], _BUILTIN_WITNESSES[n], "builtin")


def relabel_red_prefix(rec: RamseyRecord) -> RamseyRecord:
    """Permute the witness so vertices 0..n-2 are pairwise non-adjacent.

    An independent set of that size always exists in a verified witness
    (otherwise the graph would certify a larger value one step down), so a
    failed search means the input was never verified.
    """
    g = rec.witness
    if g is None or not rec.verified():
        raise RamseyError("relabeling requires a verified record")
    k = rec.n - 1
    if _prefix_independent(g, k):
        return rec
    ind = _find_independent_set(g, k)
    if ind is None:
        raise RamseyError("verified witness lost its independent set?")
    perm = [0] * g.order
    rest = [v for v in range(g.order) if v not in set(ind)]
    for pos, v in enumerate(list(ind) + rest):
        perm[v] = pos
    return RamseyRecord(rec.n, rec.value, g.relabel(perm), rec.source)


def _prefix_independent(g: WitnessGraph, k: int) -> bool:
    return all(not g.has_edge(a, b) for a, b in combinations(range(k), 2))


class TableEntry(NamedTuple):
    value: int
    source: str  # "computed" | "external"


def load_ramsey_table(path: Optional[str] = None) -> dict[int, TableEntry]:
    """The R(n,3) value table: packaged defaults or a user-supplied file."""
    if path is None:
        text = resources.files("orw.data").joinpath(
            "ramsey_table.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    doc = json.loads(text)
    out = {}
    for key, entry in doc["values"].items():
        if isinstance(entry, dict):
            out[int(key)] = TableEntry(int(entry["value"]), entry["source"])
        else:  # a bare number defaults to externally sourced
            out[int(key)] = TableEntry(int(entry), "external")
    return out


def ramsey_value(n: int, table: Optional[dict[int, TableEntry]] = None) -> TableEntry:
    table = load_ramsey_table() if table is None else table
    if n not in table:
        raise RamseyError(f"no R({n},3) value configured; add it to the table")
    return table[n]


# -- JSON -------------------------------------------------------------------


def witness_to_json(rec: RamseyRecord) -> str:
    if rec.witness is None:
        raise RamseyError("record has no witness to serialize")
    return json.dumps({
        "n": rec.n,
        "order": rec.witness.order,
        "edges": sorted([a, b] for a, b in rec.witness.edges),
    }, indent=2)


def witness_from_json(text: str, source: str = "user-file") -> RamseyRecord:
    try:
        doc = json.loads(text)
        g = WitnessGraph.from_pairs(doc["order"], doc["edges"])
        rec = RamseyRecord(int(doc["n"]), g.order + 1, g, source)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise RamseyError(f"malformed witness file: {exc!r}") from exc
    rep = verify_witness(g, rec.n)
    if not rep.ok:
        raise RamseyError(f"witness file fails verification: {rep}")
    return rec
