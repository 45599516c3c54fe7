"""Forest-of-unknots classification from computed rank and linking data.

A diagram whose mod-2 homology rank is 2^n and whose pairwise linking
numbers are all 0 or +-1 with an acyclic unit-linking graph is consistent
with the forest of unknots on that graph.  The other outcomes are reported
as evidence: a rank above the 2^n floor, a linking number of magnitude
over 1, or a cycle in the unit-linking graph (the latter two cannot occur
at minimal rank, so they witness inconsistent input data).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .diagrams import ForestGraph, OrientedPDDiagram, linking_matrix, validate
from .errors import EmptySelection
from .khovanov import DEFAULT_BUDGET, kh


@dataclass(frozen=True)
class ForestOfUnknots:
    """Rank and linking data consistent with the forest on this graph."""

    graph: ForestGraph

    def to_json_dict(self) -> dict:
        return {
            "kind": "ForestOfUnknots",
            "vertices": self.graph.vertex_count,
            "edges": [list(e) for e in self.graph.edges],
        }


@dataclass(frozen=True)
class NotMinimalRank:
    rank: int
    bound: int

    def to_json_dict(self) -> dict:
        return {"kind": "NotMinimalRank", "rank": self.rank, "bound": self.bound}


@dataclass(frozen=True)
class CycleWitness:
    """A shortest cycle in the unit-linking graph (length >= 3)."""

    cycle: Tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"kind": "CycleWitness", "cycle": list(self.cycle)}


@dataclass(frozen=True)
class NonUnitLinking:
    pair: Tuple[int, int]
    value: int

    def to_json_dict(self) -> dict:
        return {"kind": "NonUnitLinking", "pair": list(self.pair), "value": self.value}


Classification = ForestOfUnknots | NotMinimalRank | CycleWitness | NonUnitLinking


def _shortest_cycle(n: int, adj: Dict[int, Set[int]]) -> Tuple[int, ...]:
    """Lexicographically least among the shortest cycles, as a vertex tuple."""
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for start in range(1, n + 1):
        # BFS from start; a cycle through start closes when two branches meet
        parent = {start: 0}
        depth = {start: 0}
        queue = [start]
        while queue:
            nxt = []
            for v in queue:
                for w in sorted(adj[v]):
                    if w == parent[v]:
                        continue
                    if w in depth:
                        # walk both branches back to the root
                        path_v, x = [v], v
                        while x != start:
                            x = parent[x]
                            path_v.append(x)
                        path_w, x = [w], w
                        while x != start:
                            x = parent[x]
                            path_w.append(x)
                        cyc = list(reversed(path_v)) + path_w[:-1]
                        if len(set(cyc)) != len(cyc):
                            continue  # branches overlap: not a simple cycle
                        length = len(cyc)
                        for cand in _cycle_rotations(cyc):
                            if best is None or (length, cand) < (best[0] if best is None else (len(best[1]), best[1]))[0:2] or (length, cand) < (len(best[1]), best[1]):
                                best = (length, cand)
                    else:
                        parent[w] = v
                        depth[w] = depth[v] + 1
                        nxt.append(w)
            queue = nxt
    assert best is not None
    return best[1]


def _cycle_rotations(cyc: Sequence[int]) -> List[Tuple[int, ...]]:
    """All rotations of the cycle in both directions."""
    out = []
    n = len(cyc)
    for rev in (list(cyc), list(reversed(cyc))):
        for i in range(n):
            out.append(tuple(rev[i:] + rev[:i]))
    return out


def classify(d: OrientedPDDiagram, budget: int = DEFAULT_BUDGET) -> Classification:
    """Forest-of-unknots decision from the mod-2 rank and the linking matrix.

    Minimal rank plus unit linking numbers on an acyclic graph is the
    forest-consistent outcome; any other finding is returned as the reason.
    """
    validate(d)
    n = d.n_components
    rank = kh(d, "F2", budget).total_rank()
    if rank != 1 << n:
        return NotMinimalRank(rank, 1 << n)
    lk = linking_matrix(d)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(lk[i][j]) > 1:
                return NonUnitLinking((i + 1, j + 1), lk[i][j])
    edges = [
        (i + 1, j + 1, lk[i][j])
        for i in range(n)
        for j in range(i + 1, n)
        if lk[i][j] != 0
    ]
    graph = ForestGraph.from_edges(n, edges)
    if graph.is_forest():
        return ForestOfUnknots(graph)
    adj: Dict[int, Set[int]] = {v: set() for v in range(1, n + 1)}
    for i, j, _ in edges:
        adj[i].add(j)
        adj[j].add(i)
    return CycleWitness(_shortest_cycle(n, adj))


def sublink(d: OrientedPDDiagram, comps: Sequence[int]) -> OrientedPDDiagram:
    """Delete all components outside the selection, reconnecting the kept
    strands through the removed crossings.

    Kept components that lose every crossing become crossingless loops.
    Selection indices are 1-based; the kept components keep their relative
    order.  Basepoints are dropped.
    """
    validate(d)
    keep = sorted(set(comps))
    if not keep:
        raise EmptySelection("sublink needs at least one component")
    for c in keep:
        if not 1 <= c <= d.n_components:
            raise EmptySelection(f"component {c} of {d.n_components}")
    keepset = set(keep)
    comp_of = d.component_of_arc()

    parent: Dict[int, int] = {}

    def find(a: int) -> int:
        while parent.get(a, a) != a:
            parent[a] = parent.get(parent[a], parent[a])
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    kept_crossings = []
    for c in d.crossings:
        over_kept = comp_of[c.over_in] in keepset
        under_kept = comp_of[c.under_in] in keepset
        if over_kept and under_kept:
            kept_crossings.append(c)
        elif over_kept:
            union(c.over_in, c.over_out)
        elif under_kept:
            union(c.under_in, c.under_out)

    from .diagrams import Crossing, _collapse_cycle, compact_arcs

    new_cross = tuple(
        Crossing(find(c.over_in), find(c.over_out), find(c.under_in), find(c.under_out), c.sign)
        for c in kept_crossings
    )
    in_use = {a for c in new_cross for a in c.arcs()}
    cycles = []
    free = 0
    for ci, cyc in enumerate(d.components, start=1):
        if ci not in keepset:
            continue
        mapped = _collapse_cycle([find(a) for a in cyc])
        if any(a in in_use for a in mapped):
            cycles.append(mapped)
        else:
            free += 1
    free += sum(1 for c in keep if c > len(d.components))
    out = OrientedPDDiagram(new_cross, tuple(cycles), free, ())
    out = compact_arcs(out)
    validate(out)
    return out
