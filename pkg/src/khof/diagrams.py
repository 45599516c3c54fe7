"""Oriented planar link diagrams and the diagram algebra built on them.

A diagram is combinatorial: crossings name the four incident arcs by their
roles (over/under, in/out) together with a stored sign that pins the local
embedding, and components are explicit ordered arc cycles.  Crossingless
unknot components are carried as a bare count (``free_loops``) since they own
no arcs; they are indexed after the arc-bearing components.

Arc ids are positive integers; component indices are 1-based everywhere in
the public interface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import (
    BadParameters,
    BadSign,
    ComponentOutOfRange,
    DanglingArc,
    InconsistentCycle,
    InputError,
    NotAForest,
)


@dataclass(frozen=True)
class Crossing:
    """A signed crossing; slots name the arcs entering/leaving each strand."""

    over_in: int
    over_out: int
    under_in: int
    under_out: int
    sign: int

    def arcs(self) -> Tuple[int, int, int, int]:
        return (self.over_in, self.over_out, self.under_in, self.under_out)

    def strand_of(self, component_of_arc: Mapping[int, int]) -> Tuple[int, int]:
        """(component of over strand, component of under strand)."""
        return component_of_arc[self.over_in], component_of_arc[self.under_in]


@dataclass(frozen=True)
class OrientedPDDiagram:
    """An oriented link diagram: crossings, component cycles, free loops.

    ``basepoints`` maps a 1-based component index to an arc on that component
    (or 0 when the component is a free loop).
    """

    crossings: Tuple[Crossing, ...] = ()
    components: Tuple[Tuple[int, ...], ...] = ()
    free_loops: int = 0
    basepoints: Tuple[Tuple[int, int], ...] = ()

    # -- basic queries -------------------------------------------------

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def arcs(self) -> List[int]:
        out = sorted({a for cyc in self.components for a in cyc})
        return out

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def positive_negative(self) -> Tuple[int, int]:
        pos = sum(1 for c in self.crossings if c.sign > 0)
        return pos, len(self.crossings) - pos

    def component_of_arc(self) -> Dict[int, int]:
        """Map arc id -> 1-based component index."""
        out: Dict[int, int] = {}
        for ci, cyc in enumerate(self.components, start=1):
            for a in cyc:
                out[a] = ci
        return out

    def basepoint_map(self) -> Dict[int, int]:
        return dict(self.basepoints)

    def with_basepoint(self, component: int, arc: int | None = None) -> "OrientedPDDiagram":
        """Return a copy carrying a basepoint on the given component."""
        if not 1 <= component <= self.n_components:
            raise ComponentOutOfRange(f"component {component} of {self.n_components}")
        if component <= len(self.components):
            cyc = self.components[component - 1]
            if arc is None:
                arc = cyc[0]
            if arc not in cyc:
                raise ComponentOutOfRange(
                    f"arc {arc} is not on component {component}"
                )
        else:
            arc = 0
        bps = dict(self.basepoints)
        bps[component] = arc
        return replace(self, basepoints=tuple(sorted(bps.items())))

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "crossings": [
                {
                    "oi": c.over_in,
                    "oo": c.over_out,
                    "ui": c.under_in,
                    "uo": c.under_out,
                    "sign": c.sign,
                }
                for c in self.crossings
            ],
            "components": [list(cyc) for cyc in self.components],
            "free_loops": self.free_loops,
            "basepoints": {str(k): v for k, v in self.basepoints},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "OrientedPDDiagram":
        try:
            crossings = tuple(
                Crossing(c["oi"], c["oo"], c["ui"], c["uo"], c["sign"])
                for c in data.get("crossings", [])
            )
            components = tuple(tuple(cyc) for cyc in data.get("components", []))
            free_loops = int(data.get("free_loops", 0))
            basepoints = tuple(
                sorted((int(k), int(v)) for k, v in data.get("basepoints", {}).items())
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed diagram JSON: {exc}") from exc
        return cls(crossings, components, free_loops, basepoints)

    @classmethod
    def from_json(cls, text: str) -> "OrientedPDDiagram":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)


def validate(d: OrientedPDDiagram) -> None:
    """Check all diagram invariants, raising on the first violation.

    Raises DanglingArc, InconsistentCycle or BadSign.  The stored sign pins
    which of the two planar configurations the crossing has; only its range
    can be checked combinatorially.
    """
    for idx, c in enumerate(d.crossings):
        if c.sign not in (1, -1):
            raise BadSign(idx, c.sign)

    ins: Dict[int, int] = {}
    outs: Dict[int, int] = {}
    for idx, c in enumerate(d.crossings):
        for a in (c.over_in, c.under_in):
            if a in ins:
                raise DanglingArc(a, f"appears as in-slot at crossings {ins[a]} and {idx}")
            ins[a] = idx
        for a in (c.over_out, c.under_out):
            if a in outs:
                raise DanglingArc(a, f"appears as out-slot at crossings {outs[a]} and {idx}")
            outs[a] = idx

    cycle_arcs = [a for cyc in d.components for a in cyc]
    if len(set(cycle_arcs)) != len(cycle_arcs):
        dups = [a for a in cycle_arcs if cycle_arcs.count(a) > 1]
        raise InconsistentCycle(0, dups[0], "arc listed in two component positions")
    arcset = set(cycle_arcs)
    for a in ins:
        if a not in arcset:
            raise DanglingArc(a, "used by a crossing but not on any component")
    for a in arcset:
        if a not in ins or a not in outs:
            raise DanglingArc(a, "on a component but missing an in- or out-slot")
        if not isinstance(a, int) or a <= 0:
            raise DanglingArc(a, "arc ids must be positive integers")

    # successor map: out-arc -> in-arc through each strand of each crossing
    succ: Dict[int, int] = {}
    for c in d.crossings:
        succ[c.over_in] = c.over_out
        succ[c.under_in] = c.under_out
    for ci, cyc in enumerate(d.components, start=1):
        if not cyc:
            raise InconsistentCycle(ci, 0, "empty component cycle")
        for j, a in enumerate(cyc):
            b = cyc[(j + 1) % len(cyc)]
            if succ.get(a) != b:
                raise InconsistentCycle(ci, a, f"arc {a} does not flow into {b}")

    if d.free_loops < 0:
        raise InconsistentCycle(0, 0, "negative free loop count")
    comp_of = d.component_of_arc()
    for comp, arc in d.basepoints:
        if not 1 <= comp <= d.n_components:
            raise ComponentOutOfRange(f"basepoint component {comp}")
        if comp <= len(d.components):
            if comp_of.get(arc) != comp:
                raise ComponentOutOfRange(f"basepoint arc {arc} not on component {comp}")
        elif arc != 0:
            raise ComponentOutOfRange("free-loop basepoints use arc id 0")


def linking_matrix(d: OrientedPDDiagram) -> Tuple[Tuple[int, ...], ...]:
    """Pairwise linking numbers: half the signed count of inter-component crossings."""
    n = d.n_components
    comp_of = d.component_of_arc()
    twice = [[0] * n for _ in range(n)]
    for c in d.crossings:
        i, j = c.strand_of(comp_of)
        if i != j:
            twice[i - 1][j - 1] += c.sign
            twice[j - 1][i - 1] += c.sign
    for row in twice:
        for v in row:
            if v % 2:
                raise InconsistentCycle(0, 0, "odd inter-component crossing sum")
    return tuple(tuple(v // 2 for v in row) for row in twice)


# ---------------------------------------------------------------------------
# construction helpers


def _diagram_from_passages(
    passages: Sequence[Sequence[Tuple[int, str]]],
    signs: Sequence[int],
    free_loops: int = 0,
) -> OrientedPDDiagram:
    """Build a diagram from per-component crossing passage lists.

    ``passages[k]`` lists, in travel order, the crossings component ``k``
    passes through together with the role ('o' = over, 'u' = under) it plays
    there.  Each crossing index must receive exactly one over and one under
    passage overall.
    """
    slots: List[Dict[str, int]] = [{} for _ in signs]
    components: List[Tuple[int, ...]] = []
    next_arc = 1
    for comp in passages:
        k = len(comp)
        if k == 0:
            raise ValueError("empty passage list; use free_loops instead")
        arcs = list(range(next_arc, next_arc + k))
        next_arc += k
        for j, (ci, role) in enumerate(comp):
            a_in = arcs[j]
            a_out = arcs[(j + 1) % k]
            key_in = "over_in" if role == "o" else "under_in"
            key_out = "over_out" if role == "o" else "under_out"
            if key_in in slots[ci]:
                raise ValueError(f"crossing {ci} receives two {role!r} passages")
            slots[ci][key_in] = a_in
            slots[ci][key_out] = a_out
        components.append(tuple(arcs))
    crossings = []
    for ci, (slot, sign) in enumerate(zip(slots, signs)):
        missing = {"over_in", "over_out", "under_in", "under_out"} - set(slot)
        if missing:
            raise ValueError(f"crossing {ci} is missing slots {sorted(missing)}")
        crossings.append(
            Crossing(slot["over_in"], slot["over_out"], slot["under_in"], slot["under_out"], sign)
        )
    d = OrientedPDDiagram(tuple(crossings), tuple(components), free_loops)
    validate(d)
    return d


def unknot() -> OrientedPDDiagram:
    """The crossingless unknot."""
    return OrientedPDDiagram(free_loops=1)


def unlink(n: int) -> OrientedPDDiagram:
    """The crossingless n-component unlink."""
    if n < 0:
        raise BadParameters("unlink needs n >= 0")
    return OrientedPDDiagram(free_loops=n)


def hopf(sign: int = 1) -> OrientedPDDiagram:
    """The 2-crossing Hopf link diagram with linking number ``sign``."""
    if sign not in (1, -1):
        raise BadParameters("hopf sign must be +1 or -1")
    return _diagram_from_passages(
        [[(0, "o"), (1, "u")], [(0, "u"), (1, "o")]],
        [sign, sign],
    )


def kink(sign: int = 1) -> OrientedPDDiagram:
    """A one-crossing unknot diagram (a single Reidemeister-I kink)."""
    return _diagram_from_passages([[(0, "o"), (0, "u")]], [sign])


@dataclass(frozen=True)
class BraidWord:
    """A braid word: ``letters[i] = k`` means sigma_|k| with the sign of k."""

    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BadParameters("braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise BadParameters(
                    f"letter {x} out of range for {self.strands} strands"
                )

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))


def from_braid_closure(b: BraidWord) -> OrientedPDDiagram:
    """Trace closure of a braid, all strands oriented coherently."""
    l = b.strands
    next_arc = 1

    def fresh() -> int:
        nonlocal next_arc
        a = next_arc
        next_arc += 1
        return a

    start = [fresh() for _ in range(l)]
    cur = list(start)
    raw: List[Tuple[int, int, int, int, int]] = []
    for x in b.letters:
        p = abs(x) - 1
        a, bb = cur[p], cur[p + 1]
        na, nb = fresh(), fresh()
        if x > 0:
            # strand entering at p goes over, exits at p+1
            raw.append((a, nb, bb, na, 1))
        else:
            raw.append((bb, na, a, nb, -1))
        cur[p], cur[p + 1] = na, nb
    # close up: identify each strand's final arc with its initial arc
    rename: Dict[int, int] = {}
    free = 0
    for p in range(l):
        if cur[p] == start[p]:
            free += 1  # strand with no crossings closes to a free loop
        else:
            rename[cur[p]] = start[p]

    def rn(a: int) -> int:
        return rename.get(a, a)

    crossings = [Crossing(rn(oi), rn(oo), rn(ui), rn(uo), s) for oi, oo, ui, uo, s in raw]
    # trace components via successor maps
    succ: Dict[int, int] = {}
    for c in crossings:
        succ[c.over_in] = c.over_out
        succ[c.under_in] = c.under_out
    seen = set()
    components = []
    for a0 in sorted(succ):
        if a0 in seen:
            continue
        cyc = [a0]
        seen.add(a0)
        a = succ[a0]
        while a != a0:
            cyc.append(a)
            seen.add(a)
            a = succ[a]
        components.append(tuple(cyc))
    d = OrientedPDDiagram(tuple(crossings), tuple(components), free)
    d = compact_arcs(d)
    validate(d)
    return d


def trefoil(hand: str = "left") -> OrientedPDDiagram:
    """Standard 3-crossing trefoil diagram as a 2-braid closure."""
    if hand == "left":
        return from_braid_closure(BraidWord(2, (-1, -1, -1)))
    if hand == "right":
        return from_braid_closure(BraidWord(2, (1, 1, 1)))
    raise BadParameters("hand must be 'left' or 'right'")


def l4a1() -> OrientedPDDiagram:
    """The 4-crossing (2,4) torus link as a 2-braid closure (linking number 2)."""
    return from_braid_closure(BraidWord(2, (1, 1, 1, 1)))


# ---------------------------------------------------------------------------
# diagram algebra


def relabel_arcs(d: OrientedPDDiagram, perm: Mapping[int, int]) -> OrientedPDDiagram:
    """Apply an arc-id permutation (must be injective on the diagram's arcs)."""

    def rn(a: int) -> int:
        return perm.get(a, a)

    crossings = tuple(
        Crossing(rn(c.over_in), rn(c.over_out), rn(c.under_in), rn(c.under_out), c.sign)
        for c in d.crossings
    )
    components = tuple(tuple(rn(a) for a in cyc) for cyc in d.components)
    basepoints = tuple((comp, rn(a) if a else 0) for comp, a in d.basepoints)
    out = OrientedPDDiagram(crossings, components, d.free_loops, basepoints)
    validate(out)
    return out


def compact_arcs(d: OrientedPDDiagram) -> OrientedPDDiagram:
    """Relabel arcs to the contiguous range 1..2c preserving order."""
    arcs = d.arcs()
    perm = {a: i + 1 for i, a in enumerate(arcs)}
    return relabel_arcs(d, perm)


def disjoint_union(d1: OrientedPDDiagram, d2: OrientedPDDiagram) -> OrientedPDDiagram:
    """Split union; d2's arcs are relabeled above d1's.

    Component order: d1's arc components, then d2's, then d1's free loops,
    then d2's.
    """
    offset = max(d1.arcs(), default=0)
    shift = {a: a + offset for a in d2.arcs()}
    d2s = relabel_arcs(d2, shift) if shift else d2
    components = d1.components + d2s.components
    crossings = d1.crossings + d2s.crossings
    nc1, nc2 = len(d1.components), len(d2.components)
    bps: Dict[int, int] = {}
    for comp, a in d1.basepoints:
        bps[comp if comp <= nc1 else comp + nc2] = a
    for comp, a in d2s.basepoints:
        if comp <= nc2:
            bps[comp + nc1] = a
        else:
            bps[comp + nc1 + d1.free_loops] = a
    out = OrientedPDDiagram(
        crossings, components, d1.free_loops + d2.free_loops, tuple(sorted(bps.items()))
    )
    validate(out)
    return out


def _rotate_to_end(cycle: Sequence[int], arc: int) -> List[int]:
    i = list(cycle).index(arc)
    return list(cycle[i + 1 :]) + list(cycle[: i + 1])


def connected_sum(
    d1: OrientedPDDiagram,
    c1: int,
    d2: OrientedPDDiagram,
    c2: int,
    arc1: int | None = None,
    arc2: int | None = None,
) -> OrientedPDDiagram:
    """Splice component c1 of d1 to component c2 of d2 along one arc of each.

    The merged component sits at position c1; d2's remaining components are
    appended after d1's.  Connected sum with a crossingless unknot is the
    identity up to component bookkeeping.
    """
    if not 1 <= c1 <= d1.n_components:
        raise ComponentOutOfRange(f"component {c1} of {d1.n_components}")
    if not 1 <= c2 <= d2.n_components:
        raise ComponentOutOfRange(f"component {c2} of {d2.n_components}")
    d1 = replace(d1, basepoints=())
    d2 = replace(d2, basepoints=())

    # summing with a crossingless unknot just absorbs it
    if c1 > len(d1.components):
        return disjoint_union(replace(d1, free_loops=d1.free_loops - 1), d2)
    if c2 > len(d2.components):
        return disjoint_union(d1, replace(d2, free_loops=d2.free_loops - 1))

    offset = max(d1.arcs(), default=0)
    d2s = relabel_arcs(d2, {a: a + offset for a in d2.arcs()})
    cyc1 = d1.components[c1 - 1]
    cyc2 = d2s.components[c2 - 1]
    a1 = arc1 if arc1 is not None else cyc1[0]
    a2 = (arc2 + offset) if arc2 is not None else cyc2[0]
    if a1 not in cyc1:
        raise ComponentOutOfRange(f"arc {arc1} not on component {c1}")
    if a2 not in cyc2:
        raise ComponentOutOfRange(f"arc {arc2} not on component {c2}")

    # cut both arcs and cross-join: a1 now enters the slot a2 entered and
    # vice versa; out-slots are untouched.
    def swap_in(a: int) -> int:
        if a == a1:
            return a2
        if a == a2:
            return a1
        return a

    crossings = tuple(
        Crossing(swap_in(c.over_in), c.over_out, swap_in(c.under_in), c.under_out, c.sign)
        for c in d1.crossings + d2s.crossings
    )
    merged_cycle = tuple(_rotate_to_end(cyc1, a1) + _rotate_to_end(cyc2, a2))
    comps = list(d1.components)
    comps[c1 - 1] = merged_cycle
    comps.extend(cyc for i, cyc in enumerate(d2s.components, start=1) if i != c2)
    out = OrientedPDDiagram(
        crossings, tuple(comps), d1.free_loops + d2.free_loops, ()
    )
    validate(out)
    return out


def mirror(d: OrientedPDDiagram) -> OrientedPDDiagram:
    """Mirror image: swap over/under strands and negate every sign."""
    crossings = tuple(
        Crossing(c.under_in, c.under_out, c.over_in, c.over_out, -c.sign)
        for c in d.crossings
    )
    out = replace(d, crossings=crossings)
    validate(out)
    return out


def reverse_component(d: OrientedPDDiagram, comp: int) -> OrientedPDDiagram:
    """Reverse the orientation of one component and recompute crossing signs.

    Crossings between the reversed component and another flip sign;
    self-crossings of the reversed component keep theirs.
    """
    if not 1 <= comp <= d.n_components:
        raise ComponentOutOfRange(f"component {comp} of {d.n_components}")
    if comp > len(d.components):
        return d  # reversing a free loop is invisible
    cyc = d.components[comp - 1]
    arcset = set(cyc)
    crossings = []
    for c in d.crossings:
        over_in, over_out, under_in, under_out, sign = (
            c.over_in,
            c.over_out,
            c.under_in,
            c.under_out,
            c.sign,
        )
        over_on = c.over_in in arcset
        under_on = c.under_in in arcset
        if over_on:
            over_in, over_out = over_out, over_in
        if under_on:
            under_in, under_out = under_out, under_in
        if over_on != under_on:
            sign = -sign
        crossings.append(Crossing(over_in, over_out, under_in, under_out, sign))
    comps = list(d.components)
    comps[comp - 1] = tuple(reversed(cyc))
    out = OrientedPDDiagram(tuple(crossings), tuple(comps), d.free_loops, d.basepoints)
    validate(out)
    return out


def switch_crossing(d: OrientedPDDiagram, idx: int) -> OrientedPDDiagram:
    """Exchange the over and under strands of one crossing (a crossing change)."""
    c = d.crossings[idx]
    swapped = Crossing(c.under_in, c.under_out, c.over_in, c.over_out, -c.sign)
    crossings = d.crossings[:idx] + (swapped,) + d.crossings[idx + 1 :]
    out = replace(d, crossings=crossings)
    validate(out)
    return out


def _trace_cycles(succ: Mapping[int, int]) -> List[Tuple[int, ...]]:
    seen = set()
    cycles = []
    for a0 in sorted(succ):
        if a0 in seen:
            continue
        cyc = [a0]
        seen.add(a0)
        a = succ[a0]
        while a != a0:
            cyc.append(a)
            seen.add(a)
            a = succ[a]
        cycles.append(tuple(cyc))
    return cycles


def _collapse_cycle(cyc: Sequence[int]) -> Tuple[int, ...]:
    """Drop cyclically-consecutive duplicates."""
    out = [a for i, a in enumerate(cyc) if a != cyc[i - 1]] or [cyc[0]]
    return tuple(out)


def smooth_crossing(d: OrientedPDDiagram, idx: int) -> OrientedPDDiagram:
    """Oriented smoothing of one crossing (over_in -> under_out, under_in -> over_out).

    Merges two components into one, or splits one into two.  Basepoints are
    dropped.
    """
    c = d.crossings[idx]
    rest = [x for i, x in enumerate(d.crossings) if i != idx]

    # rewire the successor map through the smoothed site
    succ: Dict[int, int] = {}
    for x in d.crossings:
        succ[x.over_in] = x.over_out
        succ[x.under_in] = x.under_out
    succ[c.over_in] = c.under_out
    succ[c.under_in] = c.over_out
    cycles = _trace_cycles(succ)

    # the smoothed joints no longer pass a crossing, so each joint pair
    # becomes one arc
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

    union(c.over_in, c.under_out)
    union(c.under_in, c.over_out)

    new_cross = tuple(
        Crossing(find(x.over_in), find(x.over_out), find(x.under_in), find(x.under_out), x.sign)
        for x in rest
    )
    in_use = {a for x in new_cross for a in x.arcs()}
    comps = []
    free = d.free_loops
    for cyc in cycles:
        mapped = _collapse_cycle([find(a) for a in cyc])
        if any(a in in_use for a in mapped):
            comps.append(mapped)
        else:
            free += 1
    out = OrientedPDDiagram(new_cross, tuple(comps), free, ())
    out = compact_arcs(out)
    validate(out)
    return out


# ---------------------------------------------------------------------------
# Reidemeister I/II simplification


def _rebuild_after_removal(
    d: OrientedPDDiagram,
    removed: Iterable[int],
    rewires: Iterable[Tuple[int, int]],
    dropped_arcs: Iterable[int],
) -> OrientedPDDiagram:
    """Remove crossings, rewire strand flow (a -> b entries), drop loop arcs."""
    removed = set(removed)
    dropped = set(dropped_arcs)
    rest = [x for i, x in enumerate(d.crossings) if i not in removed]

    succ: Dict[int, int] = {}
    for i, x in enumerate(d.crossings):
        if i not in removed:
            succ[x.over_in] = x.over_out
            succ[x.under_in] = x.under_out
    for a, b in rewires:
        succ[a] = b

    parent: Dict[int, int] = {}

    def find(a: int) -> int:
        while parent.get(a, a) != a:
            parent[a] = parent.get(parent[a], parent[a])
            a = parent[a]
        return a

    for a, b in rewires:
        if a not in dropped and b not in dropped:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    new_cross = tuple(
        Crossing(find(x.over_in), find(x.over_out), find(x.under_in), find(x.under_out), x.sign)
        for x in rest
    )
    in_use = {a for x in new_cross for a in x.arcs()}
    comps = []
    free = d.free_loops
    for cyc in _trace_cycles(succ):
        if any(a in dropped for a in cyc):
            # loop arcs are absorbed, not traced
            cyc = tuple(a for a in cyc if a not in dropped)
            if not cyc:
                free += 1
                continue
        mapped = _collapse_cycle([find(a) for a in cyc])
        if any(a in in_use for a in mapped):
            comps.append(mapped)
        else:
            free += 1
    out = OrientedPDDiagram(new_cross, tuple(comps), free, ())
    out = compact_arcs(out)
    validate(out)
    return out


def _find_r1(d: OrientedPDDiagram) -> Tuple[int, str] | None:
    for i, c in enumerate(d.crossings):
        if c.over_out == c.under_in:
            return i, "ou"
        if c.under_out == c.over_in:
            return i, "uo"
    return None


def _find_r2(d: OrientedPDDiagram) -> Tuple[int, int] | None:
    """A pair of crossings joined by an over-over arc and an under-under arc,
    with the same strand on top at both and opposite signs."""
    by_over_in = {c.over_in: i for i, c in enumerate(d.crossings)}
    by_under_in = {c.under_in: i for i, c in enumerate(d.crossings)}
    for i, c in enumerate(d.crossings):
        j = by_over_in.get(c.over_out)
        if j is None or j == i:
            continue
        c2 = d.crossings[j]
        if c.sign != -c2.sign:
            continue
        if c.under_out == c2.under_in or c2.under_out == c.under_in:
            return i, j
    return None


def _remove_r1(d: OrientedPDDiagram, idx: int, kind: str) -> OrientedPDDiagram:
    c = d.crossings[idx]
    if kind == "ou":
        loop = c.over_out  # == under_in
        return _rebuild_after_removal(d, [idx], [(c.over_in, c.under_out)], [loop])
    loop = c.under_out  # == over_in
    return _rebuild_after_removal(d, [idx], [(c.under_in, c.over_out)], [loop])


def _remove_r2(d: OrientedPDDiagram, i: int, j: int) -> OrientedPDDiagram:
    ci, cj = d.crossings[i], d.crossings[j]
    # over strand flows i -> j through alpha
    alpha = ci.over_out
    rewires = [(ci.over_in, cj.over_out)]
    if ci.under_out == cj.under_in:
        beta = ci.under_out
        rewires.append((ci.under_in, cj.under_out))
    else:
        beta = cj.under_out
        rewires.append((cj.under_in, ci.under_out))
    return _rebuild_after_removal(d, [i, j], rewires, [alpha, beta])


def simplify(d: OrientedPDDiagram) -> OrientedPDDiagram:
    """Greedy Reidemeister I and II reduction until neither move applies.

    Only reducing moves are used, so the crossing count never increases and
    all link invariants are unchanged.  Basepoints are dropped.
    """
    d = replace(d, basepoints=())
    while True:
        hit = _find_r1(d)
        if hit is not None:
            d = _remove_r1(d, *hit)
            continue
        pair = _find_r2(d)
        if pair is not None:
            d = _remove_r2(d, *pair)
            continue
        return d


# ---------------------------------------------------------------------------
# forests of unknots


@dataclass(frozen=True)
class ForestGraph:
    """A simple graph with optionally signed edges (clasp signs, default +1)."""

    vertex_count: int
    edges: Tuple[Tuple[int, int, int], ...] = ()

    @classmethod
    def from_edges(
        cls, vertex_count: int, edges: Iterable[Tuple[int, ...]]
    ) -> "ForestGraph":
        norm = []
        seen = set()
        for e in edges:
            if len(e) == 2:
                i, j, s = e[0], e[1], 1
            elif len(e) == 3:
                i, j, s = e
            else:
                raise BadParameters(f"edge {e!r} must be (i, j) or (i, j, sign)")
            if not (1 <= i <= vertex_count and 1 <= j <= vertex_count):
                raise BadParameters(f"edge {e!r} out of range")
            if i == j:
                raise BadParameters(f"loop edge {e!r} not allowed in a simple graph")
            if s not in (1, -1):
                raise BadParameters(f"edge sign must be +1 or -1 in {e!r}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise BadParameters(f"duplicate edge {key}")
            seen.add(key)
            norm.append((key[0], key[1], s))
        return cls(vertex_count, tuple(sorted(norm)))

    def neighbors(self, v: int) -> List[Tuple[int, int]]:
        out = []
        for i, j, s in self.edges:
            if i == v:
                out.append((j, s))
            elif j == v:
                out.append((i, s))
        return sorted(out)

    def find_cycle(self) -> Tuple[int, ...] | None:
        """A vertex cycle if one exists, else None (so acyclic <=> forest)."""
        color: Dict[int, int] = {}
        parent: Dict[int, int] = {}
        for start in range(1, self.vertex_count + 1):
            if start in color:
                continue
            stack = [(start, 0)]
            color[start] = 1
            while stack:
                v, pi = stack[-1]
                nbrs = self.neighbors(v)
                if pi < len(nbrs):
                    stack[-1] = (v, pi + 1)
                    w = nbrs[pi][0]
                    if w == parent.get(v):
                        continue
                    if w in color:
                        # walk back from v to w
                        cyc = [v]
                        x = v
                        while x != w:
                            x = parent[x]
                            cyc.append(x)
                        return tuple(reversed(cyc))
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, 0))
                else:
                    stack.pop()
        return None

    def is_forest(self) -> bool:
        return self.find_cycle() is None

    def tree_components(self) -> List[List[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = set()
        comps = []
        for start in range(1, self.vertex_count + 1):
            if start in seen:
                continue
            todo = [start]
            seen.add(start)
            comp = []
            while todo:
                v = todo.pop()
                comp.append(v)
                for w, _ in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        todo.append(w)
            comps.append(sorted(comp))
        return comps


def forest_vertex_components(g: ForestGraph) -> Dict[int, int]:
    """Vertex -> 1-based component index of forest_link(g).

    Crossing-bearing components come first (trees in least-root order, DFS
    discovery order within a tree); isolated vertices trail as free loops.
    """
    trees = g.tree_components()
    order: List[int] = []
    isolated: List[int] = []
    for comp in trees:
        if len(comp) == 1:
            isolated.append(comp[0])
            continue
        root = comp[0]
        seen = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            for w, _ in reversed(g.neighbors(v)):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    out = {v: i + 1 for i, v in enumerate(order)}
    for k, v in enumerate(isolated):
        out[v] = len(order) + 1 + k
    return out


def forest_link(g: ForestGraph) -> OrientedPDDiagram:
    """The link of a forest: an unknot per vertex, a Hopf clasp per edge.

    Trees are embedded by depth-first traversal from their least vertex and
    joined by disjoint union.  Per-edge clasp signs set the linking numbers.
    Isolated vertices become crossingless loops, indexed after all
    crossing-bearing components; see forest_vertex_components for the map.
    """
    cyc = g.find_cycle()
    if cyc is not None:
        raise NotAForest(cyc)
    sign_of = {}
    for i, j, s in g.edges:
        sign_of[(i, j)] = s
        sign_of[(j, i)] = s

    trees = g.tree_components()
    diagram: OrientedPDDiagram | None = None
    n_isolated = 0
    for comp in trees:
        if len(comp) == 1:
            n_isolated += 1
            continue
        root = comp[0]
        tree_d: OrientedPDDiagram | None = None
        local: Dict[int, int] = {}
        seen = {root}
        stack = [root]
        parent: Dict[int, Tuple[int, int]] = {}
        order = []
        while stack:
            x = stack.pop()
            order.append(x)
            for w, s in reversed(g.neighbors(x)):
                if w not in seen:
                    seen.add(w)
                    parent[w] = (x, s)
                    stack.append(w)
        dfs_edges = [(parent[w][0], w, parent[w][1]) for w in order[1:]]
        for v, w, s in dfs_edges:
            if tree_d is None:
                tree_d = hopf(s)
                local[v] = 1
                local[w] = 2
            else:
                tree_d = connected_sum(tree_d, local[v], hopf(s), 1)
                local[w] = tree_d.n_components
        diagram = tree_d if diagram is None else disjoint_union(diagram, tree_d)
    if diagram is None:
        diagram = OrientedPDDiagram()
    diagram = replace(diagram, free_loops=diagram.free_loops + n_isolated)
    validate(diagram)
    return diagram


# ---------------------------------------------------------------------------
# the cycle-of-unknots family with a twist region


def path_graph(n: int) -> ForestGraph:
    """The path tree 1-2-...-n with positive edges."""
    return ForestGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def _linear_chain(n: int) -> OrientedPDDiagram:
    """Chain of n positively-clasped circles embedded in a row, so that the
    two end circles border a common face (unlike the forest_link embedding,
    which may nest)."""
    d = hopf(1)
    for k in range(2, n):
        d = connected_sum(d, k, hopf(1), 1, arc1=d.components[k - 1][-1])
    return d


def _twist_packs(d, a, b, count: int, a_over_first: bool):
    """Stack full-twist clasp packs between two antiparallel strands,
    re-locating the insertion site as arcs get subdivided."""
    from .faces import clasp_insert
    from .errors import DiagramError

    cand_a, cand_b = [a], [b]
    for _ in range(count):
        for x in cand_a:
            hit = None
            for y in cand_b:
                try:
                    hit = clasp_insert(d, x, y, a_over_first)
                    break
                except DiagramError:
                    continue
            if hit is not None:
                break
        if hit is None:
            raise DiagramError("no twist-pack site between the bridge strands")
        d, na, nb = hit
        cand_a = [na] + cand_a
        cand_b = [nb] + cand_b
    return d


def luv_diagram(u: int, v: int) -> OrientedPDDiagram:
    """The u-component cycle-of-unknots link with a v-crossing twist region.

    Built by closing a chain of u+1 positively-clasped circles into a cycle:
    for even v the two end circles are band-fused and |v|/2 full twists are
    inserted between the bridge strands; for odd v the ends are joined
    through a single braid-generator crossing and (|v|-1)/2 further twists.
    All senses are pinned by calibration against the family's known Jones
    polynomials and ranks.  Components 1..u-1 are the chain circles in
    order; component u closes the cycle.
    """
    if u < 3:
        raise BadParameters("the cycle family needs u >= 3")
    from .faces import cross_insert, fuse_components, permute_components
    from .errors import DiagramError

    chain = _linear_chain(u + 1)
    if v % 2 == 0:
        d, a, b = fuse_components(chain, 1, u + 1)
        if v:
            d = _twist_packs(d, a, b, abs(v) // 2, a_over_first=v > 0)
    else:
        chain = reverse_component(chain, 1)
        a_over = v < 0  # junction sense: True lands on v = -1, False on +1
        d = None
        for x in chain.components[0]:
            for y in chain.components[u]:
                try:
                    d, na, nb = cross_insert(chain, x, y, a_over)
                    break
                except DiagramError:
                    continue
            if d is not None:
                break
        if d is None:
            raise DiagramError("no junction site on the chain")
        extra = (abs(v) - 1) // 2
        if extra:
            d = _twist_packs(d, x, nb, extra, a_over_first=v < 0)
    # the merged band sits at position 1; move it behind the chain circles
    d = permute_components(d, list(range(2, u + 1)) + [1])
    return compact_arcs(d)
