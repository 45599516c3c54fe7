"""Face tracing for planar diagrams, and face-guided surgery.

The stored crossing signs pin a rotation system (the counterclockwise order
of the four arc-ends around each crossing), so faces are recoverable and
planarity is checkable via Euler's formula.  Surgeries that need an actual
planar move (band-fusing two components, inserting a crossing between two
strands) locate a shared face first, which keeps every constructed diagram
honestly planar and derives the new crossing signs instead of guessing them.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Dict, List, Optional, Tuple

from .diagrams import Crossing, OrientedPDDiagram, _rotate_to_end, compact_arcs, validate
from .errors import DiagramError

# a dart is (arc, dir): dir +1 walks along the arc's orientation
Dart = Tuple[int, int]


def _rotation_ends(c: Crossing) -> List[Tuple[int, str]]:
    """Arc-ends in counterclockwise order; 'h' = head (enters), 't' = tail."""
    if c.sign > 0:
        return [
            (c.under_in, "h"),
            (c.over_out, "t"),
            (c.under_out, "t"),
            (c.over_in, "h"),
        ]
    return [
        (c.under_in, "h"),
        (c.over_in, "h"),
        (c.under_out, "t"),
        (c.over_out, "t"),
    ]


def trace_faces(d: OrientedPDDiagram) -> List[List[Dart]]:
    """Faces of the 4-valent map as dart orbits (free loops are ignored)."""
    head_at: Dict[int, Tuple[int, int]] = {}
    tail_at: Dict[int, Tuple[int, int]] = {}
    rotations = []
    for ci, c in enumerate(d.crossings):
        rot = _rotation_ends(c)
        rotations.append(rot)
        for k, (a, kind) in enumerate(rot):
            if kind == "h":
                head_at[a] = (ci, k)
            else:
                tail_at[a] = (ci, k)

    def next_dart(dart: Dart) -> Dart:
        a, direction = dart
        ci, k = head_at[a] if direction > 0 else tail_at[a]
        b, kind = rotations[ci][(k - 1) % 4]
        return (b, 1) if kind == "t" else (b, -1)

    faces: List[List[Dart]] = []
    seen = set()
    for a in sorted(head_at):
        for direction in (1, -1):
            start = (a, direction)
            if start in seen:
                continue
            face = [start]
            seen.add(start)
            cur = next_dart(start)
            while cur != start:
                face.append(cur)
                seen.add(cur)
                cur = next_dart(cur)
            faces.append(face)
    return faces


def _crossing_graph_components(d: OrientedPDDiagram) -> int:
    """Connected components of the crossing graph (arcs as edges)."""
    n = len(d.crossings)
    if n == 0:
        return 0
    where: Dict[int, List[int]] = {}
    for i, c in enumerate(d.crossings):
        for a in c.arcs():
            where.setdefault(a, []).append(i)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for members in where.values():
        for other in members[1:]:
            ra, rb = find(members[0]), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return len({find(i) for i in range(n)})


def is_planar(d: OrientedPDDiagram) -> bool:
    """Euler check: faces == crossings + 1 + connected components."""
    c = len(d.crossings)
    if c == 0:
        return True
    return len(trace_faces(d)) == c + 1 + _crossing_graph_components(d)


def _find_shared_face(
    d: OrientedPDDiagram,
    arcs_a: List[int],
    arcs_b: List[int],
    same_dir: Optional[bool],
) -> Optional[Tuple[Dart, Dart]]:
    """A dart pair (one from each arc set) on a common face.

    same_dir=True requires equal dart directions (needed for a coherent
    band fusion); None accepts any pair.
    """
    set_a, set_b = set(arcs_a), set(arcs_b)
    for face in trace_faces(d):
        da = [x for x in face if x[0] in set_a]
        db = [x for x in face if x[0] in set_b]
        for xa in da:
            for xb in db:
                if xa[0] == xb[0]:
                    continue
                if same_dir is None or (xa[1] == xb[1]) == same_dir:
                    return xa, xb
    return None


def fuse_components(
    d: OrientedPDDiagram, comp_a: int, comp_b: int
) -> Tuple[OrientedPDDiagram, int, int]:
    """Join two components by a flat oriented band through a shared face.

    Returns (diagram, bridge_arc_a, bridge_arc_b); the merged cycle replaces
    component comp_a and comp_b's slot is removed.  Raises DiagramError when
    no face supports a coherent band.
    """
    cyc_a = d.components[comp_a - 1]
    cyc_b = d.components[comp_b - 1]
    hit = _find_shared_face(d, list(cyc_a), list(cyc_b), same_dir=True)
    if hit is None:
        raise DiagramError(
            f"components {comp_a} and {comp_b} share no face for a band fusion"
        )
    (a, _), (b, _) = hit

    def swap_in(x: int) -> int:
        if x == a:
            return b
        if x == b:
            return a
        return x

    crossings = tuple(
        Crossing(swap_in(c.over_in), c.over_out, swap_in(c.under_in), c.under_out, c.sign)
        for c in d.crossings
    )
    merged = tuple(_rotate_to_end(cyc_a, a) + _rotate_to_end(cyc_b, b))
    comps = [
        merged if i == comp_a else cyc
        for i, cyc in enumerate(d.components, start=1)
        if i != comp_b
    ]
    out = OrientedPDDiagram(crossings, tuple(comps), d.free_loops, ())
    validate(out)
    return out, a, b


def _retrace(crossings, free_loops: int) -> OrientedPDDiagram:
    succ: Dict[int, int] = {}
    for c in crossings:
        succ[c.over_in] = c.over_out
        succ[c.under_in] = c.under_out
    seen = set()
    comps = []
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
        comps.append(tuple(cyc))
    out = OrientedPDDiagram(tuple(crossings), tuple(comps), free_loops, ())
    validate(out)
    return out


def cross_insert(
    d: OrientedPDDiagram, arc_a: int, arc_b: int, a_over: bool
) -> Tuple[OrientedPDDiagram, int, int]:
    """Insert a braid-generator crossing between two parallel strands.

    The strands must bound a common face with parallel orientations there
    (opposite dart directions).  Each strand's continuation past the crossing
    takes over the other's old course, so the move merges two components or
    splits one, exactly like a 2-braid generator dropped into two adjacent
    lanes.  The sign is forced by the face geometry and the over choice.
    Returns (diagram, new_arc_a, new_arc_b).
    """
    hit = _find_shared_face(d, [arc_a], [arc_b], same_dir=False)
    if hit is None:
        raise DiagramError(
            f"arcs {arc_a} and {arc_b} have no common face with parallel strands"
        )
    (a, da), (b, db) = hit
    sign = db if a_over else da

    nxt = max(d.arcs(), default=0)
    a2, b2 = nxt + 1, nxt + 2

    # exchange wiring: a's continuation a2 enters b's old head slot
    def retarget_in(x: int) -> int:
        if x == a:
            return b2
        if x == b:
            return a2
        return x

    crossings = [
        Crossing(retarget_in(c.over_in), c.over_out, retarget_in(c.under_in), c.under_out, c.sign)
        for c in d.crossings
    ]
    if a_over:
        crossings.append(Crossing(a, a2, b, b2, sign))
    else:
        crossings.append(Crossing(b, b2, a, a2, sign))
    return _retrace(crossings, d.free_loops), a2, b2


def clasp_insert(
    d: OrientedPDDiagram, arc_a: int, arc_b: int, a_over_first: bool
) -> Tuple[OrientedPDDiagram, int, int]:
    """Hook two antiparallel strands into a clasp (two equal-sign crossings).

    The strands must bound a common face with antiparallel orientations
    (equal dart directions); strand a bulges across b and back, passing over
    at its first crossing when a_over_first.  Component structure is
    unchanged; a full twist is added between the strands.  Returns
    (diagram, continuation_of_a, continuation_of_b) past the clasp.
    """
    hit = _find_shared_face(d, [arc_a], [arc_b], same_dir=True)
    if hit is None:
        raise DiagramError(
            f"arcs {arc_a} and {arc_b} have no common face with antiparallel strands"
        )
    (a, da), (b, db) = hit
    sign = da if a_over_first else -da

    nxt = max(d.arcs(), default=0)
    a2, a3, b2, b3 = nxt + 1, nxt + 2, nxt + 3, nxt + 4

    # both strands keep their courses; b meets a's second crossing first
    def retarget_in(x: int) -> int:
        if x == a:
            return a3
        if x == b:
            return b3
        return x

    crossings = [
        Crossing(retarget_in(c.over_in), c.over_out, retarget_in(c.under_in), c.under_out, c.sign)
        for c in d.crossings
    ]
    if a_over_first:
        crossings.append(Crossing(a, a2, b2, b3, sign))   # X1
        crossings.append(Crossing(b, b2, a2, a3, sign))   # X2
    else:
        crossings.append(Crossing(b2, b3, a, a2, sign))   # X1
        crossings.append(Crossing(a2, a3, b, b2, sign))   # X2
    return _retrace(crossings, d.free_loops), a3, b3


def permute_components(d: OrientedPDDiagram, order: List[int]) -> OrientedPDDiagram:
    """Reorder arc-bearing components; order[i] is the old 1-based index."""
    comps = tuple(d.components[i - 1] for i in order)
    out = replace(d, components=comps, basepoints=())
    validate(out)
    return out
