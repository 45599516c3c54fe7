"""Khovanov homology from the cube of resolutions.

The complex is graded by (h, q) with h = r - n_minus and
q = (#v+ - #v-) + r + n_plus - 2 n_minus, where r is the weight of the
resolution vertex.  Over Z/2 each graded block is reduced by word-packed
GF(2) elimination; over Z the blocks go through Smith normal form, which
also yields the torsion summands.  The reduced variant fixes the label of
the circle through the basepoint to v- and shifts q up by one, so the
reduced unknot sits at (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .diagrams import ForestGraph, OrientedPDDiagram, linking_matrix, validate
from .errors import (
    BadBasepoint,
    ComponentCountMismatch,
    CrossingBudgetExceeded,
    NotAForest,
)
from .gf2 import gf2_rank_sorted
from .jones import _smoothing_pairs
from .polynomials import BiLaurent
from .snf import snf

DEFAULT_BUDGET = 16


@dataclass
class BigradedRanks:
    """Free ranks and torsion of a bigraded homology, indexed by (h, q)."""

    coeff: str  # "F2" or "Z"
    free: Dict[Tuple[int, int], int] = field(default_factory=dict)
    torsion: Dict[Tuple[int, int], Tuple[int, ...]] = field(default_factory=dict)

    def total_rank(self) -> int:
        return sum(self.free.values())

    def poincare(self) -> BiLaurent:
        """Sum of rank * t^h q^q as a two-variable polynomial (x=t, y=q)."""
        return BiLaurent({(h, q): r for (h, q), r in self.free.items() if r})

    def shifted(self, dh: int, dq: int) -> "BigradedRanks":
        return BigradedRanks(
            self.coeff,
            {(h + dh, q + dq): r for (h, q), r in self.free.items()},
            {(h + dh, q + dq): t for (h, q), t in self.torsion.items()},
        )

    def to_json_dict(self) -> dict:
        return {
            "coeff": self.coeff,
            "free": [[h, q, r] for (h, q), r in sorted(self.free.items())],
            "torsion": [
                [h, q, order]
                for (h, q), orders in sorted(self.torsion.items())
                for order in orders
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BigradedRanks":
        free = {(h, q): r for h, q, r in data.get("free", [])}
        torsion: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        for h, q, order in data.get("torsion", []):
            torsion[(h, q)] = torsion.get((h, q), ()) + (order,)
        return cls(data["coeff"], free, torsion)


def internal_ranks(b: BigradedRanks) -> Dict[int, int]:
    """Collapse the bigrading by the internal grading l = h - q (free ranks)."""
    out: Dict[int, int] = {}
    for (h, q), r in b.free.items():
        if r:
            out[h - q] = out.get(h - q, 0) + r
    return out


def _prime_power_factors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            pk = 1
            while n % d == 0:
                n //= d
                pk *= d
            out.append(pk)
        d += 1
    if n > 1:
        out.append(n)
    return out


class _Cube:
    """Per-diagram resolution-cube scaffolding shared by kh and khr."""

    def __init__(self, d: OrientedPDDiagram):
        validate(d)
        self.d = d
        self.crossings = d.crossings
        self.n = len(d.crossings)
        self.arcs = d.arcs()
        self.arc_index = {a: i for i, a in enumerate(self.arcs)}
        self.n_arcs = len(self.arcs)
        self.free = d.free_loops
        pos = sum(1 for c in d.crossings if c.sign > 0)
        self.n_plus, self.n_minus = pos, self.n - pos
        # pairings[i] = (joins at bit 0, joins at bit 1); the 0-resolution is
        # the A-smoothing for every crossing, the sign enters via n+/n-.
        self.pairings = [_smoothing_pairs(c) for c in d.crossings]
        self._circ_cache: List[Optional[Tuple[List[int], int]]] = [None] * (1 << self.n)

    def circles(self, r: int) -> Tuple[List[int], int]:
        """(arc -> circle index array, number of circles incl. free loops).

        Circle indices sort arc-circles by least arc, then free loops.
        """
        cached = self._circ_cache[r]
        if cached is not None:
            return cached
        parent = list(range(self.n_arcs))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ai = self.arc_index
        for i in range(self.n):
            for a, b in self.pairings[i][(r >> i) & 1]:
                ra, rb = find(ai[a]), find(ai[b])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        reps: List[int] = []
        rep_pos: Dict[int, int] = {}
        circ = [0] * self.n_arcs
        for x in range(self.n_arcs):
            rx = find(x)
            if rx not in rep_pos:
                rep_pos[rx] = len(reps)
                reps.append(rx)
            circ[x] = rep_pos[rx]
        result = (circ, len(reps) + self.free)
        self._circ_cache[r] = result
        return result


def _remove_bit(m: int, p: int) -> int:
    return ((m >> (p + 1)) << p) | (m & ((1 << p) - 1))


def _insert_bit(m: int, p: int, b: int) -> int:
    return ((m >> p) << (p + 1)) | (b << p) | (m & ((1 << p) - 1))


def _edge_map(cube: _Cube, r: int, i: int):
    """Circle bookkeeping for the cube edge r -> r | 1<<i.

    Returns ("m", p, q, z) when circles p < q of r merge into circle z of
    the target, or ("s", p, z1, z2) when circle p splits into z1 < z2.
    """
    circ_r, n_r = cube.circles(r)
    r2 = r | (1 << i)
    circ_t, n_t = cube.circles(r2)
    ai = cube.arc_index
    ends = [ai[a] for a in cube.crossings[i].arcs()]
    src = sorted({circ_r[e] for e in ends})
    if len(src) == 2:
        return ("m", src[0], src[1], circ_t[ends[0]])
    tgt = sorted({circ_t[e] for e in ends})
    return ("s", src[0], tgt[0], tgt[1])


def _iter_generators(cube: _Cube, r: int, ncirc: int, base_circle: Optional[int]):
    """Masks of the vertex's generators (bit = 1 means the circle is v-)."""
    if base_circle is None:
        yield from range(1 << ncirc)
    else:
        bit = 1 << base_circle
        for m in range(1 << (ncirc - 1)):
            lo = m & (bit - 1)
            yield ((m ^ lo) << 1) | bit | lo


def _basepoint_circle(cube: _Cube, r: int, comp: int, arc: int) -> int:
    if comp > len(cube.d.components):
        circ, _ = cube.circles(r)
        n_arc_circles = (max(circ) + 1) if circ else 0
        return n_arc_circles + (comp - len(cube.d.components) - 1)
    circ, _ = cube.circles(r)
    return circ[cube.arc_index[arc]]


def _homology(d: OrientedPDDiagram, coeff: str, budget: int,
              basepoint: Optional[Tuple[int, int]] = None) -> BigradedRanks:
    if len(d.crossings) > budget:
        raise CrossingBudgetExceeded(len(d.crossings), budget)
    if coeff not in ("F2", "Z"):
        raise ValueError(f"unknown coefficient ring {coeff!r}")
    cube = _Cube(d)
    n = cube.n
    shift = cube.n_plus - 2 * cube.n_minus

    # pass 1: dimensions and row indices per (h, q) block
    dims: Dict[Tuple[int, int], int] = {}
    index: Dict[Tuple[int, int], int] = {}
    for r in range(1 << n):
        _, ncirc = cube.circles(r)
        w = r.bit_count()
        h = w - cube.n_minus
        base_q = ncirc + w + shift
        bp = None
        if basepoint is not None:
            bp = _basepoint_circle(cube, r, *basepoint)
        for mask in _iter_generators(cube, r, ncirc, bp):
            q = base_q - 2 * mask.bit_count()
            key = (h, q)
            row = dims.get(key, 0)
            dims[key] = row + 1
            index[(r, mask)] = row

    # pass 2: images of every generator, stored per source block
    use_f2 = coeff == "F2"
    imgs_f2: Dict[Tuple[int, int], List[int]] = (
        {k: [0] * c for k, c in dims.items()} if use_f2 else {}
    )
    imgs_z: Dict[Tuple[int, int], List[Dict[int, int]]] = (
        {k: [dict() for _ in range(c)] for k, c in dims.items()} if not use_f2 else {}
    )

    for r in range(1 << n):
        _, ncirc = cube.circles(r)
        w = r.bit_count()
        h = w - cube.n_minus
        base_q = ncirc + w + shift
        bp = None
        if basepoint is not None:
            bp = _basepoint_circle(cube, r, *basepoint)
        edges = []
        for i in range(n):
            if not (r >> i) & 1:
                sign = -1 if (r & ((1 << i) - 1)).bit_count() % 2 else 1
                edges.append((_edge_map(cube, r, i), r | (1 << i), sign))
        for mask in _iter_generators(cube, r, ncirc, bp):
            q = base_q - 2 * mask.bit_count()
            src_row = index[(r, mask)]
            block = (h, q)
            targets: List[Tuple[int, int, int]] = []  # (vertex, mask, sign)
            for (kind, p0, p1, p2), r2, sgn in edges:
                if kind == "m":
                    bp_, bq_ = (mask >> p0) & 1, (mask >> p1) & 1
                    if bp_ & bq_:
                        continue  # v- v- merges to zero
                    m0 = _remove_bit(mask, p1)
                    m0 = _remove_bit(m0, p0)
                    targets.append((r2, _insert_bit(m0, p2, bp_ | bq_), sgn))
                else:
                    b = (mask >> p0) & 1
                    m0 = _remove_bit(mask, p0)
                    if b:
                        t = _insert_bit(_insert_bit(m0, p1, 1), p2, 1)
                        targets.append((r2, t, sgn))
                    else:
                        targets.append(
                            (r2, _insert_bit(_insert_bit(m0, p1, 1), p2, 0), sgn)
                        )
                        targets.append(
                            (r2, _insert_bit(_insert_bit(m0, p1, 0), p2, 1), sgn)
                        )
            if use_f2:
                img = 0
                for r2, tmask, _ in targets:
                    img ^= 1 << index[(r2, tmask)]
                imgs_f2[block][src_row] = img
            else:
                vec = imgs_z[block][src_row]
                for r2, tmask, sgn in targets:
                    row = index[(r2, tmask)]
                    vec[row] = vec.get(row, 0) + sgn

    # rank (and torsion) per block, then assemble homology
    ranks: Dict[Tuple[int, int], int] = {}
    factors: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for key in dims:
        if use_f2:
            ranks[key] = gf2_rank_sorted([v for v in imgs_f2[key] if v])
        else:
            h, q = key
            tgt_dim = dims.get((h + 1, q), 0)
            rows = [
                [vec.get(j, 0) for j in range(tgt_dim)] for vec in imgs_z[key] if vec
            ]
            fs = snf(rows) if rows and tgt_dim else ()
            factors[key] = fs
            ranks[key] = sum(1 for x in fs if x)

    out = BigradedRanks(coeff)
    for (h, q), dim in dims.items():
        free = dim - ranks.get((h, q), 0) - ranks.get((h - 1, q), 0)
        if free:
            out.free[(h, q)] = free
        if not use_f2:
            tors: List[int] = []
            for f in factors.get((h - 1, q), ()):
                if f > 1:
                    tors.extend(_prime_power_factors(f))
            if tors:
                out.torsion[(h, q)] = tuple(sorted(tors))
    if basepoint is not None:
        out = out.shifted(0, 1)
    return out


def kh(d: OrientedPDDiagram, coeff: str = "F2", budget: int = DEFAULT_BUDGET) -> BigradedRanks:
    """Bigraded Khovanov homology ranks of the diagram."""
    return _homology(d, coeff, budget)


def khr(
    d: OrientedPDDiagram,
    component: int,
    arc: int | None = None,
    coeff: str = "F2",
    budget: int = DEFAULT_BUDGET,
) -> BigradedRanks:
    """Reduced Khovanov homology with a basepoint on the given component."""
    if not 1 <= component <= d.n_components:
        raise BadBasepoint(f"component {component} of {d.n_components}")
    if component > len(d.components):
        arc_id = 0
    else:
        cyc = d.components[component - 1]
        arc_id = arc if arc is not None else cyc[0]
        if arc_id not in cyc:
            raise BadBasepoint(f"arc {arc_id} is not on component {component}")
    return _homology(d, coeff, budget, basepoint=(component, arc_id))


def forest_poincare(g: ForestGraph) -> BiLaurent:
    """Mod-2 Poincare polynomial of a forest link, as a product over trees.

    Each k-vertex tree contributes t^(k-1) q^(3(k-1)) (q + 1/q)
    (t q^2 + 1/(t q^2))^(k-1); variables are (x=t, y=q).
    """
    cyc = g.find_cycle()
    if cyc is not None:
        raise NotAForest(cyc)
    qpart = BiLaurent({(0, 1): 1, (0, -1): 1})
    tq = BiLaurent({(1, 2): 1, (-1, -2): 1})
    out = BiLaurent.const(1)
    for comp in g.tree_components():
        k = len(comp)
        out = out * BiLaurent.monomial(k - 1, 3 * (k - 1)) * qpart * tq ** (k - 1)
    return out


def batson_seed_check(
    d_link: OrientedPDDiagram,
    d_k1: OrientedPDDiagram,
    d_k2: OrientedPDDiagram,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Internal-grading rank inequality against the tensor of the components.

    For a 2-component link with linking number lk, every internal grade l
    must satisfy rank^l Kh(L) >= rank^(l + 2 lk) (Kh(K1) x Kh(K2)) over Z/2.
    """
    if d_link.n_components != 2:
        raise ComponentCountMismatch(
            f"need a 2-component link, got {d_link.n_components}"
        )
    lk = linking_matrix(d_link)[0][1]
    rl = internal_ranks(kh(d_link, "F2", budget))
    r1 = internal_ranks(kh(d_k1, "F2", budget))
    r2 = internal_ranks(kh(d_k2, "F2", budget))
    tensor: Dict[int, int] = {}
    for a, x in r1.items():
        for b, y in r2.items():
            tensor[a + b] = tensor.get(a + b, 0) + x * y
    for l, need in tensor.items():
        if rl.get(l - 2 * lk, 0) < need:
            return False
    return True
