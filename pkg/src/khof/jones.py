"""Kauffman bracket, the writhe-normalized Jones polynomial, and the
closed form for the cycle-of-unknots family evaluated at t^(1/2) = -i.

Conventions: <unknot> = 1, every extra state circle weighs -A^2 - A^(-2),
A-smoothings weigh A and B-smoothings A^(-1).  The Jones polynomial is
V = (-A)^(-3w) <d> with t = A^(-4), hence q = t^(1/2) = A^(-2), and the
positive Hopf link comes out as -t^(1/2) - t^(5/2).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .diagrams import Crossing, OrientedPDDiagram, validate
from .errors import BadParameters
from .polynomials import GaussianInt, LaurentPoly, eval_gaussian, i_power


def _smoothing_pairs(c: Crossing) -> Tuple[Tuple[Tuple[int, int], ...], Tuple[Tuple[int, int], ...]]:
    """Arc pairings for the A- and B-smoothing of one crossing.

    Listing the four arc-ends counterclockwise from the incoming under
    strand as (e1, e2, e3, e4), the A-smoothing joins e1-e2 and e3-e4, the
    B-smoothing joins e1-e4 and e2-e3.  The stored sign decides whether the
    over strand runs e2->e4 or e4->e2.
    """
    if c.sign > 0:
        ends = (c.under_in, c.over_out, c.under_out, c.over_in)
    else:
        ends = (c.under_in, c.over_in, c.under_out, c.over_out)
    a = ((ends[0], ends[1]), (ends[2], ends[3]))
    b = ((ends[0], ends[3]), (ends[1], ends[2]))
    return a, b


def _count_loops(arcs: List[int], joins: List[Tuple[int, int]]) -> int:
    """Circles formed when each arc's two ends are joined per the pairings."""
    parent = {a: a for a in arcs}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in joins:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(a) for a in arcs})


def kauffman_bracket(d: OrientedPDDiagram) -> LaurentPoly:
    """The bracket polynomial in A, normalized so the unknot brackets to 1."""
    validate(d)
    crossings = d.crossings
    arcs = d.arcs()
    n = len(crossings)
    pairs = [_smoothing_pairs(c) for c in crossings]

    terms: Dict[int, int] = {}
    # state sum over all 2^n smoothings; loop weight delta = -A^2 - A^-2
    for state in range(1 << n):
        joins: List[Tuple[int, int]] = []
        exp = 0
        for i in range(n):
            if (state >> i) & 1:
                joins.extend(pairs[i][1])
                exp -= 1
            else:
                joins.extend(pairs[i][0])
                exp += 1
        loops = _count_loops(arcs, joins) + d.free_loops
        _add_delta_power(terms, exp, loops - 1)
    return LaurentPoly("A", {2 * e: c for e, c in terms.items()})


def _add_delta_power(terms: Dict[int, int], base_exp: int, k: int) -> None:
    """terms += A^base_exp * (-A^2 - A^-2)^k, exponents kept as plain ints."""
    from math import comb

    for j in range(k + 1):
        e = base_exp + 2 * j - 2 * (k - j)
        terms[e] = terms.get(e, 0) + ((-1) ** k) * comb(k, j)


def jones(d: OrientedPDDiagram) -> LaurentPoly:
    """Reduced Jones polynomial in q = t^(1/2), with V(unknot) = 1."""
    bracket = kauffman_bracket(d)
    w = d.writhe()
    # V = (-A)^(-3w) * <d>, then q = A^(-2)
    normalized = bracket.shift(Fraction(-3 * w)).scale(-1 if w % 2 else 1)
    # substitute A -> q^(-1/2): doubled-A exponent k maps to doubled-q -k/2
    return normalized.retag("q", Fraction(-1, 2))


def jones_in_t(d: OrientedPDDiagram) -> str:
    """Jones polynomial rendered in the t variable."""
    from .polynomials import render_poly

    return render_poly(jones(d), "t")


def skein_check(
    l_plus: OrientedPDDiagram,
    l_minus: OrientedPDDiagram,
    l_zero: OrientedPDDiagram,
) -> bool:
    """Whether t^(-1) V(L+) - t V(L-) = (t^(1/2) - t^(-1/2)) V(L0) exactly."""
    vp, vm, vz = jones(l_plus), jones(l_minus), jones(l_zero)
    tinv = LaurentPoly.monomial("q", -2)
    t = LaurentPoly.monomial("q", 2)
    qdiff = LaurentPoly.monomial("q", 1) - LaurentPoly.monomial("q", -1)
    return (tinv * vp - t * vm - qdiff * vz).is_zero()


def vuv_closed_form(u: int, v: int) -> GaussianInt:
    """(-1)^v (2i)^(u-1) (u+2v): the family's Jones value at t^(1/2) = -i."""
    if u < 3:
        raise BadParameters("the cycle family needs u >= 3")
    sign = -1 if v % 2 else 1
    two_i = GaussianInt(2 ** (u - 1)) * i_power(u - 1)
    return two_i * GaussianInt(sign * (u + 2 * v))


def jones_at_minus_i(d: OrientedPDDiagram) -> GaussianInt:
    """eval of the Jones polynomial at q = -i."""
    return eval_gaussian(jones(d))
