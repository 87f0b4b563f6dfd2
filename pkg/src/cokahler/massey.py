"""Triple Massey products as formality obstructions.

For classes x, y, z with x y = 0 = y z in cohomology, pick bounding cochains
dU = a b and dV = b c (echelon solve, free variables zero) and form

    w = U c - (-1)^{|x|} a V.

The class of w modulo the indeterminacy x H + H z is the triple product; a
nonvanishing product obstructs formality.  Vanishing products prove nothing,
so scans report "obstructed" or "consistent-with-formal", never "formal".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cohomology import CohomologyRing
from .errors import StructureError


@dataclass
class MasseyTriple:
    degrees: tuple[int, int, int]
    x: list[Fraction]
    y: list[Fraction]
    z: list[Fraction]
    bounding_xy: list[Fraction]       # cochain U with dU = rep(x) rep(y)
    bounding_yz: list[Fraction]       # cochain V with dV = rep(y) rep(z)
    value_cochain: list[Fraction]
    value_class: list[Fraction]       # in H^{|x|+|y|+|z|-1}
    indeterminacy_rows: linalg.Matrix
    indeterminacy_pivots: list[int]
    vanishes: bool

    @property
    def value_degree(self) -> int:
        return sum(self.degrees) - 1

    @property
    def indeterminacy_dim(self) -> int:
        return len(self.indeterminacy_rows)


def triple_massey(ring: CohomologyRing, x: tuple, y: tuple, z: tuple,
                  column_order: list[int] | None = None) -> MasseyTriple:
    """<x, y, z> for classes given as (degree, class coordinates).

    ``column_order`` selects the echelon pivot order used for the bounding
    cochains; the vanishing verdict is independent of it.
    """
    (px, xc), (py, yc), (pz, zc) = x, y, z
    cx = ring.complex
    a = ring.representative_of(px, xc)
    b = ring.representative_of(py, yc)
    c = ring.representative_of(pz, zc)
    ab = cx.wedge_coords(px, a, py, b)
    bc = cx.wedge_coords(py, b, pz, c)
    if any(ring.class_of(px + py, ab)):
        raise StructureError("x y is nonzero in cohomology; <x,y,z> undefined")
    if any(ring.class_of(py + pz, bc)):
        raise StructureError("y z is nonzero in cohomology; <x,y,z> undefined")
    u = cx.solve_d(px + py - 1, ab, column_order=column_order)
    v = cx.solve_d(py + pz - 1, bc, column_order=column_order)
    if u is None or v is None:
        raise StructureError("exact product has no primitive; corrupt complex")
    s = px + py + pz - 1
    uc = cx.wedge_coords(px + py - 1, u, pz, c)
    av = cx.wedge_coords(px, a, py + pz - 1, v)
    sign = -1 if px % 2 else 1
    w = [uc[i] - sign * av[i] for i in range(len(uc))]
    value_class = ring.class_of(s, w)
    ind_rows, ind_pivots = _indeterminacy(ring, px, xc, pz, zc, s)
    vanishes = linalg.in_row_space(value_class, ind_rows, ind_pivots) \
        if any(value_class) else True
    return MasseyTriple((px, py, pz), list(xc), list(yc), list(zc),
                        u, v, w, value_class, ind_rows, ind_pivots, vanishes)


def _indeterminacy(ring: CohomologyRing, px, xc, pz, zc, s):
    """Subspace x H^{s-px} + H^{s-pz} z of H^s, in rref form."""
    span = []
    q = s - px
    for i in range(ring.dim(q)):
        span.append(ring.cup(px, xc, q, linalg.unit_vector(ring.dim(q), i)))
    q = s - pz
    for i in range(ring.dim(q)):
        span.append(ring.cup(q, linalg.unit_vector(ring.dim(q), i), pz, zc))
    span = [row for row in span if any(row)]
    return linalg.rref(span) if span else ([], [])


@dataclass
class MasseyScan:
    """All triple products among degree-1 basis classes with vanishing
    pairwise products."""
    triples: list[tuple[tuple[int, int, int], MasseyTriple]]
    status: str   # "obstructed" or "consistent-with-formal"

    @property
    def obstructed(self) -> bool:
        return self.status == "obstructed"


def degree_one_massey_scan(ring: CohomologyRing) -> MasseyScan:
    n1 = ring.dim(1)
    results = []
    obstructed = False
    for i, j, k in itertools.product(range(n1), repeat=3):
        if any(ring.cup_basis(1, i, 1, j)) or any(ring.cup_basis(1, j, 1, k)):
            continue
        unit = lambda t: (1, linalg.unit_vector(n1, t))
        triple = triple_massey(ring, unit(i), unit(j), unit(k))
        results.append(((i, j, k), triple))
        obstructed |= not triple.vanishes
    return MasseyScan(results, "obstructed" if obstructed
                      else "consistent-with-formal")
