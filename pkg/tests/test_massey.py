"""Triple Massey products and the degree-1 formality scan."""

from fractions import Fraction

import pytest

from cokahler import linalg
from cokahler.errors import StructureError
from cokahler.massey import degree_one_massey_scan, triple_massey


def unit(ring, p, i):
    return (p, linalg.unit_vector(ring.dim(p), i))


def test_heisenberg_obstruction(heisenberg):
    dga = heisenberg.ce()
    ring = dga.cohomology()
    # H^1 basis is ([e1], [e2]); <[e1],[e2],[e2]> is the classic obstruction
    triple = triple_massey(ring, unit(ring, 1, 0), unit(ring, 1, 1),
                           unit(ring, 1, 1))
    assert not triple.vanishes
    assert triple.indeterminacy_dim == 0
    # oracle: e1^e2 = -d(e3), so the bounding cochain is -e3 and the value
    # is (-e3)^e2 = e2^e3
    assert dga.element(1, triple.bounding_xy) == \
        dga.algebra.gen("e3").scale(-1)
    assert dga.element(2, triple.value_cochain) == \
        dga.algebra.monomial("e2", "e3")
    # the value class is proportional to [e2^e3]
    rep = ring.representative_of(2, triple.value_class)
    assert dga.element(2, rep) == dga.algebra.monomial("e2", "e3")


def test_value_is_closed_and_bounding_cochains_bound(heisenberg):
    dga = heisenberg.ce()
    ring = dga.cohomology()
    for i, j, k in ((0, 1, 1), (0, 1, 0), (1, 0, 1)):
        triple = triple_massey(ring, unit(ring, 1, i), unit(ring, 1, j),
                               unit(ring, 1, k))
        value = dga.element(2, triple.value_cochain)
        assert dga.d.apply(value).is_zero()
        # d(U) literally reproduces the vanishing products
        a = dga.element(1, ring.representative_of(1, triple.x))
        b = dga.element(1, ring.representative_of(1, triple.y))
        c = dga.element(1, ring.representative_of(1, triple.z))
        assert dga.d.apply(dga.element(1, triple.bounding_xy)) == a.wedge(b)
        assert dga.d.apply(dga.element(1, triple.bounding_yz)) == b.wedge(c)


def test_verdict_stable_under_pivot_reordering(heisenberg):
    dga = heisenberg.ce()
    ring = dga.cohomology()
    order = list(range(dga.dim(1)))[::-1]
    for i, j, k in ((0, 1, 1), (1, 0, 1), (0, 0, 0)):
        default = triple_massey(ring, unit(ring, 1, i), unit(ring, 1, j),
                                unit(ring, 1, k))
        other = triple_massey(ring, unit(ring, 1, i), unit(ring, 1, j),
                              unit(ring, 1, k), column_order=order)
        assert default.vanishes == other.vanishes


def test_nonzero_products_refused(torus3):
    ring = torus3.ce().cohomology()
    # on the torus [e1].[e2] = [e1^e2] != 0, so <e1, e1, e2> is undefined
    with pytest.raises(StructureError):
        triple_massey(ring, unit(ring, 1, 0), unit(ring, 1, 0),
                      unit(ring, 1, 1))


def test_torus_triples_vanish(torus3):
    ring = torus3.ce().cohomology()
    # <e1, e1, e1> is defined (e1.e1 = 0) and vanishes: d = 0 allows zero
    # bounding cochains
    triple = triple_massey(ring, unit(ring, 1, 0), unit(ring, 1, 0),
                           unit(ring, 1, 0))
    assert triple.vanishes
    assert not any(triple.bounding_xy)
    assert not any(triple.value_cochain)


def test_zero_class_input_vanishes(heisenberg):
    ring = heisenberg.ce().cohomology()
    zero = (1, [Fraction(0), Fraction(0)])
    triple = triple_massey(ring, zero, unit(ring, 1, 1), unit(ring, 1, 1))
    assert triple.vanishes
    assert not any(triple.value_class)


def test_scan_statuses(contact_models):
    for m in contact_models:
        scan = degree_one_massey_scan(m.ce().cohomology())
        if m.name == "heisenberg":
            assert scan.obstructed
            assert len(scan.triples) == 8     # all pairwise products vanish
        else:
            assert scan.status == "consistent-with-formal"
            assert all(t.vanishes for _, t in scan.triples)


def test_scan_on_cokahler_models_all_vanish(cokahler_models):
    for m in cokahler_models:
        scan = degree_one_massey_scan(m.ce().cohomology())
        assert not scan.obstructed
