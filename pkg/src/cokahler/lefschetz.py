"""Lefschetz maps, cohomology splitting, and mapping-torus models.

On a (2n+1)-dimensional model the degree-p Lefschetz map is

    alpha -> omega^{n-p+1} ^ iota_xi(alpha) + omega^{n-p} ^ eta ^ alpha.

It only sends closed forms to closed forms after restricting to the
L_xi-invariant forms, where it descends to cohomology; on co-Kahler models
the induced map in degrees 0..n must be an isomorphism onto the
complementary degrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .cdga import DGA, AlgebraMap, Subcomplex, embed_element, free_line_dga, \
    invariant_subalgebra, tensor_product
from .errors import StructureError
from .exterior import Element
from .eta import omega_splitting, split_form
from .geometry import LieModel, classify, omega_element


def _contact_rank(m: LieModel) -> int:
    if m.dimension % 2 == 0:
        raise StructureError(
            f"model {m.name!r} has even dimension {m.dimension}; "
            "the Lefschetz calculus needs dimension 2n+1")
    return (m.dimension - 1) // 2


def _omega_power(omega: Element, k: int) -> Element:
    out = omega.algebra.unit()
    for _ in range(k):
        out = out.wedge(omega)
    return out


def lefschetz_map(m: LieModel, alpha: Element) -> Element:
    """Apply the Lefschetz map to alpha in Omega^p_eta, 0 <= p <= n.

    Inputs outside the invariant forms are refused: there the map does not
    send closed forms to closed forms and cannot descend to cohomology.
    """
    n = _contact_rank(m)
    p = alpha.degree
    if not 0 <= p <= n:
        raise StructureError(f"Lefschetz map needs 0 <= degree <= {n}, got {p}")
    if not m.lie_xi().apply(alpha).is_zero():
        raise StructureError(
            "alpha is not L_xi-invariant: on such forms the Lefschetz map "
            "does not descend to cohomology; pass an element of Omega_eta")
    omega = omega_element(m)
    eta = m.eta_element()
    out = _omega_power(omega, n - p + 1).wedge(m.contract(m.xi, alpha)) \
        + _omega_power(omega, n - p).wedge(eta).wedge(alpha)
    if not m.lie_xi().apply(out).is_zero():
        raise StructureError("Lefschetz image left the invariant forms")
    if m.ce().d.apply(alpha).is_zero() and not m.ce().d.apply(out).is_zero():
        raise StructureError("Lefschetz image of a closed form is not closed")
    return out


@dataclass
class LefschetzDegree:
    degree: int
    matrix: linalg.Matrix
    source_dim: int
    target_dim: int
    rank: int
    isomorphism: bool
    kernel_witnesses: list[str]
    component_split_ok: bool


@dataclass
class LefschetzReport:
    n: int
    hypothesis_cokahler: bool
    degrees: list[LefschetzDegree]
    top_class_nonzero: bool    # omega^n ^ eta represents a nonzero top class

    @property
    def all_iso(self) -> bool:
        return all(d.isomorphism for d in self.degrees)

    @property
    def ok(self) -> bool:
        """Binding only under the co-Kahler hypothesis."""
        return (self.all_iso and self.top_class_nonzero) \
            if self.hypothesis_cokahler else True


def verify_lefschetz_iso(m: LieModel) -> LefschetzReport:
    """Induced Lefschetz matrices on the invariant cohomology for p <= n,
    with the component bookkeeping of the splitting."""
    n = _contact_rank(m)
    co_kahler = classify(m).coKahler
    split = omega_splitting(m)
    sub = split.omega_eta
    ring = sub.cohomology()
    ring1 = split.omega1.cohomology()
    degrees = []
    for p in range(n + 1):
        q = 2 * n + 1 - p
        cols = []
        comp_ok = True
        for rep in ring.representatives(p):
            elem = sub.element(p, rep)
            image = lefschetz_map(m, elem)
            image_coords = sub.coords(q, m.ce().coords(q, image))
            cols.append(ring.class_of(q, image_coords))
            comp_ok &= _component_split_ok(m, sub, ring, ring1, split, elem, q)
        src, tgt = ring.dim(p), ring.dim(q)
        matrix = [[col[i] for col in cols] for i in range(tgt)]
        rk = linalg.rank(matrix) if cols and tgt else 0
        iso = rk == src == tgt
        witnesses = []
        if src and rk < src:
            for kv in linalg.kernel_basis(matrix, src):
                witnesses.append(repr(sub.element(p, ring.representative_of(p, kv))))
        degrees.append(LefschetzDegree(p, matrix, src, tgt, rk, iso,
                                       witnesses, comp_ok))
    top = _omega_power(omega_element(m), n).wedge(m.eta_element())
    top_coords = sub.coords(2 * n + 1, m.ce().coords(2 * n + 1, top))
    top_nonzero = any(ring.class_of(2 * n + 1, top_coords))
    return LefschetzReport(n, co_kahler, degrees, top_nonzero)


def _component_split_ok(m, sub, ring, ring1, split, elem, q) -> bool:
    """The two split components land where the splitting says they must:
    L(alpha_1) in [eta] ^ H_1 and L(alpha_2) in H_1."""
    pair = split_form(m, elem)
    eta = m.eta_element()
    ce = m.ce()

    def class_in_eta_h1(image: Element) -> bool:
        span = []
        for rep in ring1.representatives(q - 1):
            vec = eta.wedge(split.omega1.element(q - 1, rep))
            span.append(ring.class_of(q, sub.coords(q, ce.coords(q, vec))))
        target = ring.class_of(q, sub.coords(q, ce.coords(q, image)))
        rows, pivots = linalg.rref(span) if span else ([], [])
        return linalg.in_row_space(target, rows, pivots)

    def class_in_h1(image: Element) -> bool:
        span = []
        for rep in ring1.representatives(q):
            vec = split.omega1.element(q, rep)
            span.append(ring.class_of(q, sub.coords(q, ce.coords(q, vec))))
        target = ring.class_of(q, sub.coords(q, ce.coords(q, image)))
        rows, pivots = linalg.rref(span) if span else ([], [])
        return linalg.in_row_space(target, rows, pivots)

    ok = True
    if not pair.alpha1.is_zero():
        ok &= class_in_eta_h1(lefschetz_map(m, pair.alpha1))
    if not pair.alpha2.is_zero():
        ok &= class_in_h1(lefschetz_map(m, pair.alpha2))
    return ok


@dataclass
class SplittingReport:
    """dim H^p_eta = dim H^p_1 + dim H^{p-1}_1, via the explicit map
    (x, y) -> x + [eta] ^ y."""
    dims_eta: tuple[int, ...]
    dims_basic: tuple[int, ...]
    per_degree_ok: list[bool]
    ok: bool


def splitting_check(m: LieModel) -> SplittingReport:
    split = omega_splitting(m)
    sub = split.omega_eta
    ring = sub.cohomology()
    ring1 = split.omega1.cohomology()
    eta = m.eta_element()
    ce = m.ce()
    per_degree = []
    for p in range(ce.top + 1):
        want = ring1.dim(p) + (ring1.dim(p - 1) if p >= 1 else 0)
        cols = []
        for rep in ring1.representatives(p):
            vec = split.omega1.element(p, rep)
            cols.append(ring.class_of(p, sub.coords(p, ce.coords(p, vec))))
        if p >= 1:
            for rep in ring1.representatives(p - 1):
                vec = eta.wedge(split.omega1.element(p - 1, rep))
                cols.append(ring.class_of(p, sub.coords(p, ce.coords(p, vec))))
        matrix = [[col[i] for col in cols] for i in range(ring.dim(p))]
        rk = linalg.rank(matrix) if cols and ring.dim(p) else 0
        per_degree.append(want == ring.dim(p) and rk == want == ring.dim(p))
    return SplittingReport(ring.betti(), ring1.betti(), per_degree,
                           all(per_degree))


@dataclass
class MappingTorus:
    """Mapping-torus model: the phi-invariant forms of K tensored with a
    circle generator, realized as a subcomplex of K (x) line."""
    total: DGA
    invariant: Subcomplex
    fiber_fixed: Subcomplex
    betti: tuple[int, ...]
    fiber_fixed_betti: tuple[int, ...]
    order: int
    circle_generator: str


def mapping_torus_model(k_dga: DGA, phi: AlgebraMap, order: int,
                        circle_name: str | None = None) -> MappingTorus:
    """Model of the mapping torus of a finite-order automorphism."""
    used = {g.name for g in k_dga.algebra.generators}
    name = circle_name
    if name is None:
        name = next(c for c in ("t", "s", "u", "z") if c not in used)
    elif name in used:
        raise StructureError(f"circle generator name {name!r} collides")
    fixed_k = invariant_subalgebra(k_dga, phi, order)
    total = tensor_product(k_dga, free_line_dga(name))
    images = {}
    for i, gen in enumerate(k_dga.algebra.generators):
        images[gen.name] = embed_element(phi.images[i], total.algebra)
    images[name] = total.algebra.gen(name)
    phi_hat = AlgebraMap(total.algebra, images, name=f"{phi.name or 'phi'}^")
    invariant = invariant_subalgebra(total, phi_hat, order)
    return MappingTorus(total, invariant, fixed_k, invariant.betti(),
                        fixed_k.betti(), order, name)


def model_automorphism(m: LieModel) -> tuple[AlgebraMap, int]:
    """The automorphism block of a model file as a degree-1 algebra map."""
    if m.automorphism is None:
        raise StructureError(f"model {m.name!r} carries no automorphism block")
    mat, order = m.automorphism
    alg = m.algebra()
    images = {}
    for j in range(m.dimension):
        img = alg.zero(1)
        for i in range(m.dimension):
            if mat[i][j]:
                img = img + alg.gen(i).scale(mat[i][j])
        images[alg.generators[j].name] = img
    return AlgebraMap(alg, images, name="phi"), order
