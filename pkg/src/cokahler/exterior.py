"""Free graded-commutative algebras with exact rational coefficients.

An algebra is generated by named generators of degree >= 1.  Elements are
homogeneous and sparse: a finite map from canonical monomials to nonzero
rationals.  Monomial keys come in two encodings, chosen once per algebra:

* every generator has degree 1 (the Chevalley-Eilenberg case): a monomial is
  an index bitmask, and the wedge sign is an inversion-parity popcount;
* otherwise: a sorted index tuple, odd generators at most once, even
  generators with multiplicity, canonicalized with explicit Koszul signs.

Algebras and elements are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import StructureError

Key = int | tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise StructureError(f"generator {self.name!r} must have degree >= 1")


class GradedAlgebra:
    """Free graded-commutative algebra on a fixed generator list.

    ``max_degree`` truncates the algebra: products landing above it are zero.
    It is required when some generator has even degree (the algebra would be
    infinite) and defaults to the sum of generator degrees otherwise.
    """

    def __init__(self, generators: list[Generator] | tuple[Generator, ...],
                 max_degree: int | None = None):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise StructureError("generator names must be unique")
        self.generators = gens
        self._name_index = {g.name: i for i, g in enumerate(gens)}
        self.bitmask = all(g.degree == 1 for g in gens)
        full = sum(g.degree for g in gens)
        if any(g.degree % 2 == 0 for g in gens):
            if max_degree is None:
                raise StructureError(
                    "max_degree is required when even-degree generators are present")
            self.top = max_degree
        else:
            self.top = full if max_degree is None else min(full, max_degree)
        self._basis_cache: dict[int, tuple[Key, ...]] = {}
        self._index_cache: dict[int, dict[Key, int]] = {}

    # -- generator access ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise StructureError(f"unknown generator {name!r}") from None

    def degree_of(self, i: int) -> int:
        return self.generators[i].degree

    def gen(self, name_or_index: str | int) -> "Element":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < len(self.generators):
            raise StructureError(f"generator index {i} out of range")
        key: Key = (1 << i) if self.bitmask else (i,)
        return Element(self, self.generators[i].degree, {key: Fraction(1)})

    def gens(self) -> list["Element"]:
        return [self.gen(i) for i in range(len(self.generators))]

    # -- monomial keys ------------------------------------------------------

    def key_indices(self, key: Key) -> tuple[int, ...]:
        if self.bitmask:
            return tuple(i for i in range(len(self.generators)) if key >> i & 1)
        return key  # already a sorted tuple

    def key_degree(self, key: Key) -> int:
        if self.bitmask:
            return int(key).bit_count()
        return sum(self.generators[i].degree for i in key)

    def key_str(self, key: Key) -> str:
        idx = self.key_indices(key)
        if not idx:
            return "1"
        return "^".join(self.generators[i].name for i in idx)

    def canonicalize(self, indices) -> tuple[Key, int]:
        """Sort a raw generator-index sequence; return (key, Koszul sign).

        Sign 0 means an odd generator repeats (the monomial is zero).
        """
        seq = list(indices)
        for i in seq:
            if not 0 <= i < len(self.generators):
                raise StructureError(f"generator index {i} out of range")
        sign = 1
        # insertion sort, tracking the Koszul sign of each adjacent swap
        for i in range(1, len(seq)):
            j = i
            while j > 0 and seq[j - 1] > seq[j]:
                da = self.generators[seq[j - 1]].degree
                db = self.generators[seq[j]].degree
                if da * db % 2:
                    sign = -sign
                seq[j - 1], seq[j] = seq[j], seq[j - 1]
                j -= 1
        for a, b in itertools.pairwise(seq):
            if a == b and self.generators[a].degree % 2:
                return self._zero_key(), 0
        if self.bitmask:
            mask = 0
            for i in seq:
                mask |= 1 << i
            return mask, sign
        return tuple(seq), sign

    def merge_keys(self, k1: Key, k2: Key) -> tuple[Key, int]:
        """Wedge of two canonical monomials: (key, sign), sign 0 if it dies."""
        if self.bitmask:
            if k1 & k2:
                return 0, 0
            # parity of inversions between the two index sets
            inv = 0
            m2 = k2
            while m2:
                j = (m2 & -m2).bit_length() - 1
                inv ^= (k1 >> (j + 1)).bit_count() & 1
                m2 &= m2 - 1
            return k1 | k2, -1 if inv else 1
        return self.canonicalize(k1 + k2)

    def _zero_key(self) -> Key:
        return 0 if self.bitmask else ()

    # -- degreewise bases ---------------------------------------------------

    def dim(self, p: int) -> int:
        return len(self.basis(p))

    def basis(self, p: int) -> tuple[Key, ...]:
        """Canonical ordered monomial basis of degree p."""
        if p < 0 or p > self.top:
            return ()
        if p not in self._basis_cache:
            if self.bitmask:
                keys = []
                for combo in itertools.combinations(range(len(self.generators)), p):
                    mask = 0
                    for i in combo:
                        mask |= 1 << i
                    keys.append(mask)
            else:
                keys = [tuple(m) for m in self._multisets(0, p)]
            self._basis_cache[p] = tuple(keys)
        return self._basis_cache[p]

    def _multisets(self, start: int, remaining: int):
        if remaining == 0:
            yield []
            return
        for i in range(start, len(self.generators)):
            d = self.generators[i].degree
            if d > remaining:
                continue
            odd = d % 2 == 1
            tail = self._multisets(i + 1, remaining - d) if odd \
                else self._multisets(i, remaining - d)
            for rest in tail:
                yield [i] + rest

    def basis_index(self, p: int) -> dict[Key, int]:
        if p not in self._index_cache:
            self._index_cache[p] = {k: i for i, k in enumerate(self.basis(p))}
        return self._index_cache[p]

    # -- element constructors -----------------------------------------------

    def zero(self, degree: int = 0) -> "Element":
        return Element(self, degree, {})

    def scalar(self, value) -> "Element":
        value = Fraction(value)
        if value == 0:
            return self.zero(0)
        return Element(self, 0, {self._zero_key(): value})

    def unit(self) -> "Element":
        return self.scalar(1)

    def monomial(self, *names, coeff=1) -> "Element":
        """Element from a raw generator-name (or index) sequence."""
        idx = [n if isinstance(n, int) else self.index(n) for n in names]
        key, sign = self.canonicalize(idx)
        coeff = Fraction(coeff) * sign
        degree = sum(self.generators[i].degree for i in idx)
        if coeff == 0 or degree > self.top:
            return self.zero(degree)
        return Element(self, degree, {key: coeff})

    def element(self, p: int, coords) -> "Element":
        keys = self.basis(p)
        terms = {k: Fraction(c) for k, c in zip(keys, coords) if c != 0}
        return Element(self, p, terms)

    def coords(self, elem: "Element") -> list[Fraction]:
        index = self.basis_index(elem.degree)
        out = [Fraction(0)] * len(index)
        for key, c in elem.terms.items():
            out[index[key]] = c
        return out


class Element:
    """Homogeneous element: degree plus a sparse monomial->coefficient map."""

    __slots__ = ("algebra", "degree", "terms")

    def __init__(self, algebra: GradedAlgebra, degree: int, terms: dict):
        self.algebra = algebra
        self.degree = degree
        self.terms = {k: v for k, v in terms.items() if v != 0}
        for key in self.terms:
            if algebra.key_degree(key) != degree:
                raise StructureError(
                    f"monomial {algebra.key_str(key)} has degree "
                    f"{algebra.key_degree(key)}, element claims {degree}")

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "Element"):
        if self.algebra is not other.algebra:
            raise StructureError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise StructureError(
                f"cannot add degree {self.degree} to degree {other.degree}")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return Element(self.algebra, self.degree, terms)

    def __neg__(self) -> "Element":
        return Element(self.algebra, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Fraction(c)
        return Element(self.algebra, self.degree,
                       {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return self.wedge(other)

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def wedge(self, other: "Element") -> "Element":
        """Graded-commutative product with Koszul signs."""
        self._check_compatible(other)
        alg = self.algebra
        degree = self.degree + other.degree
        if degree > alg.top:
            return alg.zero(degree)
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key, sign = alg.merge_keys(k1, k2)
                if sign == 0:
                    continue
                c = c1 * c2 * sign
                acc = terms.get(key, Fraction(0)) + c
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
        return Element(alg, degree, terms)

    __xor__ = wedge

    def coords(self) -> list[Fraction]:
        return self.algebra.coords(self)

    def coefficient(self, *names) -> Fraction:
        """Coefficient of the canonical monomial on the given generators."""
        idx = [n if isinstance(n, int) else self.algebra.index(n) for n in names]
        key, sign = self.algebra.canonicalize(idx)
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, Rational):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.algebra), self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        alg = self.algebra
        bits = []
        for key in sorted(self.terms, key=lambda k: alg.basis_index(self.degree)[k]):
            c = self.terms[key]
            mono = alg.key_str(key)
            if mono == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        out = " + ".join(bits)
        return out.replace("+ -", "- ")


def wedge(a: Element, b: Element) -> Element:
    return a.wedge(b)
