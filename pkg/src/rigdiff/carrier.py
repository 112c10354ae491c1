"""Commutative monoids with a distinguished free additive basis.

A carrier names the monoid; an element is a finite coefficient map from
basis keys to positive naturals, stored as a sorted tuple so that equal
elements are structurally equal.  Two kinds of carrier exist: ``FreeMonoid``
(finitely many numbered generators, written additively) and ``MonomialBasis``
(basis keys are the monomials of the polynomial-like values built over a
base carrier, which is how a constructed rig is reused additively as a
carrier one level up).  Everything here is immutable and safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence


class CarrierMismatch(ValueError):
    """Raised when an operation mixes values tagged with different carriers."""


def basis_sort_key(key: Any):
    """Total order on basis keys: generator indices by value, monomial keys
    by their structural order key.  Keys of one carrier are homogeneous, so
    the two cases never meet inside a single sort."""
    return key if isinstance(key, int) else key.order_key


@dataclass(frozen=True)
class FreeMonoid:
    """Vectors of naturals of a fixed finite rank, under componentwise sum.

    ``selfmap_enabled`` controls whether the rig built over this carrier
    admits the formal unary operation ``f``; disabling it restricts the
    construction to plain polynomials (symmetric-algebra mode).
    """

    rank: int
    selfmap_enabled: bool = True

    @property
    def level(self) -> int:
        return 1

    def check_key(self, key: Any) -> None:
        if not isinstance(key, int) or not 0 <= key < self.rank:
            raise CarrierMismatch(f"{key!r} is not a generator index of {self}")

    def __str__(self) -> str:
        tail = "" if self.selfmap_enabled else ", no self-map"
        return f"FreeMonoid(rank={self.rank}{tail})"


@dataclass(frozen=True)
class MonomialBasis:
    """Monoid freely generated by the monomials over a base carrier.

    Its elements are exactly the coefficient maps of normal forms over
    ``base``, so the rig built over ``base`` can serve as the carrier for
    the next level of the construction.
    """

    base: "Carrier"

    @property
    def rank(self) -> None:
        return None

    @property
    def selfmap_enabled(self) -> bool:
        return True

    @property
    def level(self) -> int:
        return self.base.level + 1

    def check_key(self, key: Any) -> None:
        if isinstance(key, int) or not hasattr(key, "order_key"):
            raise CarrierMismatch(f"{key!r} is not a monomial key of {self}")

    def __str__(self) -> str:
        return f"MonomialBasis({self.base})"


Carrier = FreeMonoid | MonomialBasis


@dataclass(frozen=True)
class MonoidElem:
    """Element of a carrier: a sorted coefficient map, all coefficients > 0."""

    carrier: Carrier
    items: tuple[tuple[Any, int], ...]

    @staticmethod
    def from_dict(carrier: Carrier, coeffs: Mapping[Any, int]) -> "MonoidElem":
        items = []
        for key, c in coeffs.items():
            if c < 0:
                raise ValueError(f"coefficient {c} is negative; no subtraction here")
            if c == 0:
                continue
            carrier.check_key(key)
            items.append((key, c))
        items.sort(key=lambda kv: basis_sort_key(kv[0]))
        return MonoidElem(carrier, tuple(items))

    @staticmethod
    def zero(carrier: Carrier) -> "MonoidElem":
        return MonoidElem(carrier, ())

    @staticmethod
    def generator(carrier: Carrier, key: Any, coeff: int = 1) -> "MonoidElem":
        return MonoidElem.from_dict(carrier, {key: coeff})

    def coeff(self, key: Any) -> int:
        for k, c in self.items:
            if k == key:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.items

    def __add__(self, other: "MonoidElem") -> "MonoidElem":
        return elem_add(self, other)


def _require_same_carrier(a, b) -> None:
    if a.carrier != b.carrier:
        raise CarrierMismatch(f"carrier mismatch: {a.carrier} vs {b.carrier}")


def elem_add(a: MonoidElem, b: MonoidElem) -> MonoidElem:
    """Pointwise sum of coefficient maps."""
    _require_same_carrier(a, b)
    acc = dict(a.items)
    for key, c in b.items:
        acc[key] = acc.get(key, 0) + c
    return MonoidElem.from_dict(a.carrier, acc)


def elem_scale(a: MonoidElem, n: int) -> MonoidElem:
    if n < 0:
        raise ValueError("scalar must be a natural number")
    if n == 0:
        return MonoidElem.zero(a.carrier)
    return MonoidElem(a.carrier, tuple((k, n * c) for k, c in a.items))


@dataclass(frozen=True, eq=False)
class MonoidHom:
    """Monoid homomorphism, given by its images on basis generators.

    ``image_of`` maps a domain basis key to a codomain element; the hom is
    the additive extension.  For maps between ``FreeMonoid`` carriers use
    :meth:`from_matrix`, which fixes the images as a rank x rank matrix of
    naturals.
    """

    domain: Carrier
    codomain: Carrier
    image_of: Callable[[Any], MonoidElem]

    @staticmethod
    def from_matrix(domain: FreeMonoid, codomain: FreeMonoid,
                    rows: Sequence[Sequence[int]]) -> "MonoidHom":
        if len(rows) != domain.rank:
            raise ValueError("one row per domain generator required")
        images = []
        for row in rows:
            if len(row) != codomain.rank:
                raise ValueError("row length must equal codomain rank")
            images.append(MonoidElem.from_dict(codomain, dict(enumerate(row))))
        return MonoidHom(domain, codomain, lambda key: images[key])

    @staticmethod
    def identity(carrier: Carrier) -> "MonoidHom":
        return MonoidHom(carrier, carrier,
                         lambda key: MonoidElem.generator(carrier, key))

    def compose(self, inner: "MonoidHom") -> "MonoidHom":
        """self after inner."""
        if inner.codomain != self.domain:
            raise CarrierMismatch("composition carriers do not line up")
        return MonoidHom(inner.domain, self.codomain,
                         lambda key: hom_apply(self, inner.image_of(key)))


def hom_apply(h: MonoidHom, a: MonoidElem) -> MonoidElem:
    """Apply a homomorphism by extending its generator images additively."""
    if a.carrier != h.domain:
        raise CarrierMismatch(f"element of {a.carrier} fed to hom from {h.domain}")
    out = MonoidElem.zero(h.codomain)
    for key, c in a.items:
        out = elem_add(out, elem_scale(h.image_of(key), c))
    return out


@dataclass(frozen=True)
class TensorElem:
    """Element of a finite tensor product of carriers.

    The basis of a tensor product of free-basis monoids is the set of
    tuples of factor basis keys, so an element is again a finite sorted
    coefficient map and equality stays structural.
    """

    factors: tuple[Carrier, ...]
    items: tuple[tuple[tuple, int], ...]

    @staticmethod
    def from_dict(factors: Sequence[Carrier],
                  coeffs: Mapping[tuple, int]) -> "TensorElem":
        factors = tuple(factors)
        items = []
        for key, c in coeffs.items():
            if c < 0:
                raise ValueError(f"coefficient {c} is negative; no subtraction here")
            if c == 0:
                continue
            if len(key) != len(factors):
                raise CarrierMismatch("key width differs from factor count")
            for f, k in zip(factors, key):
                f.check_key(k)
            items.append((key, c))
        items.sort(key=lambda kv: tuple(basis_sort_key(k) for k in kv[0]))
        return TensorElem(factors, tuple(items))

    @staticmethod
    def zero(factors: Sequence[Carrier]) -> "TensorElem":
        return TensorElem(tuple(factors), ())

    def coeff(self, key: tuple) -> int:
        for k, c in self.items:
            if k == key:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.items

    def __add__(self, other: "TensorElem") -> "TensorElem":
        return tensor_add(self, other)


def tensor_add(a: TensorElem, b: TensorElem) -> TensorElem:
    if a.factors != b.factors:
        raise CarrierMismatch("tensor factor lists differ")
    acc = dict(a.items)
    for key, c in b.items:
        acc[key] = acc.get(key, 0) + c
    return TensorElem.from_dict(a.factors, acc)


def tensor_scale(a: TensorElem, n: int) -> TensorElem:
    if n < 0:
        raise ValueError("scalar must be a natural number")
    if n == 0:
        return TensorElem.zero(a.factors)
    return TensorElem(a.factors, tuple((k, n * c) for k, c in a.items))


def elem_as_tensor(a: MonoidElem) -> TensorElem:
    """View a monoid element as a one-factor tensor."""
    return TensorElem((a.carrier,), tuple(((k,), c) for k, c in a.items))


def tensor_pure(elems: Sequence[MonoidElem]) -> TensorElem:
    """Tensor of elements, expanded multilinearly over their coefficient maps."""
    factors = tuple(e.carrier for e in elems)
    acc: dict[tuple, int] = {}
    for combo in itertools.product(*(e.items for e in elems)):
        key = tuple(k for k, _ in combo)
        coeff = 1
        for _, c in combo:
            coeff *= c
        acc[key] = acc.get(key, 0) + coeff
    return TensorElem.from_dict(factors, acc)


def tensor_concat(a: TensorElem, b: TensorElem) -> TensorElem:
    """Tensor product of two tensor elements (factor lists concatenate)."""
    acc: dict[tuple, int] = {}
    for ka, ca in a.items:
        for kb, cb in b.items:
            acc[ka + kb] = acc.get(ka + kb, 0) + ca * cb
    return TensorElem.from_dict(a.factors + b.factors, acc)


def tensor_permute(a: TensorElem, perm: Sequence[int]) -> TensorElem:
    """Reorder factors; position i of the result takes factor perm[i]."""
    if sorted(perm) != list(range(len(a.factors))):
        raise ValueError(f"{perm!r} is not a permutation of the factor positions")
    factors = tuple(a.factors[p] for p in perm)
    acc = {tuple(key[p] for p in perm): c for key, c in a.items}
    return TensorElem.from_dict(factors, acc)


def compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Permutation r with tensor_permute(t, r) == tensor_permute(tensor_permute(t, q), p)."""
    return tuple(q[i] for i in p)


FactorMap = tuple[Callable[[Any], "MonoidElem | TensorElem"], tuple[Carrier, ...]]


def tensor_bimap(a: TensorElem, maps: Sequence[FactorMap]) -> TensorElem:
    """Apply one additive map per factor and expand multilinearly.

    Each entry of ``maps`` is a pair (fn, out_factors): fn takes a basis key
    of its factor and returns an element over out_factors (a MonoidElem is
    accepted for single-factor outputs).  The result's factor list is the
    concatenation of the out_factors, which stays well defined even when the
    input is zero.
    """
    if len(maps) != len(a.factors):
        raise ValueError("one map per tensor factor required")
    out_factors = tuple(itertools.chain.from_iterable(fs for _, fs in maps))
    result = TensorElem.zero(out_factors)
    for key, c in a.items:
        piece = TensorElem((), (((), 1),))
        for (fn, fs), k in zip(maps, key):
            img = fn(k)
            if isinstance(img, MonoidElem):
                img = elem_as_tensor(img)
            if img.factors != tuple(fs):
                raise CarrierMismatch("factor map output does not match its declared factors")
            piece = tensor_concat(piece, img)
        result = tensor_add(result, tensor_scale(piece, c))
    return result
