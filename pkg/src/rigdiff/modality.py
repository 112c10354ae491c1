"""The unit, multiplication and monoid structure of the rig construction,
plus evaluation into concrete targets.

The constructed rig is a monad on carriers: ``unit`` embeds a carrier
element as its variable, and ``mu`` collapses one level of construction by
reading level-2 generator atoms as the level-1 values they name.  ``eta``
and ``nabla`` expose the multiplicative structure through tensors, and
``evaluate`` maps a level-1 value into any rig of naturals equipped with a
chosen unary map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .carrier import (
    Carrier, CarrierMismatch, MonoidElem, MonomialBasis, TensorElem,
    elem_as_tensor,
)
from .normal import (
    GenAtom, Monomial, NormalForm, as_monoid_element, mono_mul,
    nf_add, nf_from_monomial, nf_mul, nf_scale, nf_selfmap, nf_var, normalize,
)
from .terms import Term


def unit(elem: MonoidElem) -> NormalForm:
    """The variable of a carrier element; additive in the element."""
    return nf_var(elem)


def eta(carrier: Carrier, n: int) -> NormalForm:
    """The natural number n as a rig value."""
    return nf_scale(NormalForm.one(carrier), n)


def nf_as_tensor(a: NormalForm) -> TensorElem:
    """A rig value as a one-factor tensor over its own additive carrier."""
    return elem_as_tensor(as_monoid_element(a))


def nabla(t: TensorElem) -> NormalForm:
    """Multiplication as a map out of the two-factor tensor."""
    if len(t.factors) != 2 or t.factors[0] != t.factors[1] \
            or not isinstance(t.factors[0], MonomialBasis):
        raise CarrierMismatch("nabla needs two equal monomial-basis factors")
    base = t.factors[0].base
    acc: dict[Monomial, int] = {}
    for (m1, m2), c in t.items:
        m = mono_mul(m1, m2)
        acc[m] = acc.get(m, 0) + c
    return NormalForm.from_dict(base, acc)


def nabla_at(t: TensorElem, pos: int) -> TensorElem:
    """Multiply two adjacent tensor factors of the same rig into one."""
    if not (0 <= pos < len(t.factors) - 1):
        raise ValueError("position must address two adjacent factors")
    f1, f2 = t.factors[pos], t.factors[pos + 1]
    if f1 != f2 or not isinstance(f1, MonomialBasis):
        raise CarrierMismatch("adjacent factors must be the same monomial-basis carrier")
    factors = t.factors[:pos + 1] + t.factors[pos + 2:]
    acc: dict[tuple, int] = {}
    for key, c in t.items:
        merged = key[:pos] + (mono_mul(key[pos], key[pos + 1]),) + key[pos + 2:]
        acc[merged] = acc.get(merged, 0) + c
    return TensorElem.from_dict(factors, acc)


def mu(a: NormalForm) -> NormalForm:
    """Collapse one construction level.

    Level-2 generator atoms name level-1 monomials and are read as those
    values; the level-2 unary operation becomes the level-1 one.
    """
    if not isinstance(a.carrier, MonomialBasis):
        raise CarrierMismatch(f"mu needs a level >= 2 value, got one over {a.carrier}")
    base = a.carrier.base
    out = NormalForm.zero(base)
    for mono, c in a.items:
        prod = NormalForm.one(base)
        for atom in mono.atoms:
            if isinstance(atom, GenAtom):
                img = nf_from_monomial(base, atom.index)
            else:
                img = nf_selfmap(mu(atom.argument))
            prod = nf_mul(prod, img)
        out = nf_add(out, nf_scale(prod, c))
    return out


@dataclass(frozen=True)
class RigWithSelfMap:
    """Target for evaluation: the naturals with a chosen unary map."""

    name: str
    selfmap: Callable[[int], int]


CATALOG: dict[str, RigWithSelfMap] = {
    "identity": RigWithSelfMap("identity", lambda v: v),
    "successor": RigWithSelfMap("successor", lambda v: v + 1),
    "square": RigWithSelfMap("square", lambda v: v * v),
    "double": RigWithSelfMap("double", lambda v: 2 * v),
    "const-one": RigWithSelfMap("const-one", lambda v: 1),
    "const-zero": RigWithSelfMap("const-zero", lambda v: 0),
}


def evaluate(a: NormalForm, rig: RigWithSelfMap, phi: Mapping[object, int]) -> int:
    """Evaluate a value in the naturals, sending basis generator k to phi[k]
    and the formal unary operation to the rig's map."""
    total = 0
    for mono, c in a.items:
        prod = 1
        for atom in mono.atoms:
            if isinstance(atom, GenAtom):
                if atom.index not in phi:
                    raise ValueError(f"phi gives no image for generator {atom.index!r}")
                prod *= phi[atom.index]
            else:
                prod *= rig.selfmap(evaluate(atom.argument, rig, phi))
        total += c * prod
    return total


def rig_from_term(term: Term, carrier: Carrier) -> RigWithSelfMap:
    """A one-variable expression as a unary map, evaluated pointwise.

    The expression must be over a rank-1 carrier and free of the formal
    unary operation (which it would otherwise have to define in terms of
    itself).
    """
    if getattr(carrier, "rank", None) != 1:
        raise ValueError("a self-map expression needs a rank-1 carrier")
    body = normalize(term, carrier)
    if body.has_app_atoms():
        raise ValueError("a self-map expression cannot use the unary operation")
    identity = CATALOG["identity"]
    return RigWithSelfMap("user", lambda v: evaluate(body, identity, {0: v}))
