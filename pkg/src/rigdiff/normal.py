"""Canonical forms for the rig freely built over a carrier monoid.

A value is a finite coefficient map from monomials to positive naturals; a
monomial is a sorted multiset of atoms; an atom is either a basis generator
of the carrier or the formal unary operation applied to a whole canonical
form.  Variables indexed by a sum split into sums of generator atoms during
normalization, so no atom ever mentions a composite carrier element, and two
expressions denote the same rig value exactly when their canonical forms are
structurally equal.

Every object carries a precomputed ``order_key``: a nested tuple that both
totally orders values of the same shape and encodes them injectively, which
keeps sorting, hashing and equality cheap and deterministic.
"""

from __future__ import annotations

import itertools
from typing import Any, Iterable, Mapping

from .carrier import (
    Carrier, CarrierMismatch, FreeMonoid, MonoidElem, MonoidHom, MonomialBasis,
    basis_sort_key,
)
from . import terms as t


class SelfMapDisabled(ValueError):
    """Raised when the formal unary operation is used over a carrier that
    was built with it switched off."""


class Atom:
    """One indivisible factor of a monomial."""

    __slots__ = ("order_key", "_hash")

    def __eq__(self, other):
        return isinstance(other, Atom) and self.order_key == other.order_key

    def __hash__(self):
        return self._hash


class GenAtom(Atom):
    """A basis generator of the carrier, as a multiplicative atom."""

    __slots__ = ("index",)

    def __init__(self, index):
        self.index = index
        self.order_key = (0, basis_sort_key(index))
        self._hash = hash(self.order_key)

    def __repr__(self):
        return f"GenAtom({self.index!r})"


class AppAtom(Atom):
    """The unary operation applied to a canonical form; opaque as a factor."""

    __slots__ = ("argument",)

    def __init__(self, argument: "NormalForm"):
        self.argument = argument
        self.order_key = (1, argument.order_key)
        self._hash = hash(self.order_key)

    def __repr__(self):
        return f"AppAtom({self.argument!r})"


class Monomial:
    """A finite multiset of atoms, kept sorted; the empty monomial is 1."""

    __slots__ = ("atoms", "order_key", "_hash")

    def __init__(self, atoms: Iterable[Atom], presorted: bool = False):
        atoms = tuple(atoms)
        if not presorted:
            atoms = tuple(sorted(atoms, key=lambda a: a.order_key))
        self.atoms = atoms
        self.order_key = (len(atoms), tuple(a.order_key for a in atoms))
        self._hash = hash(self.order_key)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.order_key == other.order_key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({list(self.atoms)!r})"

    @property
    def degree(self) -> int:
        return len(self.atoms)

    def atom_counts(self) -> list[tuple[Atom, int]]:
        return [(a, len(list(g))) for a, g in itertools.groupby(self.atoms)]

    def without(self, atom: Atom) -> "Monomial":
        """Remove one occurrence of an atom (which must be present)."""
        i = self.atoms.index(atom)
        return Monomial(self.atoms[:i] + self.atoms[i + 1:], presorted=True)


ONE_MONOMIAL = Monomial(())


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(a.atoms + b.atoms)


class NormalForm:
    """Canonical rig value: sorted (monomial, positive coefficient) pairs."""

    __slots__ = ("carrier", "items", "order_key", "_hash")

    def __init__(self, carrier: Carrier, items: tuple[tuple[Monomial, int], ...]):
        self.carrier = carrier
        self.items = items
        self.order_key = tuple((m.order_key, c) for m, c in items)
        self._hash = hash((carrier, self.order_key))

    @staticmethod
    def from_dict(carrier: Carrier, coeffs: Mapping[Monomial, int]) -> "NormalForm":
        items = [(m, c) for m, c in coeffs.items() if c != 0]
        if any(c < 0 for _, c in items):
            raise ValueError("coefficients must be naturals; no subtraction here")
        items.sort(key=lambda mc: mc[0].order_key)
        return NormalForm(carrier, tuple(items))

    @staticmethod
    def zero(carrier: Carrier) -> "NormalForm":
        return NormalForm(carrier, ())

    @staticmethod
    def one(carrier: Carrier) -> "NormalForm":
        return NormalForm(carrier, ((ONE_MONOMIAL, 1),))

    def coeff(self, mono: Monomial) -> int:
        for m, c in self.items:
            if m == mono:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.items

    def has_app_atoms(self) -> bool:
        return any(isinstance(a, AppAtom) for m, _ in self.items for a in m.atoms)

    def __eq__(self, other):
        return (isinstance(other, NormalForm)
                and self.carrier == other.carrier
                and self.order_key == other.order_key)

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        return nf_add(self, other)

    def __mul__(self, other):
        return nf_mul(self, other)

    def __str__(self):
        return render_nf(self)

    def __repr__(self):
        return f"<NormalForm {render_nf(self)} over {self.carrier}>"


def nf_from_monomial(carrier: Carrier, mono: Monomial, coeff: int = 1) -> NormalForm:
    if coeff == 0:
        return NormalForm.zero(carrier)
    return NormalForm(carrier, ((mono, coeff),))


def nf_var(elem: MonoidElem) -> NormalForm:
    """The variable indexed by a carrier element, as a canonical form.

    A composite index splits into its generator atoms with the same
    coefficients, so variables indexed by sums never appear as such.
    """
    items = tuple((Monomial((GenAtom(k),), presorted=True), c) for k, c in elem.items)
    return NormalForm(elem.carrier, items)


def nf_add(a: NormalForm, b: NormalForm) -> NormalForm:
    if a.carrier != b.carrier:
        raise CarrierMismatch(f"carrier mismatch: {a.carrier} vs {b.carrier}")
    acc = dict(a.items)
    for m, c in b.items:
        acc[m] = acc.get(m, 0) + c
    return NormalForm.from_dict(a.carrier, acc)


def nf_mul(a: NormalForm, b: NormalForm) -> NormalForm:
    if a.carrier != b.carrier:
        raise CarrierMismatch(f"carrier mismatch: {a.carrier} vs {b.carrier}")
    acc: dict[Monomial, int] = {}
    for ma, ca in a.items:
        for mb, cb in b.items:
            m = mono_mul(ma, mb)
            acc[m] = acc.get(m, 0) + ca * cb
    return NormalForm.from_dict(a.carrier, acc)


def nf_scale(a: NormalForm, n: int) -> NormalForm:
    if n < 0:
        raise ValueError("scalar must be a natural number")
    if n == 0:
        return NormalForm.zero(a.carrier)
    return NormalForm(a.carrier, tuple((m, n * c) for m, c in a.items))


def nf_selfmap(a: NormalForm) -> NormalForm:
    """Apply the formal unary operation: a fresh opaque atom, never expanded."""
    if not a.carrier.selfmap_enabled:
        raise SelfMapDisabled(f"carrier {a.carrier} was built without the unary operation")
    return NormalForm(a.carrier, ((Monomial((AppAtom(a),)), 1),))


def normalize(term: t.Term, carrier: Carrier) -> NormalForm:
    """Canonical form of a raw term over the given carrier."""
    if isinstance(term, t.Zero):
        return NormalForm.zero(carrier)
    if isinstance(term, t.One):
        return NormalForm.one(carrier)
    if isinstance(term, t.Var):
        if term.elem.carrier != carrier:
            raise CarrierMismatch(
                f"variable over {term.elem.carrier} normalized over {carrier}")
        return nf_var(term.elem)
    if isinstance(term, t.Sum):
        return nf_add(normalize(term.left, carrier), normalize(term.right, carrier))
    if isinstance(term, t.Prod):
        return nf_mul(normalize(term.left, carrier), normalize(term.right, carrier))
    if isinstance(term, t.App):
        return nf_selfmap(normalize(term.body, carrier))
    raise TypeError(f"not a term: {term!r}")


def apply_functor(h: MonoidHom, a: NormalForm) -> NormalForm:
    """Rig map induced by a carrier homomorphism.

    Generator atoms map to the variables of their images and the unary
    operation is carried along; the result is again canonical.
    """
    if a.carrier != h.domain:
        raise CarrierMismatch(f"value over {a.carrier} fed to hom from {h.domain}")
    out = NormalForm.zero(h.codomain)
    for mono, c in a.items:
        prod = NormalForm.one(h.codomain)
        for atom in mono.atoms:
            if isinstance(atom, GenAtom):
                img = nf_var(h.image_of(atom.index))
            else:
                img = nf_selfmap(apply_functor(h, atom.argument))
            prod = nf_mul(prod, img)
        out = nf_add(out, nf_scale(prod, c))
    return out


def fm_as_carrier(carrier: Carrier) -> MonomialBasis:
    """The constructed rig, viewed additively as a carrier one level up."""
    return MonomialBasis(carrier)


def as_monoid_element(a: NormalForm) -> MonoidElem:
    """A canonical form is literally a coefficient map over monomial keys."""
    return MonoidElem(MonomialBasis(a.carrier), a.items)


def from_monoid_element(e: MonoidElem) -> NormalForm:
    if not isinstance(e.carrier, MonomialBasis):
        raise CarrierMismatch(f"{e.carrier} does not hold monomial keys")
    return NormalForm(e.carrier.base, e.items)


# --- textual rendering (display syntax; machine round trips use the
# --- structured export below)

_VAR_LETTERS = "xyz"
_APP_LETTERS = "fgh"


def var_letter(level: int) -> str:
    return _VAR_LETTERS[level - 1] if level <= 3 else f"x{level}"


def app_letter(level: int) -> str:
    return _APP_LETTERS[level - 1] if level <= 3 else f"f{level}"


def render_atom(atom: Atom, level: int) -> str:
    if isinstance(atom, GenAtom):
        if isinstance(atom.index, int):
            return f"{var_letter(level)}[{atom.index}]"
        return f"{var_letter(level)}[{render_monomial(atom.index, level - 1)}]"
    return f"{app_letter(level)}({render_nf(atom.argument)})"


def render_monomial(mono: Monomial, level: int) -> str:
    if not mono.atoms:
        return "1"
    return "*".join(render_atom(a, level) for a in mono.atoms)


def render_nf(a: NormalForm) -> str:
    """Canonical text: coefficient-tagged monomials in key order."""
    if a.is_zero():
        return "0"
    level = a.carrier.level
    pieces = []
    for m, c in a.items:
        if not m.atoms:
            pieces.append(str(c))
        elif c == 1:
            pieces.append(render_monomial(m, level))
        else:
            pieces.append(f"{c}*{render_monomial(m, level)}")
    return " + ".join(pieces)


# --- structured export: lists and dicts that survive JSON exactly

def atom_to_obj(atom: Atom):
    if isinstance(atom, GenAtom):
        if isinstance(atom.index, int):
            return {"gen": atom.index}
        return {"gen": [atom_to_obj(a) for a in atom.index.atoms]}
    return {"app": nf_to_obj(atom.argument)}


def nf_to_obj(a: NormalForm) -> list:
    return [{"coeff": c, "atoms": [atom_to_obj(x) for x in m.atoms]}
            for m, c in a.items]


def _atom_from_obj(carrier: Carrier, obj) -> Atom:
    if "gen" in obj:
        key = obj["gen"]
        if isinstance(key, list):
            if not isinstance(carrier, MonomialBasis):
                raise CarrierMismatch("monomial generator key needs a monomial-basis carrier")
            key = Monomial(_atom_from_obj(carrier.base, a) for a in key)
        carrier.check_key(key)
        return GenAtom(key)
    if "app" in obj:
        return AppAtom(nf_from_obj(carrier, obj["app"]))
    raise ValueError(f"not an atom object: {obj!r}")


def nf_from_obj(carrier: Carrier, obj) -> NormalForm:
    acc: dict[Monomial, int] = {}
    for entry in obj:
        m = Monomial(_atom_from_obj(carrier, a) for a in entry["atoms"])
        acc[m] = acc.get(m, 0) + entry["coeff"]
    return NormalForm.from_dict(carrier, acc)


def tensor_to_obj(a) -> dict:
    """Structured view of a tensor element (one-way; for output and diffing)."""

    def key_obj(k):
        return k if isinstance(k, int) else [atom_to_obj(x) for x in k.atoms]

    return {
        "factors": [str(f) for f in a.factors],
        "items": [{"coeff": c, "key": [key_obj(k) for k in key]}
                  for key, c in a.items],
    }
