"""The countable family of derivative operators on canonical forms.

``d_n`` differentiates by the Leibniz expansion over each monomial: every
atom occurrence contributes the rest of its monomial tensored with the
atom's own derivative.  A generator atom differentiates to 1 tensor the
generator; an atom of the formal unary operation differentiates to n times
the derivative of its argument, and that single weight is the only place
the family members differ, so they all agree on operation-free values and
genuinely differ elsewhere.
"""

from __future__ import annotations

from .carrier import MonomialBasis, TensorElem
from .normal import AppAtom, GenAtom, Monomial, NormalForm, mono_mul, nf_from_monomial
from .carrier import FreeMonoid


class SymmetricModeError(ValueError):
    """Raised when an operation-free computation meets an operation atom."""


def d_n(a: NormalForm, n: int) -> TensorElem:
    """n-th family member of the derivative, value tensor carrier element."""
    if n < 0:
        raise ValueError("the family is indexed by naturals")
    carrier = a.carrier
    factors = (MonomialBasis(carrier), carrier)
    acc: dict[tuple, int] = {}
    for mono, c in a.items:
        for atom, mult in mono.atom_counts():
            rest = mono.without(atom)
            if isinstance(atom, GenAtom):
                key = (rest, atom.index)
                acc[key] = acc.get(key, 0) + c * mult
            elif n != 0:
                for (part, gen), c2 in d_n(atom.argument, n).items:
                    key = (mono_mul(rest, part), gen)
                    acc[key] = acc.get(key, 0) + c * mult * n * c2
    return TensorElem.from_dict(factors, acc)


def d_n_level2(a: NormalForm, n: int) -> TensorElem:
    """The same derivative one level up, for values over a constructed rig."""
    if not isinstance(a.carrier, MonomialBasis):
        raise ValueError(f"level-2 derivative needs a level >= 2 value, got {a.carrier}")
    return d_n(a, n)


def sym_derive(a: NormalForm) -> TensorElem:
    """Derivative on plain polynomials; rejects operation atoms instead of
    weighting them, and is the common value of the whole family there."""
    if a.has_app_atoms():
        raise SymmetricModeError("value contains the unary operation")
    return d_n(a, 0)


def seeded_derivation(a: NormalForm, seed: NormalForm) -> NormalForm:
    """Single-variable derivation sending the generator to ``seed``:
    c*x^k maps to c*k*x^(k-1)*seed, extended additively."""
    carrier = a.carrier
    if not isinstance(carrier, FreeMonoid) or carrier.rank != 1:
        raise ValueError("seeded derivation needs a rank-1 carrier")
    if a.has_app_atoms() or seed.has_app_atoms():
        raise SymmetricModeError("seeded derivation works on operation-free values")
    if seed.carrier != carrier:
        raise ValueError("seed must live over the same carrier")
    out = NormalForm.zero(carrier)
    for mono, c in a.items:
        k = mono.degree
        if k == 0:
            continue
        rest = Monomial(mono.atoms[:-1], presorted=True)
        piece = nf_from_monomial(carrier, rest, c * k)
        out = out + piece * seed
    return out
