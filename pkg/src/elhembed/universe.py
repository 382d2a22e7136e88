"""
Enumeration of the normal-form axioms over a signature.

Families, in this order: A(a), (A1⊓A2)(a), (∃r.A)(a), r(a,b), A⊑B,
A1⊓A2⊑B, ∃r.A⊑B, A⊑∃r.B, r⊑s. Conjunctions use ordered pairs.
"""

from typing import Dict, Iterator, List, NamedTuple, Optional

from .syntax import (
    CI, RI, TOP, Atomic, Axiom, Concept, ConceptAssertion, Conj, Exists,
    RoleAssertion, Signature,
)


class Mismatch(NamedTuple):
    """An axiom on which a model and the entailment oracle disagree."""

    axiom: Axiom
    observed: bool
    entailed: bool

    def to_dict(self) -> Dict:
        return {"axiom": str(self.axiom), "observed": self.observed,
                "entailed": self.entailed}


def axiom_universe(sig: Signature, include_top: bool = False,
                   limit: Optional[int] = None) -> Iterator[Axiom]:
    """
    Stream every normal-form IQ, CI and RI over ``sig``.

    Parameters:
    -----------
    sig : Signature
    include_top : bool, default=False
        Also let ⊤ stand in left-hand-side and filler positions.
    limit : int, optional
        Stop after this many axioms.
    """
    count = 0
    for axiom in _families(sig, include_top):
        if limit is not None and count >= limit:
            return
        count += 1
        yield axiom


def universe_size(sig: Signature, include_top: bool = False) -> int:
    """Number of axioms :func:`axiom_universe` yields without a limit."""
    c, r, i = len(sig.concepts), len(sig.roles), len(sig.individuals)
    left = c + 1 if include_top else c
    iqs = c * i + c * c * i + r * left * i + r * i * i
    cis = left * c + left * left * c + r * left * c + left * r * left
    return iqs + cis + r * r


def _families(sig: Signature, include_top: bool) -> Iterator[Axiom]:
    names: List[Concept] = [Atomic(name) for name in sig.concepts]
    left: List[Concept] = names + [TOP] if include_top else names

    for a in sig.individuals:
        for A in names:
            yield ConceptAssertion(A, a)
    for a in sig.individuals:
        for A1 in names:
            for A2 in names:
                yield ConceptAssertion(Conj(A1, A2), a)
    for a in sig.individuals:
        for r in sig.roles:
            for A in left:
                yield ConceptAssertion(Exists(r, A), a)
    for r in sig.roles:
        for a in sig.individuals:
            for b in sig.individuals:
                yield RoleAssertion(r, a, b)

    for A in left:
        for B in names:
            yield CI(A, B)
    for A1 in left:
        for A2 in left:
            for B in names:
                yield CI(Conj(A1, A2), B)
    for r in sig.roles:
        for A in left:
            for B in names:
                yield CI(Exists(r, A), B)
    for A in left:
        for r in sig.roles:
            for B in left:
                yield CI(A, Exists(r, B))

    for r in sig.roles:
        for s in sig.roles:
            yield RI(r, s)
