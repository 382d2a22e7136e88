"""
Abstract syntax for ELH ontologies.

Concepts and axioms are immutable values. Names are plain strings over
[A-Za-z0-9_]; conjunction is binary and n-ary input is right-folded.
The string form of every node is the functional ``.elh`` syntax, so
``str(axiom)`` is also its serialization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, NamedTuple, Tuple, Union

from .errors import ReservedNameError

ConceptName = str
RoleName = str
IndividualName = str

NAME_PATTERN = re.compile(r"^[A-Za-z0-9_]+$")
FRESH_PREFIX = "N_"
CONCEPT_KEYWORDS = frozenset({"Top", "Bottom"})


def is_valid_name(name: str) -> bool:
    """Return True if ``name`` is a non-empty identifier over [A-Za-z0-9_]."""
    return isinstance(name, str) and bool(NAME_PATTERN.match(name))


def is_valid_concept_name(name: str) -> bool:
    """Like :func:`is_valid_name`, but ``Top`` and ``Bottom`` are keywords."""
    return is_valid_name(name) and name not in CONCEPT_KEYWORDS


class Concept:
    """Base class of ELH concepts."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Concept):
    def __str__(self) -> str:
        return "Top"


@dataclass(frozen=True)
class Bottom(Concept):
    def __str__(self) -> str:
        return "Bottom"


@dataclass(frozen=True)
class Atomic(Concept):
    name: ConceptName

    def __post_init__(self):
        if self.name in CONCEPT_KEYWORDS:
            raise ReservedNameError(f"'{self.name}' is a keyword, not a concept name")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Conj(Concept):
    left: Concept
    right: Concept

    def __str__(self) -> str:
        # And(A And(B C)) prints flat as And(A B C); parsing folds it back.
        parts = []
        node: Concept = self
        while isinstance(node, Conj):
            parts.append(str(node.left))
            node = node.right
        parts.append(str(node))
        return f"And({' '.join(parts)})"


@dataclass(frozen=True)
class Exists(Concept):
    role: RoleName
    filler: Concept

    def __str__(self) -> str:
        return f"Some({self.role} {self.filler})"


TOP = Top()
BOTTOM = Bottom()


def conjunction(concepts: Iterable[Concept]) -> Concept:
    """Right-fold a non-empty sequence of concepts into binary conjunctions."""
    items = list(concepts)
    if not items:
        raise ValueError("conjunction needs at least one concept")
    result = items[-1]
    for concept in reversed(items[:-1]):
        result = Conj(concept, result)
    return result


class Axiom:
    """Base class of ELH axioms."""

    __slots__ = ()


@dataclass(frozen=True)
class CI(Axiom):
    """Concept inclusion ``lhs ⊑ rhs``."""

    lhs: Concept
    rhs: Concept

    def __str__(self) -> str:
        return f"SubClassOf({self.lhs} {self.rhs})"


@dataclass(frozen=True)
class RI(Axiom):
    """Role inclusion ``sub ⊑ sup``."""

    sub: RoleName
    sup: RoleName

    def __str__(self) -> str:
        return f"SubRoleOf({self.sub} {self.sup})"


@dataclass(frozen=True)
class ConceptAssertion(Axiom):
    """Concept assertion ``C(a)``; with an arbitrary C this is an instance query."""

    concept: Concept
    individual: IndividualName

    def __str__(self) -> str:
        return f"ClassAssertion({self.concept} {self.individual})"


@dataclass(frozen=True)
class RoleAssertion(Axiom):
    """Role assertion ``r(a, b)``."""

    role: RoleName
    subject: IndividualName
    object: IndividualName

    def __str__(self) -> str:
        return f"RoleAssertion({self.role} {self.subject} {self.object})"


TBoxAxiom = Union[CI, RI]
Assertion = Union[ConceptAssertion, RoleAssertion]


class Signature(NamedTuple):
    """Names of an ontology, each block sorted lexicographically."""

    concepts: Tuple[ConceptName, ...] = ()
    roles: Tuple[RoleName, ...] = ()
    individuals: Tuple[IndividualName, ...] = ()

    @classmethod
    def of(cls, concepts: Iterable[str] = (), roles: Iterable[str] = (),
           individuals: Iterable[str] = ()) -> "Signature":
        return cls(tuple(sorted(set(concepts))), tuple(sorted(set(roles))),
                   tuple(sorted(set(individuals))))

    def union(self, other: "Signature") -> "Signature":
        return Signature.of(self.concepts + other.concepts, self.roles + other.roles,
                            self.individuals + other.individuals)


# -- name collection ---------------------------------------------------------

def iter_subconcepts(concept: Concept) -> Iterator[Concept]:
    """Yield ``concept`` and all of its subconcepts, pre-order."""
    stack = [concept]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Conj):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Exists):
            stack.append(node.filler)


def concept_signature(concept: Concept) -> Signature:
    names, roles = set(), set()
    for node in iter_subconcepts(concept):
        if isinstance(node, Atomic):
            names.add(node.name)
        elif isinstance(node, Exists):
            roles.add(node.role)
    return Signature.of(names, roles)


def axiom_signature(axiom: Axiom) -> Signature:
    if isinstance(axiom, CI):
        return concept_signature(axiom.lhs).union(concept_signature(axiom.rhs))
    if isinstance(axiom, RI):
        return Signature.of(roles=(axiom.sub, axiom.sup))
    if isinstance(axiom, ConceptAssertion):
        return concept_signature(axiom.concept).union(
            Signature.of(individuals=(axiom.individual,)))
    if isinstance(axiom, RoleAssertion):
        return Signature.of(roles=(axiom.role,),
                            individuals=(axiom.subject, axiom.object))
    raise TypeError(f"Not an axiom: {axiom!r}")


def contains_bottom(item: Union[Concept, Axiom]) -> bool:
    """Return True if the bottom concept occurs anywhere in ``item``."""
    if isinstance(item, Concept):
        return any(isinstance(node, Bottom) for node in iter_subconcepts(item))
    if isinstance(item, CI):
        return contains_bottom(item.lhs) or contains_bottom(item.rhs)
    if isinstance(item, ConceptAssertion):
        return contains_bottom(item.concept)
    return False


# -- ontology ------------------------------------------------------------------

@dataclass(frozen=True)
class Ontology:
    """
    An ELH ontology: a TBox of CIs and RIs plus an ABox of assertions.

    Duplicates collapse because both parts are frozensets. Equality is
    structural.
    """

    tbox: FrozenSet[TBoxAxiom] = field(default_factory=frozenset)
    abox: FrozenSet[Assertion] = field(default_factory=frozenset)

    @classmethod
    def from_axioms(cls, axioms: Iterable[Axiom]) -> "Ontology":
        tbox, abox = set(), set()
        for axiom in axioms:
            if isinstance(axiom, (CI, RI)):
                tbox.add(axiom)
            elif isinstance(axiom, (ConceptAssertion, RoleAssertion)):
                abox.add(axiom)
            else:
                raise TypeError(f"Not an axiom: {axiom!r}")
        return cls(frozenset(tbox), frozenset(abox))

    @property
    def axioms(self) -> Tuple[Axiom, ...]:
        """All axioms, sorted by their textual form."""
        return tuple(sorted(self.tbox | self.abox, key=str))

    @cached_property
    def signature(self) -> Signature:
        result = Signature()
        for axiom in self.tbox | self.abox:
            result = result.union(axiom_signature(axiom))
        return result

    @property
    def concept_names(self) -> Tuple[ConceptName, ...]:
        return self.signature.concepts

    @property
    def role_names(self) -> Tuple[RoleName, ...]:
        return self.signature.roles

    @property
    def individual_names(self) -> Tuple[IndividualName, ...]:
        return self.signature.individuals

    def with_axioms(self, axioms: Iterable[Axiom]) -> "Ontology":
        return Ontology.from_axioms(list(self.tbox | self.abox) + list(axioms))

    def __len__(self) -> int:
        return len(self.tbox) + len(self.abox)


def signature(o: Ontology) -> Signature:
    """
    Names occurring in ``o``.

    Returns:
    --------
    Signature
        (concept names, role names, individual names), each sorted
        lexicographically. ⊤ and ⊥ are not concept names.
    """
    return o.signature


# -- normal forms --------------------------------------------------------------

def is_atom(concept: Concept, allow_top: bool = True) -> bool:
    """A concept name, or ⊤ when ``allow_top`` is set."""
    return isinstance(concept, Atomic) or (allow_top and isinstance(concept, Top))


def is_normal_form_ci(axiom: Axiom, strict: bool = False) -> bool:
    """
    Check whether a CI has one of the shapes A⊑B, A1⊓A2⊑B, ∃r.A⊑B, A⊑∃r.B.

    Parameters:
    -----------
    axiom : Axiom
        Any axiom; non-CIs are never in CI normal form.
    strict : bool, default=False
        Restrict atoms to concept names. By default ⊤ is also accepted in
        atom positions, which is what normalization produces for inputs
        mentioning ⊤.
    """
    if not isinstance(axiom, CI):
        return False
    allow_top = not strict
    lhs, rhs = axiom.lhs, axiom.rhs
    if isinstance(rhs, Exists):
        return is_atom(lhs, allow_top) and is_atom(rhs.filler, allow_top)
    if not is_atom(rhs, allow_top):
        return False
    if is_atom(lhs, allow_top):
        return True
    if isinstance(lhs, Conj):
        return is_atom(lhs.left, allow_top) and is_atom(lhs.right, allow_top)
    if isinstance(lhs, Exists):
        return is_atom(lhs.filler, allow_top)
    return False


def is_iq(axiom: Axiom) -> bool:
    return isinstance(axiom, (ConceptAssertion, RoleAssertion))


def is_normal_form_concept(concept: Concept, allow_top: bool = True) -> bool:
    """A, A⊓B or ∃r.A with atoms as in :func:`is_atom`."""
    if is_atom(concept, allow_top):
        return True
    if isinstance(concept, Conj):
        return is_atom(concept.left, allow_top) and is_atom(concept.right, allow_top)
    if isinstance(concept, Exists):
        return is_atom(concept.filler, allow_top)
    return False


def is_normal_form_iq(axiom: Axiom, strict: bool = False) -> bool:
    """True for role assertions and for C(a) with C of shape A, A⊓B or ∃r.A."""
    if isinstance(axiom, RoleAssertion):
        return True
    if isinstance(axiom, ConceptAssertion):
        return is_normal_form_concept(axiom.concept, allow_top=not strict)
    return False


def is_normal_form(axiom: Axiom, strict: bool = False) -> bool:
    """Normal-form CI, any RI, or normal-form IQ."""
    if isinstance(axiom, RI):
        return True
    if isinstance(axiom, CI):
        return is_normal_form_ci(axiom, strict)
    return is_normal_form_iq(axiom, strict)


def is_normalized(o: Ontology) -> bool:
    """
    True if ``o`` can be handed to the reasoner as is: ⊥-free, TBox in
    normal form, and concept assertions only over concept names or ⊤.
    """
    for axiom in o.tbox:
        if contains_bottom(axiom):
            return False
        if isinstance(axiom, CI) and not is_normal_form_ci(axiom):
            return False
    for axiom in o.abox:
        if isinstance(axiom, ConceptAssertion) and not is_atom(axiom.concept):
            return False
    return True


def mentions_top(axiom: Axiom) -> bool:
    """True if ⊤ occurs in a CI or concept assertion."""
    if isinstance(axiom, CI):
        concepts = (axiom.lhs, axiom.rhs)
    elif isinstance(axiom, ConceptAssertion):
        concepts = (axiom.concept,)
    else:
        return False
    return any(isinstance(node, Top)
               for concept in concepts for node in iter_subconcepts(concept))
