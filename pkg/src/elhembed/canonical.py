"""
Finite canonical model of a normalized ELH ontology.

The domain holds the individuals of the ABox plus one element per concept
of the forms ⊤, A, A1⊓A2 (ordered pairs) and ∃r.B with B a name or ⊤.
The normal-form axioms over sig(O) that the model satisfies are exactly
the ones O entails.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple, Union

from .errors import BottomNotSupported, NotNormalized
from .interpretation import FiniteInterpretation, satisfies
from .reasoner import Reasoner, get_reasoner
from .syntax import (
    CI, RI, TOP, Atomic, Concept, ConceptAssertion, Conj, Exists, Ontology,
    RoleAssertion, contains_bottom, is_normalized,
)
from .universe import Mismatch, axiom_universe

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Named:
    name: str

    @property
    def label(self) -> str:
        return self.name


@dataclass(frozen=True)
class CTop:
    @property
    def concept(self) -> Concept:
        return TOP

    @property
    def label(self) -> str:
        return "c_⊤"


@dataclass(frozen=True)
class CAtom:
    name: str

    @property
    def concept(self) -> Concept:
        return Atomic(self.name)

    @property
    def label(self) -> str:
        return f"c_{{{self.name}}}"


@dataclass(frozen=True)
class CConj:
    left: str
    right: str

    @property
    def concept(self) -> Concept:
        return Conj(Atomic(self.left), Atomic(self.right))

    @property
    def label(self) -> str:
        return f"c_{{{self.left}⊓{self.right}}}"


@dataclass(frozen=True)
class CExists:
    """c_{∃r.B}; ``filler`` is a concept name or None for ⊤."""

    role: str
    filler: Optional[str]

    @property
    def target(self) -> Union[CAtom, CTop]:
        return CTop() if self.filler is None else CAtom(self.filler)

    @property
    def concept(self) -> Concept:
        return Exists(self.role, self.target.concept)

    @property
    def label(self) -> str:
        return f"c_{{∃{self.role}.{self.filler or '⊤'}}}"


CanonicalElement = Union[Named, CTop, CAtom, CConj, CExists]
Unnamed = Union[CTop, CAtom, CConj, CExists]


def canonical_elements(o: Ontology) -> List[CanonicalElement]:
    """
    Domain of the canonical model in its fixed order: individuals, c_⊤,
    c_A, c_{A1⊓A2} by (A1, A2), then c_{∃r.B} by (r, B) with ⊤ last per role.
    """
    names = o.concept_names
    elements: List[CanonicalElement] = [Named(a) for a in o.individual_names]
    elements.append(CTop())
    elements += [CAtom(A) for A in names]
    elements += [CConj(A1, A2) for A1 in names for A2 in names]
    for r in o.role_names:
        elements += [CExists(r, B) for B in names]
        elements.append(CExists(r, None))
    return elements


def canonical_size(o: Ontology) -> int:
    """|N_I| + (|N_C| + 1) + |N_C|² + |N_R|·(|N_C| + 1)."""
    i, c, r = len(o.individual_names), len(o.concept_names), len(o.role_names)
    return i + (c + 1) + c * c + r * (c + 1)


def _check_input(o: Ontology) -> None:
    for axiom in o.axioms:
        if contains_bottom(axiom):
            raise BottomNotSupported(str(axiom))
    if not is_normalized(o):
        raise NotNormalized("The canonical model is defined for normalized ontologies")


def build_canonical(o: Ontology, reasoner: Optional[Reasoner] = None) -> FiniteInterpretation:
    """
    Build the canonical model I_O.

    Parameters:
    -----------
    o : Ontology
        Normalized and ⊥-free.
    reasoner : Reasoner, optional
        Oracle to use; by default the shared one for ``o``.

    Returns:
    --------
    FiniteInterpretation
        Element ids follow :func:`canonical_elements`; labels name them.

    Raises:
    -------
    BottomNotSupported, NotNormalized
    """
    _check_input(o)
    oracle = reasoner or get_reasoner(o)
    elements = canonical_elements(o)
    ids = {e: k for k, e in enumerate(elements)}
    unnamed: List[Unnamed] = [e for e in elements if not isinstance(e, Named)]
    names = o.concept_names
    fillers: List[Union[CAtom, CTop]] = [CAtom(B) for B in names] + [CTop()]

    concepts: Dict[str, Set[int]] = {A: set() for A in names}
    for A in names:
        for a in o.individual_names:
            if oracle.entails(ConceptAssertion(Atomic(A), a)):
                concepts[A].add(ids[Named(a)])
        for e in unnamed:
            if oracle.entails(CI(e.concept, Atomic(A))):
                concepts[A].add(ids[e])

    # atoms A (or ⊤) with T ⊨ A ⊑ ∃r.B, per role
    existential: Dict[str, List[Tuple[Concept, Union[CAtom, CTop]]]] = {}
    for r in o.role_names:
        existential[r] = [(A, B) for A in [Atomic(x) for x in names] + [TOP]
                          for B in fillers if oracle.entails(CI(A, Exists(r, B.concept)))]

    roles: Dict[str, Set[Tuple[int, int]]] = {r: set() for r in o.role_names}
    for r in o.role_names:
        pairs = roles[r]
        for a in o.individual_names:
            for b in o.individual_names:
                if oracle.entails(RoleAssertion(r, a, b)):
                    pairs.add((ids[Named(a)], ids[Named(b)]))
            for B in fillers:
                if oracle.entails(ConceptAssertion(Exists(r, B.concept), a)):
                    pairs.add((ids[Named(a)], ids[B]))
        for s in o.role_names:
            if oracle.entails(RI(s, r)):
                for B in fillers:
                    filler = None if isinstance(B, CTop) else B.name
                    pairs.add((ids[CExists(s, filler)], ids[B]))
        for e in unnamed:
            for A, B in existential[r]:
                if A == TOP or oracle.entails(CI(e.concept, A)):
                    pairs.add((ids[e], ids[B]))

    i = FiniteInterpretation(
        size=len(elements),
        individuals={a: ids[Named(a)] for a in o.individual_names},
        concepts=concepts,
        roles=roles,
        labels=[e.label for e in elements],
    )
    logger.info("canonical model: %d elements, %d concept and %d role memberships",
                i.size, sum(len(v) for v in concepts.values()),
                sum(len(v) for v in roles.values()))
    return i


def verify_canonical(o: Ontology, i: FiniteInterpretation, include_top: bool = False,
                     limit: Optional[int] = None) -> List[Mismatch]:
    """
    Compare ``i`` against the oracle on every normal-form axiom over sig(o).

    Returns:
    --------
    list of Mismatch
        Empty when ``i`` is a canonical model.
    """
    oracle = get_reasoner(o)
    mismatches = []
    checked = 0
    for axiom in axiom_universe(o.signature, include_top=include_top, limit=limit):
        observed = satisfies(i, axiom)
        entailed = oracle.entails(axiom)
        checked += 1
        if observed != entailed:
            mismatches.append(Mismatch(axiom, observed, entailed))
    logger.debug("verified %d axioms, %d mismatches", checked, len(mismatches))
    return mismatches
