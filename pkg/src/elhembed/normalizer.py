"""
Structural normalization of ELH ontologies.

Complex subconcepts are replaced by fresh names ``N_0, N_1, ...`` that are
defined in both directions (N ⊑ C and C ⊑ N, split into normal-form
pieces), so entailments over the input signature are preserved. Fresh names
are handed out in the order axioms are visited, and axioms are visited in
their sorted textual order, which makes the output reproducible.
"""

import logging
import re
from typing import Dict, List, Set

from .errors import BottomNotSupported
from .syntax import (
    CI, RI, Atomic, Axiom, Concept, ConceptAssertion, Conj, Exists,
    FRESH_PREFIX, Ontology, RoleAssertion, contains_bottom, is_atom,
)

logger = logging.getLogger(__name__)

_FRESH_PATTERN = re.compile(rf"^{FRESH_PREFIX}(\d+)$")


class Normalizer:
    """
    Rewrites an ontology into normalized ELH.

    One instance normalizes one ontology; identical complex concepts share
    a single fresh name.
    """

    def __init__(self, o: Ontology):
        self.ontology = o
        self._counter = self._first_free_index(o)
        self._names: Dict[Concept, Atomic] = {}
        self._output: Set[Axiom] = set()

    @staticmethod
    def _first_free_index(o: Ontology) -> int:
        used = [int(m.group(1)) for name in o.concept_names
                for m in [_FRESH_PATTERN.match(name)] if m]
        return max(used) + 1 if used else 0

    def _fresh(self) -> Atomic:
        name = Atomic(f"{FRESH_PREFIX}{self._counter}")
        self._counter += 1
        return name

    def name_of(self, concept: Concept) -> Concept:
        """Return an atom (name or ⊤) equivalent to ``concept``."""
        if is_atom(concept):
            return concept
        if concept in self._names:
            return self._names[concept]
        shape = self._flatten(concept)
        fresh = self._fresh()
        self._names[concept] = fresh
        # fresh ⊑ shape
        if isinstance(shape, Conj):
            self._emit(CI(fresh, shape.left))
            self._emit(CI(fresh, shape.right))
        else:
            self._emit(CI(fresh, shape))
        # shape ⊑ fresh
        self._emit(CI(shape, fresh))
        return fresh

    def _flatten(self, concept: Concept) -> Concept:
        """Rewrite the top level of ``concept`` into A, A1⊓A2 or ∃r.A."""
        if is_atom(concept):
            return concept
        if isinstance(concept, Conj):
            return Conj(self.name_of(concept.left), self.name_of(concept.right))
        if isinstance(concept, Exists):
            return Exists(concept.role, self.name_of(concept.filler))
        raise TypeError(f"Unsupported concept: {concept!r}")

    def _emit(self, axiom: Axiom) -> None:
        self._output.add(axiom)

    def _inclusion(self, lhs: Concept, rhs: Concept) -> None:
        if isinstance(rhs, Conj):
            self._inclusion(lhs, rhs.left)
            self._inclusion(lhs, rhs.right)
            return
        if isinstance(rhs, Exists):
            left = self.name_of(lhs)
            self._emit(CI(left, Exists(rhs.role, self.name_of(rhs.filler))))
            return
        self._emit(CI(self._flatten(lhs), rhs))

    def _assertion(self, concept: Concept, individual: str) -> None:
        if isinstance(concept, Conj):
            self._assertion(concept.left, individual)
            self._assertion(concept.right, individual)
            return
        self._emit(ConceptAssertion(self.name_of(concept), individual))

    def run(self) -> Ontology:
        for axiom in self.ontology.axioms:
            if contains_bottom(axiom):
                raise BottomNotSupported(str(axiom))
            if isinstance(axiom, CI):
                self._inclusion(axiom.lhs, axiom.rhs)
            elif isinstance(axiom, ConceptAssertion):
                self._assertion(axiom.concept, axiom.individual)
            elif isinstance(axiom, (RI, RoleAssertion)):
                self._output.add(axiom)
        result = Ontology.from_axioms(self._output)
        logger.debug("normalized %d axioms into %d (%d fresh names)",
                     len(self.ontology), len(result), len(self._names))
        return result


def normalize(o: Ontology) -> Ontology:
    """
    Normalize an ontology.

    Parameters:
    -----------
    o : Ontology
        A ⊥-free ELH ontology.

    Returns:
    --------
    Ontology
        TBox made of A⊑B, A1⊓A2⊑B, ∃r.A⊑B, A⊑∃r.B and RIs; ABox made of
        atomic concept assertions and role assertions. Already normalized
        input comes back unchanged.

    Raises:
    -------
    BottomNotSupported
        If ⊥ occurs anywhere in ``o``.
    """
    return Normalizer(o).run()


def fresh_names(o: Ontology) -> List[str]:
    """Concept names of ``o`` that carry the reserved fresh prefix."""
    return [name for name in o.concept_names if name.startswith(FRESH_PREFIX)]

