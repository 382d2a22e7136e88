"""
Utility functions: fixtures, digests and JSON output.
"""

import hashlib
import json
from typing import Any, Optional, Sequence, TextIO

import numpy as np

from .interpretation import FiniteInterpretation
from .parser import serialize
from .syntax import (
    CI, RI, TOP, Atomic, Concept, ConceptAssertion, Conj, Exists, Ontology, RoleAssertion,
)


def example_ontology() -> Ontology:
    """O_ex = {A ⊑ B, A(a), B(b), r(a, b)}."""
    A, B = Atomic("A"), Atomic("B")
    return Ontology.from_axioms([
        CI(A, B),
        ConceptAssertion(A, "a"),
        ConceptAssertion(B, "b"),
        RoleAssertion("r", "a", "b"),
    ])


def example_interpretation() -> FiniteInterpretation:
    """
    I_ex: Δ = {d, e}, a ↦ d, b ↦ e, A = {d}, B = {d, e}, r = {(d, e)}.
    """
    return FiniteInterpretation(
        size=2,
        individuals={"a": 0, "b": 1},
        concepts={"A": {0}, "B": {0, 1}},
        roles={"r": {(0, 1)}},
        labels=["d", "e"],
    )


def random_normalized_ontology(seed: int, max_concepts: int = 4, max_roles: int = 2,
                               max_individuals: int = 3, max_axioms: int = 8) -> Ontology:
    """
    Generate a small ⊤-free normalized ontology.

    Parameters:
    -----------
    seed : int
        Seed for ``numpy.random.default_rng``.
    max_concepts, max_roles, max_individuals : int
        Sizes of the name pools the axioms draw from.
    max_axioms : int
        Upper bound on the number of generated axioms (duplicates collapse).

    Returns:
    --------
    Ontology
        Concept names ``A0, A1, ...``, roles ``r0, ...``, individuals
        ``a0, ...``; the signature is whatever the axioms mention.
    """
    rng = np.random.default_rng(seed)
    concepts = [f"A{k}" for k in range(int(rng.integers(1, max_concepts + 1)))]
    roles = [f"r{k}" for k in range(int(rng.integers(0, max_roles + 1)))]
    individuals = [f"a{k}" for k in range(int(rng.integers(0, max_individuals + 1)))]

    def pick(pool):
        return pool[int(rng.integers(0, len(pool)))]

    shapes = ["sub", "conj", "exists_lhs", "exists_rhs", "ri", "concept", "role"]
    axioms = []
    for _ in range(int(rng.integers(1, max_axioms + 1))):
        shape = shapes[int(rng.integers(0, len(shapes)))]
        if shape in ("exists_lhs", "exists_rhs", "ri", "role") and not roles:
            shape = "sub"
        if shape in ("concept", "role") and not individuals:
            shape = "conj"
        A, B, C = Atomic(pick(concepts)), Atomic(pick(concepts)), Atomic(pick(concepts))
        if shape == "sub":
            axioms.append(CI(A, B))
        elif shape == "conj":
            axioms.append(CI(Conj(A, B), C))
        elif shape == "exists_lhs":
            axioms.append(CI(Exists(pick(roles), A), B))
        elif shape == "exists_rhs":
            axioms.append(CI(A, Exists(pick(roles), B)))
        elif shape == "ri":
            axioms.append(RI(pick(roles), pick(roles)))
        elif shape == "concept":
            axioms.append(ConceptAssertion(A, pick(individuals)))
        else:
            axioms.append(RoleAssertion(pick(roles), pick(individuals), pick(individuals)))
    return Ontology.from_axioms(axioms)


def random_concept(rng: np.random.Generator, concepts: Sequence[str], roles: Sequence[str],
                   depth: int = 2) -> Concept:
    """
    A random ⊥-free concept over the given names, nested at most ``depth`` deep.

    ``Top`` only shows up as the filler of an existential restriction.
    """
    def pick(pool):
        return pool[int(rng.integers(0, len(pool)))]

    kind = int(rng.integers(0, 3)) if depth > 0 else 0
    if kind == 2 and not roles:
        kind = 1
    if kind == 0:
        return Atomic(pick(concepts))
    if kind == 1:
        return Conj(random_concept(rng, concepts, roles, depth - 1),
                    random_concept(rng, concepts, roles, depth - 1))
    if rng.random() < 0.2:
        return Exists(pick(roles), TOP)
    return Exists(pick(roles), random_concept(rng, concepts, roles, depth - 1))


def random_ontology(seed: int, max_concepts: int = 3, max_roles: int = 2,
                    max_individuals: int = 2, max_axioms: int = 5,
                    max_depth: int = 2) -> Ontology:
    """
    Generate a small ⊤-free ontology with nested concepts.

    Parameters:
    -----------
    seed : int
        Seed for ``numpy.random.default_rng``.
    max_concepts, max_roles, max_individuals : int
        Sizes of the name pools, as in :func:`random_normalized_ontology`.
    max_axioms : int
        Upper bound on the number of generated axioms.
    max_depth : int
        Nesting depth of the concepts inside CIs and concept assertions.

    Returns:
    --------
    Ontology
        Usually not normalized.
    """
    rng = np.random.default_rng(seed)
    concepts = [f"A{k}" for k in range(int(rng.integers(1, max_concepts + 1)))]
    roles = [f"r{k}" for k in range(int(rng.integers(0, max_roles + 1)))]
    individuals = [f"a{k}" for k in range(int(rng.integers(0, max_individuals + 1)))]

    def pick(pool):
        return pool[int(rng.integers(0, len(pool)))]

    axioms = []
    for _ in range(int(rng.integers(1, max_axioms + 1))):
        shape = ["ci", "ci", "ci", "ri", "concept", "role"][int(rng.integers(0, 6))]
        if shape in ("ri", "role") and not roles:
            shape = "ci"
        if shape in ("concept", "role") and not individuals:
            shape = "ci"
        if shape == "ci":
            axioms.append(CI(random_concept(rng, concepts, roles, max_depth),
                             random_concept(rng, concepts, roles, max_depth)))
        elif shape == "ri":
            axioms.append(RI(pick(roles), pick(roles)))
        elif shape == "concept":
            axioms.append(ConceptAssertion(random_concept(rng, concepts, roles, max_depth),
                                           pick(individuals)))
        else:
            axioms.append(RoleAssertion(pick(roles), pick(individuals), pick(individuals)))
    return Ontology.from_axioms(axioms)


def ontology_digest(o: Ontology) -> str:
    """SHA-256 of the canonical text of ``o``."""
    return hashlib.sha256(serialize(o).encode("utf-8")).hexdigest()


def to_json_text(doc: Any) -> str:
    """Stable JSON text: insertion key order, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def dump_json(doc: Any, fh: Optional[TextIO] = None, path: Optional[str] = None) -> None:
    """Write ``doc`` to an open file or to ``path``."""
    text = to_json_text(doc)
    if path is not None:
        with open(path, "w", encoding="utf-8") as out:
            out.write(text)
    elif fh is not None:
        fh.write(text)
    else:
        raise ValueError("Either fh or path is required")
