"""
Finite classical interpretations of ELH and their semantics.

Domain elements are the dense ids ``0 .. n-1``. Concept and role names
missing from the extension maps are read as empty; individual names must
be mapped, since every individual denotes an element.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from .errors import InterpretationError, UnknownName
from .syntax import (
    CI, RI, Atomic, Axiom, Bottom, Concept, ConceptAssertion, Conj, Exists,
    Ontology, RoleAssertion, Signature, Top, axiom_signature, is_valid_concept_name,
    is_valid_name,
)

logger = logging.getLogger(__name__)

Element = int
Pair = Tuple[int, int]


@dataclass(frozen=True)
class FiniteInterpretation:
    """
    A finite interpretation I = (Δ^I, ·^I).

    Attributes:
    -----------
    size : int
        |Δ^I|; the domain is ``range(size)``.
    individuals : dict
        a ↦ a^I.
    concepts : dict
        A ↦ A^I as a frozenset of element ids.
    roles : dict
        r ↦ r^I as a frozenset of (d, e) pairs.
    labels : tuple of str, optional
        Human-readable names of the elements, in id order.
    """

    size: int
    individuals: Mapping[str, Element] = field(default_factory=dict)
    concepts: Mapping[str, FrozenSet[Element]] = field(default_factory=dict)
    roles: Mapping[str, FrozenSet[Pair]] = field(default_factory=dict)
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "individuals", dict(self.individuals))
        object.__setattr__(self, "concepts",
                           {k: frozenset(v) for k, v in self.concepts.items()})
        object.__setattr__(self, "roles",
                           {k: frozenset((int(d), int(e)) for d, e in v)
                            for k, v in self.roles.items()})
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        self._validate()

    def _validate(self) -> None:
        n = self.size
        if n < 1:
            raise InterpretationError("The domain must be non-empty")
        for name, d in self.individuals.items():
            if not 0 <= d < n:
                raise InterpretationError(f"{name} is mapped outside the domain: {d}")
        for name, ext in self.concepts.items():
            if not is_valid_concept_name(name):
                raise InterpretationError(f"Malformed concept name: {name!r}")
            if any(not 0 <= d < n for d in ext):
                raise InterpretationError(f"Extension of {name} leaves the domain")
        for name, ext in self.roles.items():
            if any(not (0 <= d < n and 0 <= e < n) for d, e in ext):
                raise InterpretationError(f"Extension of {name} leaves the domain")
        if self.labels is not None and len(self.labels) != n:
            raise InterpretationError("One label per domain element is required")

    @property
    def domain(self) -> range:
        return range(self.size)

    def concept(self, name: str) -> FrozenSet[Element]:
        return self.concepts.get(name, frozenset())

    def role(self, name: str) -> FrozenSet[Pair]:
        return self.roles.get(name, frozenset())

    def individual(self, name: str) -> Element:
        try:
            return self.individuals[name]
        except KeyError:
            raise UnknownName(f"Individual {name} has no interpretation") from None

    def label(self, d: Element) -> str:
        return self.labels[d] if self.labels else str(d)

    def element_of(self, label: str) -> Element:
        """Inverse of :meth:`label`."""
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def to_json(self) -> Dict:
        """JSON document: domain size, individual map, extensions, labels."""
        doc = {
            "domain": self.size,
            "individuals": {k: self.individuals[k] for k in sorted(self.individuals)},
            "concepts": {k: sorted(self.concepts[k]) for k in sorted(self.concepts)},
            "roles": {k: [list(p) for p in sorted(self.roles[k])]
                      for k in sorted(self.roles)},
        }
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "FiniteInterpretation":
        try:
            return cls(
                size=int(doc["domain"]),
                individuals={k: int(v) for k, v in doc.get("individuals", {}).items()},
                concepts={k: frozenset(int(d) for d in v)
                          for k, v in doc.get("concepts", {}).items()},
                roles={k: frozenset((int(d), int(e)) for d, e in v)
                       for k, v in doc.get("roles", {}).items()},
                labels=doc.get("labels"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InterpretationError):
                raise
            raise InterpretationError(f"Malformed interpretation document: {exc}") from None

    def replace(self, **changes) -> "FiniteInterpretation":
        fields = {"size": self.size, "individuals": self.individuals,
                  "concepts": self.concepts, "roles": self.roles, "labels": self.labels}
        fields.update(changes)
        return FiniteInterpretation(**fields)


def _check_name(name: str) -> None:
    if not is_valid_name(name):
        raise UnknownName(f"Malformed name: {name!r}")


def extension(i: FiniteInterpretation, c: Concept,
              method: str = "definition") -> FrozenSet[Element]:
    """
    Compute C^I.

    Parameters:
    -----------
    i : FiniteInterpretation
    c : Concept
        ⊥ evaluates to the empty set, ⊤ to the whole domain.
    method : str, default='definition'
        How existential restrictions are evaluated:
        - 'definition': walk r^I once, keeping pairs whose target is in C^I
        - 'scan': test every (d, e) ∈ Δ×Δ for membership in r^I

    Returns:
    --------
    frozenset of int
    """
    if method not in ("definition", "scan"):
        raise ValueError(f"Unknown method: {method}. Use 'definition' or 'scan'")
    if isinstance(c, Top):
        return frozenset(i.domain)
    if isinstance(c, Bottom):
        return frozenset()
    if isinstance(c, Atomic):
        _check_name(c.name)
        return i.concept(c.name)
    if isinstance(c, Conj):
        return extension(i, c.left, method) & extension(i, c.right, method)
    if isinstance(c, Exists):
        _check_name(c.role)
        targets = extension(i, c.filler, method)
        pairs = i.role(c.role)
        if method == "definition":
            return frozenset(d for d, e in pairs if e in targets)
        return frozenset(d for d in i.domain
                         if any((d, e) in pairs for e in i.domain if e in targets))
    raise TypeError(f"Not a concept: {c!r}")


def satisfies(i: FiniteInterpretation, ax: Axiom) -> bool:
    """
    Decide I ⊨ ax.

    C ⊑ D iff C^I ⊆ D^I; r ⊑ s iff r^I ⊆ s^I; C(a) iff a^I ∈ C^I;
    r(a, b) iff (a^I, b^I) ∈ r^I.
    """
    if isinstance(ax, CI):
        return extension(i, ax.lhs) <= extension(i, ax.rhs)
    if isinstance(ax, RI):
        return i.role(ax.sub) <= i.role(ax.sup)
    if isinstance(ax, ConceptAssertion):
        return i.individual(ax.individual) in extension(i, ax.concept)
    if isinstance(ax, RoleAssertion):
        return (i.individual(ax.subject), i.individual(ax.object)) in i.role(ax.role)
    raise TypeError(f"Not an axiom: {ax!r}")


def satisfies_ontology(i: FiniteInterpretation, o: Ontology) -> bool:
    """True if I is a model of every axiom of ``o``."""
    return all(satisfies(i, ax) for ax in o.axioms)


def random_interpretation(seed: int, sig: Signature, max_domain: int,
                          density: float = 0.5,
                          domain_size: Optional[int] = None) -> FiniteInterpretation:
    """
    Generate a reproducible pseudo-random interpretation.

    Parameters:
    -----------
    seed : int
        Seed for ``numpy.random.default_rng``.
    sig : Signature
        Names to interpret.
    max_domain : int
        Upper bound on |Δ|; must be at least the number of individuals.
    density : float, default=0.5
        Probability that an element (pair) is put into a concept (role).
    domain_size : int, optional
        Exact domain size instead of a random one in
        ``[max(|N_I|, 1), max_domain]``.

    Returns:
    --------
    FiniteInterpretation
        Individuals are mapped injectively onto ``0 .. |N_I|-1`` in name order.
    """
    low = max(len(sig.individuals), 1)
    if max_domain < low:
        raise InterpretationError(
            f"max_domain={max_domain} cannot host {len(sig.individuals)} individuals")
    rng = np.random.default_rng(seed)
    if domain_size is None:
        n = int(rng.integers(low, max_domain + 1))
    else:
        if not low <= domain_size <= max_domain:
            raise InterpretationError(f"domain_size must lie in [{low}, {max_domain}]")
        n = domain_size
    concepts = {}
    for name in sig.concepts:
        mask = rng.random(n) < density
        concepts[name] = frozenset(int(d) for d in np.flatnonzero(mask))
    roles = {}
    for name in sig.roles:
        mask = rng.random((n, n)) < density
        roles[name] = frozenset((int(d), int(e)) for d, e in zip(*np.nonzero(mask)))
    individuals = {name: k for k, name in enumerate(sig.individuals)}
    return FiniteInterpretation(n, individuals, concepts, roles)


def _subsets(items: List) -> Iterator[FrozenSet]:
    for mask in range(1 << len(items)):
        yield frozenset(x for k, x in enumerate(items) if mask >> k & 1)


def enumerate_interpretations(sig: Signature, domain_size: int) -> Iterator[FiniteInterpretation]:
    """
    Yield every interpretation of ``sig`` over a domain of the given size.

    There are n^|N_I| · 2^(n·|N_C|) · 2^(n²·|N_R|) of them, so this is
    only usable for tiny signatures.
    """
    n = domain_size
    elements = list(range(n))
    pairs = [(d, e) for d in elements for e in elements]
    ind_maps = itertools.product(elements, repeat=len(sig.individuals))
    concept_choices = [list(_subsets(elements)) for _ in sig.concepts]
    role_choices = [list(_subsets(pairs)) for _ in sig.roles]
    for ind_map in ind_maps:
        individuals = dict(zip(sig.individuals, ind_map))
        for concept_ext in itertools.product(*concept_choices):
            concepts = dict(zip(sig.concepts, concept_ext))
            for role_ext in itertools.product(*role_choices):
                yield FiniteInterpretation(n, individuals, concepts,
                                           dict(zip(sig.roles, role_ext)))


def models_up_to(o: Ontology, max_domain: int,
                 sig: Optional[Signature] = None) -> List[FiniteInterpretation]:
    """All models of ``o`` over ``sig`` (default: sig(o)) with |Δ| ≤ max_domain."""
    sig = sig or o.signature
    found = []
    for n in range(1, max_domain + 1):
        found.extend(i for i in enumerate_interpretations(sig, n) if satisfies_ontology(i, o))
    logger.debug("%d models of %d axioms with domain <= %d", len(found), len(o), max_domain)
    return found


def find_countermodel(o: Ontology, ax: Axiom, max_domain: int,
                      models: Optional[Iterable[FiniteInterpretation]] = None
                      ) -> Optional[FiniteInterpretation]:
    """
    Search for a model of ``o`` that violates ``ax``.

    Parameters:
    -----------
    models : iterable, optional
        Pre-computed models (from :func:`models_up_to`) to search instead of
        enumerating again.

    Returns:
    --------
    FiniteInterpretation or None
        The first countermodel in enumeration order, or None if every
        interpretation with |Δ| ≤ max_domain satisfying ``o`` satisfies ``ax``.
    """
    if models is None:
        sig = o.signature.union(axiom_signature(ax))
        models = models_up_to(o, max_domain, sig)
    for i in models:
        if not satisfies(i, ax):
            return i
    return None
