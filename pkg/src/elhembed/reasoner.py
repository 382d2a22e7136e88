"""
Entailment oracle for normalized ELH.

Saturation of completion rules over a graph whose nodes are the
individuals of the ABox, one node per concept name (plus ⊤), and
throw-away test nodes. S(x) collects the atoms derived for x and R(r) the
r-edges. Rules:

- CR1  A ∈ S(x), A ⊑ B               ⟹ B ∈ S(x)
- CR2  A1, A2 ∈ S(x), A1 ⊓ A2 ⊑ B     ⟹ B ∈ S(x)
- CR3  A ∈ S(x), A ⊑ ∃r.B             ⟹ (x, node(B)) ∈ R(r)
- CR4  (x, y) ∈ R(r), A ∈ S(y), ∃s.A ⊑ B, r ⊑* s ⟹ B ∈ S(x)
- CRH  (x, y) ∈ R(r), r ⊑* s          ⟹ (x, y) ∈ R(s)
"""

import logging
import threading
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from .errors import NotNormalFormAxiom, NotNormalized
from .syntax import (
    CI, RI, Atomic, Axiom, Concept, ConceptAssertion, Conj, Exists, Ontology,
    RoleAssertion, Top, is_normal_form, is_normalized,
)

logger = logging.getLogger(__name__)

TOP_KEY = "⊤"

Node = Tuple[str, str]
Edge = Tuple[Node, Node]


def atom_key(concept: Concept) -> str:
    """Key of an atom inside S(x): the concept name, or ⊤."""
    if isinstance(concept, Top):
        return TOP_KEY
    if isinstance(concept, Atomic):
        return concept.name
    raise NotNormalFormAxiom(f"Expected a concept name or Top, got {concept}")


def concept_node(key: str) -> Node:
    return ("concept", key)


def individual_node(name: str) -> Node:
    return ("individual", name)


def role_closure(o: Ontology) -> FrozenSet[Tuple[str, str]]:
    """
    Reflexive-transitive closure of the role inclusions of ``o``.

    Returns:
    --------
    frozenset of (r, s)
        (r, s) is present iff r ⊑* s; every role of sig(o) is related to
        itself.
    """
    supers = _role_supers(o)
    return frozenset((r, s) for r, ss in supers.items() for s in ss)


def _role_supers(o: Ontology) -> Dict[str, FrozenSet[str]]:
    graph: Dict[str, Set[str]] = defaultdict(set)
    for axiom in o.tbox:
        if isinstance(axiom, RI):
            graph[axiom.sub].add(axiom.sup)
    closure = {}
    for role in o.role_names:
        seen = {role}
        todo = [role]
        while todo:
            for nxt in graph[todo.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        closure[role] = frozenset(seen)
    return closure


@dataclass
class SaturationState:
    """
    Derived facts of a saturation run.

    Attributes:
    -----------
    nodes : list
        Node ids in creation order.
    S : dict
        node ↦ set of atom keys (concept names and ⊤).
    R : dict
        role ↦ set of (node, node) edges.
    role_order : dict
        role ↦ frozenset of its super-roles under ⊑* (reflexive).
    """

    nodes: List[Node] = field(default_factory=list)
    S: Dict[Node, Set[str]] = field(default_factory=dict)
    R: Dict[str, Set[Edge]] = field(default_factory=lambda: defaultdict(set))
    role_order: Dict[str, FrozenSet[str]] = field(default_factory=dict)
    successors: Dict[Node, Set[Tuple[str, Node]]] = field(
        default_factory=lambda: defaultdict(set))
    predecessors: Dict[Node, Set[Tuple[str, Node]]] = field(
        default_factory=lambda: defaultdict(set))

    def copy(self) -> "SaturationState":
        return SaturationState(
            nodes=list(self.nodes),
            S={x: set(atoms) for x, atoms in self.S.items()},
            R=defaultdict(set, {r: set(edges) for r, edges in self.R.items()}),
            role_order=dict(self.role_order),
            successors=defaultdict(set, {x: set(v) for x, v in self.successors.items()}),
            predecessors=defaultdict(set, {x: set(v) for x, v in self.predecessors.items()}),
        )

    def supers(self, role: str) -> FrozenSet[str]:
        return self.role_order.get(role, frozenset((role,)))

    def edge_count(self) -> int:
        return sum(len(edges) for edges in self.R.values())


class _TBoxIndex:
    """Normal-form TBox axioms indexed by the atom that triggers them."""

    def __init__(self, o: Ontology):
        self.told: Dict[str, Set[str]] = defaultdict(set)
        self.conj: Dict[str, Set[Tuple[str, str]]] = defaultdict(set)
        self.exists_rhs: Dict[str, Set[Tuple[str, str]]] = defaultdict(set)
        self.exists_lhs: Dict[Tuple[str, str], Set[str]] = defaultdict(set)
        for axiom in o.tbox:
            if isinstance(axiom, CI):
                self.add(axiom)

    def add(self, axiom: CI) -> None:
        lhs, rhs = axiom.lhs, axiom.rhs
        if isinstance(rhs, Exists):
            self.exists_rhs[atom_key(lhs)].add((rhs.role, atom_key(rhs.filler)))
        elif isinstance(lhs, Conj):
            a1, a2, b = atom_key(lhs.left), atom_key(lhs.right), atom_key(rhs)
            self.conj[a1].add((a2, b))
            self.conj[a2].add((a1, b))
        elif isinstance(lhs, Exists):
            self.exists_lhs[(lhs.role, atom_key(lhs.filler))].add(atom_key(rhs))
        else:
            self.told[atom_key(lhs)].add(atom_key(rhs))


class _Saturator:
    """Worklist engine applying the completion rules to a state in place."""

    def __init__(self, index: _TBoxIndex, state: SaturationState):
        self.index = index
        self.state = state
        self.queue: deque = deque()
        self.firings = 0

    def add_node(self, node: Node, atoms: Iterable[str]) -> None:
        if node not in self.state.S:
            self.state.nodes.append(node)
            self.state.S[node] = set()
        self.add_atom(node, TOP_KEY)
        for atom in atoms:
            self.add_atom(node, atom)

    def ensure_concept_node(self, key: str) -> Node:
        node = concept_node(key)
        if node not in self.state.S:
            self.add_node(node, (key,))
        return node

    def add_atom(self, node: Node, atom: str) -> None:
        atoms = self.state.S[node]
        if atom not in atoms:
            atoms.add(atom)
            self.queue.append(("atom", node, atom))

    def add_edge(self, role: str, x: Node, y: Node) -> None:
        edges = self.state.R[role]
        if (x, y) not in edges:
            edges.add((x, y))
            self.state.successors[x].add((role, y))
            self.state.predecessors[y].add((role, x))
            self.queue.append(("edge", role, x, y))

    def _fire_existential_lhs(self, x: Node, role: str, atom: str) -> None:
        # CR4
        for s in self.state.supers(role):
            for b in self.index.exists_lhs.get((s, atom), ()):
                self.add_atom(x, b)

    def run(self) -> None:
        index, state = self.index, self.state
        while self.queue:
            item = self.queue.popleft()
            self.firings += 1
            if item[0] == "atom":
                _, x, a = item
                for b in index.told.get(a, ()):
                    self.add_atom(x, b)
                for a2, b in index.conj.get(a, ()):
                    if a2 in state.S[x]:
                        self.add_atom(x, b)
                for role, b in index.exists_rhs.get(a, ()):
                    self.add_edge(role, x, self.ensure_concept_node(b))
                for role, w in list(state.predecessors.get(x, ())):
                    self._fire_existential_lhs(w, role, a)
            else:
                _, role, x, y = item
                for s in state.supers(role):
                    if s != role:
                        self.add_edge(s, x, y)
                for a in list(state.S[y]):
                    self._fire_existential_lhs(x, role, a)


def saturate(o: Ontology) -> SaturationState:
    """
    Run the completion rules on ``o`` to their least fixpoint.

    Raises:
    -------
    NotNormalized
        If ``o`` is not normalized (see :func:`syntax.is_normalized`).
    """
    if not is_normalized(o):
        raise NotNormalized("saturate expects a normalized, bottom-free ontology")
    index = _TBoxIndex(o)
    state = SaturationState(role_order=_role_supers(o))
    engine = _Saturator(index, state)
    for name in (TOP_KEY,) + o.concept_names:
        engine.add_node(concept_node(name), (name,))
    for name in o.individual_names:
        engine.add_node(individual_node(name), ())
    for axiom in o.abox:
        if isinstance(axiom, ConceptAssertion):
            engine.add_atom(individual_node(axiom.individual), atom_key(axiom.concept))
        else:
            engine.add_edge(axiom.role, individual_node(axiom.subject),
                            individual_node(axiom.object))
    engine.run()
    logger.debug("saturated %d nodes, %d edges in %d rule firings",
                 len(state.nodes), state.edge_count(), engine.firings)
    return state


class Reasoner:
    """
    Cached entailment checks against one normalized ontology.

    The saturation is computed once. Queries whose left-hand side is a
    conjunction or an existential restriction, or which mention names
    outside sig(o), saturate a copy of the state extended with a test
    node; their results are memoized.
    """

    def __init__(self, o: Ontology):
        self.ontology = o
        self.state = saturate(o)
        self._index = _TBoxIndex(o)
        self._probes: Dict[Tuple, SaturationState] = {}
        self._lock = threading.Lock()

    # -- internals -------------------------------------------------------------

    def _probe(self, atoms: Tuple[str, ...] = (),
               edges: Tuple[Tuple[str, str], ...] = ()) -> Tuple[SaturationState, Node]:
        """Saturate a copy of the state with a fresh test node X."""
        key = (atoms, edges)
        test = ("test", "X")
        with self._lock:
            cached = self._probes.get(key)
        if cached is not None:
            return cached, test
        state = self.state.copy()
        engine = _Saturator(self._index, state)
        engine.add_node(test, atoms)
        for role, filler in edges:
            engine.add_edge(role, test, engine.ensure_concept_node(filler))
        engine.run()
        with self._lock:
            self._probes[key] = state
        return state, test

    def _concept(self, key: str) -> Tuple[SaturationState, Node]:
        node = concept_node(key)
        if node in self.state.S:
            return self.state, node
        return self._probe(atoms=(key,))

    def _individual(self, name: str) -> Tuple[SaturationState, Node]:
        node = individual_node(name)
        if node in self.state.S:
            return self.state, node
        return self._probe()

    @staticmethod
    def _has_successor(state: SaturationState, x: Node, role: str, atom: str) -> bool:
        return any(r == role and atom in state.S[y]
                   for r, y in state.successors.get(x, ()))

    # -- queries ---------------------------------------------------------------

    def entails(self, ax: Axiom) -> bool:
        """
        Decide o ⊨ ax for a normal-form CI, an RI, or a normal-form IQ.

        Raises:
        -------
        NotNormalFormAxiom
            For anything else.
        """
        if not is_normal_form(ax):
            raise NotNormalFormAxiom(str(ax))
        if isinstance(ax, RI):
            return ax.sup in self.state.supers(ax.sub)
        if isinstance(ax, RoleAssertion):
            x, y = individual_node(ax.subject), individual_node(ax.object)
            return (x, y) in self.state.R.get(ax.role, ())
        if isinstance(ax, ConceptAssertion):
            state, x = self._individual(ax.individual)
            c = ax.concept
            if isinstance(c, Conj):
                return (atom_key(c.left) in state.S[x]
                        and atom_key(c.right) in state.S[x])
            if isinstance(c, Exists):
                return self._has_successor(state, x, c.role, atom_key(c.filler))
            return atom_key(c) in state.S[x]
        lhs, rhs = ax.lhs, ax.rhs
        if isinstance(rhs, Exists):
            state, x = self._concept(atom_key(lhs))
            return self._has_successor(state, x, rhs.role, atom_key(rhs.filler))
        b = atom_key(rhs)
        if b == TOP_KEY:
            return True
        if isinstance(lhs, Conj):
            atoms = tuple(sorted({atom_key(lhs.left), atom_key(lhs.right)}))
            state, x = self._probe(atoms=atoms)
        elif isinstance(lhs, Exists):
            state, x = self._probe(edges=((lhs.role, atom_key(lhs.filler)),))
        else:
            state, x = self._concept(atom_key(lhs))
        return b in state.S[x]

    def subsumers(self, name: str) -> FrozenSet[str]:
        """All atoms B with T ⊨ name ⊑ B (⊤ included)."""
        state, x = self._concept(name)
        return frozenset(state.S[x])

    def instances(self, name: str) -> FrozenSet[str]:
        """Individuals a with O ⊨ name(a)."""
        return frozenset(a for a in self.ontology.individual_names
                         if name in self.state.S[individual_node(a)])


@lru_cache(maxsize=64)
def get_reasoner(o: Ontology) -> Reasoner:
    """Reasoner for ``o``, shared between calls with an equal ontology."""
    return Reasoner(o)


def entails(o: Ontology, ax: Axiom) -> bool:
    """
    Decide o ⊨ ax.

    Parameters:
    -----------
    o : Ontology
        Normalized, ⊥-free ontology.
    ax : Axiom
        Normal-form CI, RI, or normal-form IQ.

    Raises:
    -------
    NotNormalized, NotNormalFormAxiom
    """
    return get_reasoner(o).entails(ax)
