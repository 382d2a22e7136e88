"""
Geometric interpretations built from finite interpretations.

Every domain element d is sent to a binary indicator vector μ(d) whose
coordinates are, in this order, one per individual name, one per concept
name and one per (role name, element) pair. Concept regions collect the
vectors of their instances, role regions the concatenations μ(d) ⊕ μ(e)
of related pairs. The convex reading of a model takes the convex hulls of
these vertex sets; it is stored through the same generators.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .errors import DimensionMismatch, SignatureMismatch, UnknownElement
from .interpretation import FiniteInterpretation
from .syntax import Signature
from .vectors import BinaryVector, concat

logger = logging.getLogger(__name__)

Region = Tuple[BinaryVector, ...]


class IndexSystem:
    """
    Fixed ordering of the coordinates of μ.

    Parameters:
    -----------
    sig : Signature
        Names to index; each block is laid out in sorted name order.
    domain_size : int
        |Δ^I|; each role owns one coordinate per element id.
    """

    def __init__(self, sig: Signature, domain_size: int):
        self.signature = Signature.of(sig.concepts, sig.roles, sig.individuals)
        self.domain_size = domain_size
        self.ind_index: Dict[str, int] = {}
        self.con_index: Dict[str, int] = {}
        self.role_elem_index: Dict[Tuple[str, int], int] = {}
        k = 0
        for name in self.signature.individuals:
            self.ind_index[name] = k
            k += 1
        for name in self.signature.concepts:
            self.con_index[name] = k
            k += 1
        for role in self.signature.roles:
            for e in range(domain_size):
                self.role_elem_index[(role, e)] = k
                k += 1
        self.dimension = k

    def individual(self, name: str) -> int:
        try:
            return self.ind_index[name]
        except KeyError:
            raise SignatureMismatch(f"Individual {name} is not indexed") from None

    def concept(self, name: str) -> int:
        try:
            return self.con_index[name]
        except KeyError:
            raise SignatureMismatch(f"Concept {name} is not indexed") from None

    def role_element(self, role: str, e: int) -> int:
        try:
            return self.role_elem_index[(role, e)]
        except KeyError:
            raise SignatureMismatch(f"Coordinate [{role}, {e}] is not indexed") from None

    def has_role(self, role: str) -> bool:
        return role in self.signature.roles

    def coordinate_names(self) -> List[str]:
        """Readable names of the coordinates, e.g. ``a``, ``A``, ``[r,0]``."""
        names = [""] * self.dimension
        for name, k in self.ind_index.items():
            names[k] = name
        for name, k in self.con_index.items():
            names[k] = name
        for (role, e), k in self.role_elem_index.items():
            names[k] = f"[{role},{e}]"
        return names

    def to_json(self) -> Dict:
        return {
            "individuals": list(self.signature.individuals),
            "concepts": list(self.signature.concepts),
            "roles": list(self.signature.roles),
            "domain": self.domain_size,
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "IndexSystem":
        sig = Signature.of(doc.get("concepts", ()), doc.get("roles", ()),
                           doc.get("individuals", ()))
        return cls(sig, int(doc["domain"]))

    def __eq__(self, other) -> bool:
        return (isinstance(other, IndexSystem) and self.signature == other.signature
                and self.domain_size == other.domain_size)

    def __hash__(self) -> int:
        return hash((self.signature, self.domain_size))

    def __repr__(self) -> str:
        return (f"IndexSystem(dimension={self.dimension}, individuals={len(self.ind_index)}, "
                f"concepts={len(self.con_index)}, roles={len(self.signature.roles)})")


def mu(i: FiniteInterpretation, idx: IndexSystem, d: int) -> BinaryVector:
    """
    The indicator vector μ(d).

    Bit [a] is set iff d = a^I, bit [A] iff d ∈ A^I and bit [r, e] iff
    (d, e) ∈ r^I.

    Raises:
    -------
    UnknownElement
        If ``d`` is not in Δ^I.
    """
    if not (isinstance(d, int) and 0 <= d < i.size):
        raise UnknownElement(f"{d!r} is not an element of a domain of size {i.size}")
    ones = [k for name, k in idx.ind_index.items() if i.individual(name) == d]
    ones += [k for name, k in idx.con_index.items() if d in i.concept(name)]
    for role in idx.signature.roles:
        ones += [idx.role_element(role, e) for (x, e) in i.role(role) if x == d]
    return BinaryVector.from_indices(idx.dimension, ones)


def _all_mu(i: FiniteInterpretation, idx: IndexSystem) -> List[BinaryVector]:
    ones: List[List[int]] = [[] for _ in i.domain]
    for name, k in idx.ind_index.items():
        ones[i.individual(name)].append(k)
    for name, k in idx.con_index.items():
        for d in i.concept(name):
            ones[d].append(k)
    for role in idx.signature.roles:
        for d, e in i.role(role):
            ones[d].append(idx.role_element(role, e))
    return [BinaryVector.from_indices(idx.dimension, bits) for bits in ones]


@dataclass(frozen=True)
class GeometricModel:
    """
    A geometric interpretation given by vertex sets.

    Attributes:
    -----------
    index : IndexSystem
    eta_ind : dict
        a ↦ η(a), a vector of length ``index.dimension``.
    eta_con : dict
        A ↦ η(A), sorted tuple of vectors.
    eta_role : dict
        r ↦ η(r), sorted tuple of vectors of twice the dimension.
    vertices : tuple
        Every stored vector of the model, i.e. μ(Δ^I); candidate fillers for ⊤.
    convex : bool
        Whether regions are read as generators of their convex hulls.
    """

    index: IndexSystem
    eta_ind: Mapping[str, BinaryVector]
    eta_con: Mapping[str, Region]
    eta_role: Mapping[str, Region]
    vertices: Region = ()
    convex: bool = True
    _con_sets: Dict[str, FrozenSet[BinaryVector]] = field(init=False, repr=False, compare=False)
    _role_sets: Dict[str, FrozenSet[BinaryVector]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "eta_ind", dict(self.eta_ind))
        object.__setattr__(self, "eta_con",
                           {k: tuple(sorted(set(v))) for k, v in self.eta_con.items()})
        object.__setattr__(self, "eta_role",
                           {k: tuple(sorted(set(v))) for k, v in self.eta_role.items()})
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "_con_sets",
                           {k: frozenset(v) for k, v in self.eta_con.items()})
        object.__setattr__(self, "_role_sets",
                           {k: frozenset(v) for k, v in self.eta_role.items()})
        m = self.index.dimension
        for v in list(self.eta_ind.values()) + list(self.vertices):
            if v.length != m:
                raise DimensionMismatch(f"Expected vectors of length {m}, got {v.length}")
        for region in self.eta_con.values():
            if any(v.length != m for v in region):
                raise DimensionMismatch(f"Concept region vectors must have length {m}")
        for region in self.eta_role.values():
            if any(v.length != 2 * m for v in region):
                raise DimensionMismatch(f"Role region vectors must have length {2 * m}")

    @property
    def dimension(self) -> int:
        return self.index.dimension

    def individual(self, name: str) -> BinaryVector:
        try:
            return self.eta_ind[name]
        except KeyError:
            raise SignatureMismatch(f"Individual {name} has no vector") from None

    def concept_region(self, name: str) -> Region:
        if name not in self.index.con_index:
            raise SignatureMismatch(f"Concept {name} has no region")
        return self.eta_con.get(name, ())

    def role_region(self, name: str) -> Region:
        if not self.index.has_role(name):
            raise SignatureMismatch(f"Role {name} has no region")
        return self.eta_role.get(name, ())

    def concept_set(self, name: str) -> FrozenSet[BinaryVector]:
        self.concept_region(name)
        return self._con_sets.get(name, frozenset())

    def role_set(self, name: str) -> FrozenSet[BinaryVector]:
        self.role_region(name)
        return self._role_sets.get(name, frozenset())

    def with_convex(self, convex: bool) -> "GeometricModel":
        return GeometricModel(self.index, self.eta_ind, self.eta_con, self.eta_role,
                              self.vertices, convex)


def build_geometric(i: FiniteInterpretation, sig: Optional[Signature] = None,
                    convex: bool = True) -> GeometricModel:
    """
    Build η_I (or η*_I when ``convex``) for an interpretation.

    Parameters:
    -----------
    i : FiniteInterpretation
    sig : Signature, optional
        Names that receive coordinates; defaults to the names ``i``
        interprets. Names of ``sig`` unknown to ``i`` get empty regions.
    convex : bool, default=True

    Returns:
    --------
    GeometricModel
        Regions are sets: elements with equal vectors collapse.
    """
    if sig is None:
        sig = Signature.of(i.concepts, i.roles, i.individuals)
    idx = IndexSystem(sig, i.size)
    vectors = _all_mu(i, idx)
    eta_ind = {name: vectors[i.individual(name)] for name in idx.signature.individuals}
    eta_con = {name: [vectors[d] for d in i.concept(name)] for name in idx.signature.concepts}
    eta_role = {name: [concat(vectors[d], vectors[e]) for d, e in i.role(name)]
                for name in idx.signature.roles}
    g = GeometricModel(idx, eta_ind, eta_con, eta_role, vectors, convex)
    logger.debug("geometric model: dimension %d, %d distinct vertices of %d elements",
                 idx.dimension, len(g.vertices), i.size)
    return g


def collapse_duplicates(i: FiniteInterpretation, sig: Optional[Signature] = None
                        ) -> FiniteInterpretation:
    """
    Quotient of ``i`` that merges elements with the same μ-vector.

    Each class is represented by its smallest element; ids are renumbered
    densely in representative order.
    """
    if sig is None:
        sig = Signature.of(i.concepts, i.roles, i.individuals)
    vectors = _all_mu(i, IndexSystem(sig, i.size))
    first: Dict[BinaryVector, int] = {}
    for d, v in enumerate(vectors):
        first.setdefault(v, d)
    reps = sorted(first.values())
    renumber = {d: k for k, d in enumerate(reps)}
    cls = {d: renumber[first[v]] for d, v in enumerate(vectors)}
    return FiniteInterpretation(
        size=len(reps),
        individuals={a: cls[d] for a, d in i.individuals.items()},
        concepts={A: {cls[d] for d in ext} for A, ext in i.concepts.items()},
        roles={r: {(cls[d], cls[e]) for d, e in ext} for r, ext in i.roles.items()},
        labels=[i.label(d) for d in reps] if i.labels is not None else None,
    )


def _bits(v: BinaryVector) -> List[int]:
    return v.to_list()


def export_embedding(g: GeometricModel) -> Dict:
    """
    JSON document for a geometric model.

    Keys come in a fixed order and regions in lexicographic vector order,
    so equal models export to equal text.
    """
    return {
        "dimension": g.dimension,
        "index": g.index.to_json(),
        "individuals": {name: _bits(g.eta_ind[name]) for name in sorted(g.eta_ind)},
        "concepts": {name: [_bits(v) for v in g.eta_con[name]] for name in sorted(g.eta_con)},
        "roles": {name: [_bits(v) for v in g.eta_role[name]] for name in sorted(g.eta_role)},
        "vertices": [_bits(v) for v in g.vertices],
        "convex": g.convex,
        "parameters": parameter_count(g),
    }


def _vector(values: Sequence[int], length: int) -> BinaryVector:
    v = BinaryVector.from_bits(int(x) for x in values)
    if v.length != length:
        raise DimensionMismatch(f"Expected a vector of length {length}, got {v.length}")
    return v


def load_embedding(doc: Mapping) -> GeometricModel:
    """Inverse of :func:`export_embedding`."""
    idx = IndexSystem.from_json(doc["index"])
    m = idx.dimension
    if int(doc.get("dimension", m)) != m:
        raise DimensionMismatch(f"Declared dimension {doc['dimension']} but index gives {m}")
    return GeometricModel(
        index=idx,
        eta_ind={k: _vector(v, m) for k, v in doc.get("individuals", {}).items()},
        eta_con={k: [_vector(v, m) for v in vs] for k, vs in doc.get("concepts", {}).items()},
        eta_role={k: [_vector(v, 2 * m) for v in vs] for k, vs in doc.get("roles", {}).items()},
        vertices=[_vector(v, m) for v in doc.get("vertices", [])],
        convex=bool(doc.get("convex", True)),
    )


def parameter_count(g: GeometricModel) -> int:
    """
    Number of stored bits: the dimension times the number of distinct
    vertices. Every region is a subset of the vertex set (pairs of
    vertices for roles), so this is O(m̂·|Δ|).
    """
    vertices = set(g.vertices) | set(g.eta_ind.values())
    for region in g.eta_con.values():
        vertices.update(region)
    return g.dimension * len(vertices)


def corrupt_region(g: GeometricModel, concept: Optional[str] = None,
                   member: int = 0, coordinate: Optional[int] = None) -> GeometricModel:
    """
    Copy of ``g`` with one bit flipped in one concept region.

    Parameters:
    -----------
    concept : str, optional
        Region to corrupt; defaults to the first non-empty one in name order.
    member : int, default=0
        Position of the vector inside the region.
    coordinate : int, optional
        Coordinate to flip; defaults to the concept's own coordinate.
    """
    if concept is None:
        concept = next((name for name in sorted(g.eta_con) if g.eta_con[name]), None)
        if concept is None:
            raise ValueError("Every concept region is empty; nothing to corrupt")
    region = list(g.concept_region(concept))
    if not region:
        raise ValueError(f"Region of {concept} is empty")
    if coordinate is None:
        coordinate = g.index.concept(concept)
    region[member] = region[member].flip(coordinate)
    eta_con = dict(g.eta_con)
    eta_con[concept] = region
    logger.debug("flipped coordinate %d of member %d of region %s", coordinate, member, concept)
    return GeometricModel(g.index, g.eta_ind, eta_con, g.eta_role, g.vertices, g.convex)

