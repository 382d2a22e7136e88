"""
Model checking normal-form axioms against geometric models.

``check_ci``, ``check_iq`` and ``check_ri`` work on the stored vertex sets
only. This decides the convex reading as well, since for these axiom
shapes a convex model and its vertex sets satisfy the same axioms.
``evaluate_region``/``satisfies_geometric`` give the plain set semantics
for arbitrary concepts, and ``hull_oracle`` decides the convex reading
directly with exact linear programs.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .embedding import GeometricModel, Region
from .errors import NotNormalFormAxiom, SignatureMismatch
from .hull import feasible_point, hull_member
from .syntax import (
    CI, RI, Atomic, Axiom, Bottom, Concept, ConceptAssertion, Conj, Exists,
    RoleAssertion, Top, is_normal_form_ci, is_normal_form_iq,
)
from .vectors import BinaryVector, concat, linear_scan_contains

logger = logging.getLogger(__name__)

MEMBERSHIP = ("hash", "scan")


@dataclass(frozen=True)
class CheckResult:
    """
    Verdict of one model check.

    ``counterexample`` holds the offending vector(s) when a CI or RI fails:
    one vector for CIs, one pair-space vector for RIs.
    """

    axiom: Axiom
    verdict: bool
    elapsed: float
    counterexample: Optional[Tuple[BinaryVector, ...]] = None

    def to_dict(self, deterministic: bool = False) -> Dict:
        doc = {"axiom": str(self.axiom), "verdict": self.verdict}
        if not deterministic:
            doc["elapsed_us"] = int(round(self.elapsed * 1e6))
        doc["counterexample"] = ([v.to_list() for v in self.counterexample]
                                 if self.counterexample is not None else None)
        return doc


class _Checker:
    """Region access and membership for one model and membership mode."""

    def __init__(self, g: GeometricModel, membership: str):
        if membership not in MEMBERSHIP:
            raise ValueError(f"Unknown membership: {membership}. Use 'hash' or 'scan'")
        self.g = g
        self.scan = membership == "scan"

    def bit(self, concept: Concept) -> Optional[int]:
        """Coordinate of a concept name; None for ⊤."""
        if isinstance(concept, Top):
            return None
        return self.g.index.concept(concept.name)

    def region(self, concept: Concept) -> Region:
        """Stored vectors of an atom; ⊤ ranges over every vertex."""
        if isinstance(concept, Top):
            return self.g.vertices
        return self.g.concept_region(concept.name)

    def in_role(self, role: str, w: BinaryVector) -> bool:
        if self.scan:
            return linear_scan_contains(self.g.role_region(role), w)
        return w in self.g.role_set(role)

    def has_filler(self, role: str, v: BinaryVector, filler: Concept) -> bool:
        return any(self.in_role(role, concat(v, u)) for u in self.region(filler))

    def zero(self) -> BinaryVector:
        return BinaryVector.zeros(self.g.dimension)


def _has(v: BinaryVector, k: Optional[int]) -> bool:
    return k is None or v[k] == 1


def _check_role(g: GeometricModel, role: str) -> None:
    if not g.index.has_role(role):
        raise SignatureMismatch(f"Role {role} has no region")


def check_ci(g: GeometricModel, ax: CI, membership: str = "hash") -> CheckResult:
    """
    Decide a normal-form CI on the vertex sets of ``g``.

    Parameters:
    -----------
    g : GeometricModel
    ax : CI
        A⊑B, A1⊓A2⊑B, ∃r.A⊑B or A⊑∃r.B.
    membership : str, default='hash'
        How v⊕u ∈ η(r) is tested:
        - 'hash': lookup in a hashed set of packed vectors
        - 'scan': coordinate-wise comparison against every member

    Returns:
    --------
    CheckResult
        On failure the counterexample is a vector of the left-hand side
        region that is not in the right-hand side one.

    Raises:
    -------
    NotNormalFormAxiom
    SignatureMismatch
        If a name has no coordinate in ``g``.
    """
    if not is_normal_form_ci(ax):
        raise NotNormalFormAxiom(str(ax))
    c = _Checker(g, membership)
    start = time.perf_counter()
    witness = _ci_counterexample(c, ax)
    elapsed = time.perf_counter() - start
    return CheckResult(ax, witness is None, elapsed,
                       None if witness is None else (witness,))


def _ci_counterexample(c: _Checker, ax: CI) -> Optional[BinaryVector]:
    lhs, rhs = ax.lhs, ax.rhs
    if isinstance(rhs, Exists):
        _check_role(c.g, rhs.role)
        c.bit(rhs.filler)
        if isinstance(lhs, Top):
            # η(⊤) is the whole space; the origin has no r-successor since
            # every first half of η(r) sets some [r, e] coordinate
            return c.zero()
        for v in c.region(lhs):
            if not c.has_filler(rhs.role, v, rhs.filler):
                return v
        return None

    b = c.bit(rhs)
    if b is None:
        return None
    if isinstance(lhs, Conj):
        a1, a2 = c.bit(lhs.left), c.bit(lhs.right)
        if a1 is None and a2 is None:
            return c.zero()
        first, other = (lhs.right, a1) if a1 is None else (lhs.left, a2)
        for v in c.region(first):
            if _has(v, other) and v[b] == 0:
                return v
        return None
    if isinstance(lhs, Exists):
        _check_role(c.g, lhs.role)
        a = c.bit(lhs.filler)
        for w in c.g.role_region(lhs.role):
            v, u = w.split()
            if _has(u, a) and v[b] == 0:
                return v
        return None
    if isinstance(lhs, Top):
        return c.zero()
    for v in c.region(lhs):
        if v[b] == 0:
            return v
    return None


def check_iq(g: GeometricModel, ax: Axiom, membership: str = "hash") -> CheckResult:
    """
    Decide a normal-form IQ: A(a), (A⊓B)(a), (∃r.A)(a) or r(a, b).

    Raises:
    -------
    NotNormalFormAxiom, SignatureMismatch
    """
    if not is_normal_form_iq(ax):
        raise NotNormalFormAxiom(str(ax))
    c = _Checker(g, membership)
    start = time.perf_counter()
    if isinstance(ax, RoleAssertion):
        _check_role(g, ax.role)
        verdict = c.in_role(ax.role, concat(g.individual(ax.subject), g.individual(ax.object)))
    else:
        v = g.individual(ax.individual)
        concept = ax.concept
        if isinstance(concept, Conj):
            verdict = _has(v, c.bit(concept.left)) and _has(v, c.bit(concept.right))
        elif isinstance(concept, Exists):
            _check_role(g, concept.role)
            c.bit(concept.filler)
            verdict = c.has_filler(concept.role, v, concept.filler)
        else:
            verdict = _has(v, c.bit(concept))
    return CheckResult(ax, verdict, time.perf_counter() - start)


def check_ri(g: GeometricModel, ax: RI, membership: str = "hash") -> CheckResult:
    """r ⊑ s holds iff every vector of η(r) is in η(s)."""
    if not isinstance(ax, RI):
        raise NotNormalFormAxiom(str(ax))
    c = _Checker(g, membership)
    start = time.perf_counter()
    sub = g.role_region(ax.sub)
    _check_role(g, ax.sup)
    witness = next((w for w in sub if not c.in_role(ax.sup, w)), None)
    return CheckResult(ax, witness is None, time.perf_counter() - start,
                       None if witness is None else (witness,))


def check_axiom(g: GeometricModel, ax: Axiom, membership: str = "hash") -> CheckResult:
    """Dispatch to :func:`check_ci`, :func:`check_iq` or :func:`check_ri`."""
    if isinstance(ax, CI):
        return check_ci(g, ax, membership)
    if isinstance(ax, RI):
        return check_ri(g, ax, membership)
    return check_iq(g, ax, membership)


# -- set semantics ---------------------------------------------------------------

Extension = Optional[FrozenSet[BinaryVector]]


def evaluate_region(g: GeometricModel, concept: Concept) -> Extension:
    """
    Region of an arbitrary ELH concept under the finite set reading of ``g``.

    Returns:
    --------
    frozenset of BinaryVector, or None
        None stands for the whole space, the region of ⊤.
    """
    if isinstance(concept, Top):
        return None
    if isinstance(concept, Bottom):
        return frozenset()
    if isinstance(concept, Atomic):
        return g.concept_set(concept.name)
    if isinstance(concept, Conj):
        left = evaluate_region(g, concept.left)
        right = evaluate_region(g, concept.right)
        if left is None:
            return right
        if right is None:
            return left
        return left & right
    if isinstance(concept, Exists):
        filler = evaluate_region(g, concept.filler)
        found = set()
        for w in g.role_region(concept.role):
            v, u = w.split()
            if filler is None or u in filler:
                found.add(v)
        return frozenset(found)
    raise TypeError(f"Not a concept: {concept!r}")


def _contains(region: Extension, v: BinaryVector) -> bool:
    return region is None or v in region


def satisfies_geometric(g: GeometricModel, ax: Axiom) -> bool:
    """Decide ``ax`` in the set reading of ``g`` (regions are exactly the stored vectors)."""
    if isinstance(ax, CI):
        lhs, rhs = evaluate_region(g, ax.lhs), evaluate_region(g, ax.rhs)
        if rhs is None:
            return True
        if lhs is None:
            return False
        return lhs <= rhs
    if isinstance(ax, RI):
        _check_role(g, ax.sup)
        return g.role_set(ax.sub) <= g.role_set(ax.sup)
    if isinstance(ax, ConceptAssertion):
        return _contains(evaluate_region(g, ax.concept), g.individual(ax.individual))
    if isinstance(ax, RoleAssertion):
        pair = concat(g.individual(ax.subject), g.individual(ax.object))
        return pair in g.role_set(ax.role)
    raise TypeError(f"Not an axiom: {ax!r}")


# -- convex reading, decided with exact linear programs -------------------------

def _in_hull(gens: Sequence[BinaryVector], v: BinaryVector) -> bool:
    return hull_member(gens, v)[0]


def _hull_contains_all(gens: Sequence[BinaryVector], points: Sequence[BinaryVector]) -> bool:
    return all(_in_hull(gens, p) for p in points)


def _successor_feasible(pairs: Region, fillers: Optional[Region], v: BinaryVector) -> bool:
    """Is there u in conv(fillers) (anything when None) with v⊕u in conv(pairs)?"""
    if not pairs:
        return False
    m = v.length
    firsts = [w.split()[0].to_list() for w in pairs]
    seconds = [w.split()[1].to_list() for w in pairs]
    n_pairs = len(pairs)
    n_fill = 0 if fillers is None else len(fillers)
    if fillers is not None and n_fill == 0:
        return False
    rows: List[List[int]] = []
    rhs: List[Fraction] = []
    for i in range(m):
        rows.append([f[i] for f in firsts] + [0] * n_fill)
        rhs.append(Fraction(v[i]))
    if fillers is not None:
        filler_bits = [u.to_list() for u in fillers]
        for i in range(m):
            rows.append([s[i] for s in seconds] + [-u[i] for u in filler_bits])
            rhs.append(Fraction(0))
        rows.append([0] * n_pairs + [1] * n_fill)
        rhs.append(Fraction(1))
    rows.append([1] * n_pairs + [0] * n_fill)
    rhs.append(Fraction(1))
    return feasible_point(rows, rhs) is not None


def hull_oracle(g: GeometricModel, ax: Axiom) -> bool:
    """
    Decide a normal-form axiom in the convex reading of ``g`` without
    going through the vertex algorithms.

    Regions are read as convex hulls of their stored vectors and ⊤ as the
    whole space. Hull inclusions are reduced to generator membership; the
    conjunction and existential left-hand sides use that every point of
    conv(η(A)) has coordinate [A] equal to 1, as in models built by
    :func:`~elhembed.embedding.build_geometric`.
    """
    c = _Checker(g, "hash")
    if isinstance(ax, RI):
        _check_role(g, ax.sup)
        return _hull_contains_all(g.role_region(ax.sup), g.role_region(ax.sub))
    if isinstance(ax, RoleAssertion):
        _check_role(g, ax.role)
        pair = concat(g.individual(ax.subject), g.individual(ax.object))
        return _in_hull(g.role_region(ax.role), pair)
    if isinstance(ax, ConceptAssertion):
        if not is_normal_form_iq(ax):
            raise NotNormalFormAxiom(str(ax))
        v = g.individual(ax.individual)
        concept = ax.concept
        if isinstance(concept, Conj):
            return all(_atom_hull_contains(c, part, v) for part in (concept.left, concept.right))
        if isinstance(concept, Exists):
            _check_role(g, concept.role)
            fillers = None if isinstance(concept.filler, Top) else c.region(concept.filler)
            return _successor_feasible(g.role_region(concept.role), fillers, v)
        return _atom_hull_contains(c, concept, v)
    if not is_normal_form_ci(ax):
        raise NotNormalFormAxiom(str(ax))

    lhs, rhs = ax.lhs, ax.rhs
    if isinstance(rhs, Exists):
        _check_role(g, rhs.role)
        if isinstance(lhs, Top):
            return False
        fillers = None if isinstance(rhs.filler, Top) else c.region(rhs.filler)
        return all(_successor_feasible(g.role_region(rhs.role), fillers, v)
                   for v in c.region(lhs))
    if isinstance(rhs, Top):
        return True
    target = c.region(rhs)
    if isinstance(lhs, Top):
        return False
    if isinstance(lhs, Conj):
        a1, a2 = c.bit(lhs.left), c.bit(lhs.right)
        if a1 is None and a2 is None:
            return False
        first, other = (lhs.right, a1) if a1 is None else (lhs.left, a2)
        generators = [v for v in c.region(first) if _has(v, other)]
        return _hull_contains_all(target, generators)
    if isinstance(lhs, Exists):
        _check_role(g, lhs.role)
        a = c.bit(lhs.filler)
        generators = [w.split()[0] for w in g.role_region(lhs.role) if _has(w.split()[1], a)]
        return _hull_contains_all(target, generators)
    return _hull_contains_all(target, c.region(lhs))


def _atom_hull_contains(c: _Checker, atom: Concept, v: BinaryVector) -> bool:
    if isinstance(atom, Top):
        return True
    return _in_hull(c.region(atom), v)
