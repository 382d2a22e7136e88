"""
End-to-end faithfulness checks for O → I_O → η(I_O).

Every normal-form axiom over sig(O) is decided twice, once on the
geometric model and once by the entailment oracle; a faithful model
agrees on all of them.
"""

import itertools
import logging
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd

from .canonical import build_canonical
from .embedding import GeometricModel, build_geometric
from .errors import NotNormalized
from .modelcheck import check_axiom, satisfies_geometric
from .reasoner import get_reasoner
from .syntax import CI, RI, Axiom, Ontology, is_normalized, mentions_top
from .universe import Mismatch, axiom_universe, universe_size
from .utils import ontology_digest

logger = logging.getLogger(__name__)

Record = Tuple[Axiom, bool, bool]


def axiom_kind(axiom: Axiom) -> str:
    if isinstance(axiom, CI):
        return "ci"
    if isinstance(axiom, RI):
        return "ri"
    return "iq"


@dataclass
class FaithfulnessReport:
    """
    Outcome of one faithfulness run.

    Attributes:
    -----------
    digest : str
        SHA-256 of the serialized ontology.
    universe_size : int
        Number of axioms the universe holds before any limit.
    checked : dict
        Number of checked axioms per kind ('iq', 'ci', 'ri').
    mismatches : list of Mismatch
        Disagreements on ⊤-free axioms, sorted by axiom text.
    top_mismatches : list of Mismatch
        Disagreements on axioms mentioning ⊤ (only with ``include_top``).
    convex : bool
        Which reading of the model was checked.
    elapsed : float
        Seconds.
    records : list, optional
        (axiom, geometric verdict, entailed) for every checked axiom, in
        universe order. None unless the verifier was asked to keep them.
    """

    digest: str
    universe_size: int
    checked: Dict[str, int]
    mismatches: List[Mismatch]
    top_mismatches: List[Mismatch] = field(default_factory=list)
    convex: bool = True
    elapsed: float = 0.0
    records: Optional[List[Record]] = field(default=None, repr=False)

    @property
    def total(self) -> int:
        return sum(self.checked.values())

    @property
    def faithful(self) -> bool:
        return not self.mismatches

    def to_dict(self, deterministic: bool = False) -> Dict:
        doc = {
            "ontology": self.digest,
            "checked": self.total,
            "universe": self.universe_size,
            "counts": {k: self.checked.get(k, 0) for k in ("iq", "ci", "ri")},
            "convex": self.convex,
            "mismatches": [m.to_dict() for m in self.mismatches],
            "top_mismatches": [m.to_dict() for m in self.top_mismatches],
        }
        if not deterministic:
            doc["elapsed_ms"] = round(self.elapsed * 1e3, 3)
        return doc

    def to_frame(self) -> pd.DataFrame:
        """One row per checked axiom."""
        if self.records is None:
            raise ValueError("Per-axiom records were not kept; verify with records=True")
        rows = [{"axiom": str(ax), "kind": axiom_kind(ax), "geometric": observed,
                 "entailed": entailed, "agree": observed == entailed}
                for ax, observed, entailed in self.records]
        return pd.DataFrame(rows, columns=["axiom", "kind", "geometric", "entailed", "agree"])


class FaithfulnessVerifier:
    """
    Checks strong IQ and TBox faithfulness of geometric models.

    The axiom universe is streamed: only counts and mismatches are kept
    unless ``records`` is set.

    Parameters:
    -----------
    include_top : bool, default=False
        Also enumerate axioms with ⊤ in atom positions. Their mismatches are
        reported separately and never make a run unfaithful.
    limit : int, optional
        Check a seeded random sample of this many axioms instead of the
        whole universe.
    jobs : int, default=1
        Worker threads for the axiom checks.
    seed : int, default=0
        Seed of the sample drawn when ``limit`` is set.
    membership : str, default='hash'
        Membership mode passed to the model checker.
    records : bool, default=False
        Keep (axiom, geometric verdict, entailed) for every checked axiom,
        as needed by ``to_frame`` and :func:`pipeline_disagreements`.
    """

    chunk_size = 256

    def __init__(self, include_top: bool = False, limit: Optional[int] = None,
                 jobs: int = 1, seed: int = 0, membership: str = "hash",
                 records: bool = False):
        if jobs < 1:
            raise ValueError("jobs must be at least 1")
        if limit is not None and limit < 0:
            raise ValueError("limit must be non-negative")
        self.include_top = include_top
        self.limit = limit
        self.jobs = jobs
        self.seed = seed
        self.membership = membership
        self.records = records

    def _axioms(self, o: Ontology) -> Iterable[Axiom]:
        stream = axiom_universe(o.signature, include_top=self.include_top)
        if self.limit is None:
            return stream
        # reservoir sample, returned in universe order
        rng = np.random.default_rng(self.seed)
        reservoir: List[Tuple[int, Axiom]] = []
        for k, axiom in enumerate(stream):
            if len(reservoir) < self.limit:
                reservoir.append((k, axiom))
            else:
                j = int(rng.integers(0, k + 1))
                if j < self.limit:
                    reservoir[j] = (k, axiom)
        return [axiom for _, axiom in sorted(reservoir, key=lambda item: item[0])]

    def _model(self, o: Ontology, model: Optional[GeometricModel], convex: bool) -> GeometricModel:
        if model is not None:
            if not is_normalized(o):
                raise NotNormalized("Faithfulness is defined for normalized ontologies")
            return model
        return build_geometric(build_canonical(o), o.signature, convex=convex)

    def _map(self, fn, items: Iterable) -> Iterator:
        if self.jobs == 1:
            yield from map(fn, items)
            return
        items = iter(items)
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            while True:
                chunk = list(itertools.islice(items, self.chunk_size * self.jobs))
                if not chunk:
                    return
                yield from pool.map(fn, chunk)

    def verify(self, o: Ontology, model: Optional[GeometricModel] = None,
               convex: bool = True) -> FaithfulnessReport:
        """
        Compare a geometric model of ``o`` with the entailments of ``o``.

        Parameters:
        -----------
        o : Ontology
            Normalized and ⊥-free.
        model : GeometricModel, optional
            Model to check; by default the one built from I_O.
        convex : bool, default=True
            True runs the vertex model-checking algorithms (convex reading);
            False evaluates the plain set semantics of the regions.

        Returns:
        --------
        FaithfulnessReport
        """
        start = time.perf_counter()
        g = self._model(o, model, convex)
        oracle = get_reasoner(o)
        total = universe_size(o.signature, include_top=self.include_top)
        if self.limit is not None and self.limit < total:
            warnings.warn(f"Checking {self.limit} of {total} axioms (limit={self.limit})")

        if convex:
            def decide(ax):
                return check_axiom(g, ax, self.membership).verdict
        else:
            def decide(ax):
                return satisfies_geometric(g, ax)

        def run(ax) -> Record:
            return ax, decide(ax), oracle.entails(ax)

        checked = {"iq": 0, "ci": 0, "ri": 0}
        mismatches, top_mismatches = [], []
        records: Optional[List[Record]] = [] if self.records else None
        for record in self._map(run, self._axioms(o)):
            ax, observed, entailed = record
            checked[axiom_kind(ax)] += 1
            if observed != entailed:
                target = top_mismatches if mentions_top(ax) else mismatches
                target.append(Mismatch(ax, observed, entailed))
            if records is not None:
                records.append(record)
        mismatches.sort(key=lambda m: str(m.axiom))
        top_mismatches.sort(key=lambda m: str(m.axiom))
        if top_mismatches:
            warnings.warn(f"{len(top_mismatches)} mismatches on axioms mentioning Top")

        report = FaithfulnessReport(
            digest=ontology_digest(o),
            universe_size=total,
            checked=checked,
            mismatches=mismatches,
            top_mismatches=top_mismatches,
            convex=convex,
            elapsed=time.perf_counter() - start,
            records=records,
        )
        logger.info("faithfulness (%s): %d checks, %d mismatches",
                    "convex" if convex else "set", report.total, len(mismatches))
        return report


def verify_strong_faithfulness(o: Ontology, model: Optional[GeometricModel] = None,
                               **options) -> FaithfulnessReport:
    """
    Check the convex model η*(I_O) (or ``model``) against ``o``.

    Keyword options are passed to :class:`FaithfulnessVerifier`.
    """
    return FaithfulnessVerifier(**options).verify(o, model, convex=True)


def verify_nonconvex_faithfulness(o: Ontology, model: Optional[GeometricModel] = None,
                                  **options) -> FaithfulnessReport:
    """Same as :func:`verify_strong_faithfulness` for the vertex-set model η(I_O)."""
    return FaithfulnessVerifier(**options).verify(o, model, convex=False)


def pipeline_disagreements(convex: FaithfulnessReport,
                           nonconvex: FaithfulnessReport) -> List[Axiom]:
    """Axioms on which two reports of the same ontology give different verdicts."""
    if convex.records is None or nonconvex.records is None:
        raise ValueError("Both reports need per-axiom records")
    other = {ax: observed for ax, observed, _ in nonconvex.records}
    return [ax for ax, observed, _ in convex.records
            if ax in other and other[ax] != observed]
