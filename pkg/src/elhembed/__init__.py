"""
elhembed - Canonical Models and Geometric Embeddings for ELH

Normalizes ELH ontologies, decides entailment by saturation, builds the
finite canonical model, maps it into binary vector regions (and their
convex hulls) and model-checks normal-form axioms on those regions.
"""

import logging

from .canonical import build_canonical, canonical_elements, verify_canonical
from .embedding import (
    GeometricModel, IndexSystem, build_geometric, export_embedding, load_embedding, mu,
)
from .errors import ELHError
from .faithfulness import (
    FaithfulnessReport, FaithfulnessVerifier, verify_nonconvex_faithfulness,
    verify_strong_faithfulness,
)
from .hull import check_binary_hull_lemma, hull_member
from .interpretation import FiniteInterpretation, extension, satisfies
from .modelcheck import CheckResult, check_axiom, check_ci, check_iq, check_ri
from .normalizer import normalize
from .parser import parse_axiom, parse_ontology, serialize
from .reasoner import Reasoner, entails, saturate
from .syntax import Ontology, Signature, signature
from .universe import axiom_universe
from .vectors import BinaryVector, concat

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"
__all__ = [
    "Ontology",
    "Signature",
    "signature",
    "normalize",
    "parse_ontology",
    "parse_axiom",
    "serialize",
    "FiniteInterpretation",
    "extension",
    "satisfies",
    "Reasoner",
    "saturate",
    "entails",
    "build_canonical",
    "canonical_elements",
    "verify_canonical",
    "BinaryVector",
    "concat",
    "IndexSystem",
    "GeometricModel",
    "mu",
    "build_geometric",
    "export_embedding",
    "load_embedding",
    "hull_member",
    "check_binary_hull_lemma",
    "CheckResult",
    "check_ci",
    "check_iq",
    "check_ri",
    "check_axiom",
    "axiom_universe",
    "FaithfulnessReport",
    "FaithfulnessVerifier",
    "verify_strong_faithfulness",
    "verify_nonconvex_faithfulness",
    "ELHError",
]
