"""
Walk-through of the elhembed pipeline on a small ontology.

This script:
1. Parses and normalizes an ontology given in .elh syntax
2. Decides a few entailments with the saturation reasoner
3. Builds the finite canonical model and embeds it into binary vectors
4. Model checks axioms on the embedding and runs the faithfulness check
5. Optionally measures and plots the runtime of the model checker
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from elhembed import (
    Reasoner, build_canonical, build_geometric, check_axiom, normalize, parse_axiom,
    parse_ontology, verify_nonconvex_faithfulness, verify_strong_faithfulness,
)
from elhembed.scaling import fit_loglog_slope, measure_scaling, plot_scaling


def banner(title: str):
    print(f"\n{'='*70}")
    print(title)
    print(f"{'='*70}\n")


def show_canonical(o):
    """
    Print the canonical model of ``o`` and return it.

    Parameters:
    -----------
    o : Ontology
        Normalized ontology.

    Returns:
    --------
    FiniteInterpretation
    """
    banner("Canonical model")
    i = build_canonical(o)
    print(f"  Domain size: {i.size}")
    for name in o.concept_names:
        members = ", ".join(i.label(d) for d in sorted(i.concept(name)))
        print(f"  {name:8s}: {{{members}}}")
    for role in o.role_names:
        pairs = ", ".join(f"({i.label(d)}, {i.label(e)})" for d, e in sorted(i.role(role)))
        print(f"  {role:8s}: {{{pairs}}}")
    return i


def show_checks(g, queries):
    """Model check each query on ``g`` and print the verdicts."""
    banner("Model checking on the embedding")
    print(f"  Dimension: {g.dimension}, distinct vertices: {len(g.vertices)}\n")
    for text in queries:
        result = check_axiom(g, parse_axiom(text))
        mark = "✓" if result.verdict else "✗"
        print(f"  {mark} {text:40s} {result.elapsed * 1e6:8.1f} µs")


def main():
    """
    Run the pipeline on the configured ontology.
    """
    banner(" " * 15 + "ELH CANONICAL MODELS - ELHEMBED")

    # ========================================================================
    # CONFIGURATION - edit these to try other ontologies and queries
    # ========================================================================

    ONTOLOGY = """
    SubClassOf(A B)
    ClassAssertion(A a)
    ClassAssertion(B b)
    RoleAssertion(r a b)
    """

    QUERIES = [
        'ClassAssertion(B a)',
        'ClassAssertion(A b)',
        'ClassAssertion(Some(r B) a)',
        'SubClassOf(B A)',
        'SubClassOf(And(A B) A)',
    ]

    MEASURE_SCALING = False
    SCALING_SIZES = (8, 16, 32, 64)

    # ========================================================================

    try:
        o = normalize(parse_ontology(ONTOLOGY))
        banner("Entailment")
        reasoner = Reasoner(o)
        for text in QUERIES:
            entailed = reasoner.entails(parse_axiom(text))
            print(f"  {'✓' if entailed else '✗'} {text}")

        i = show_canonical(o)
        g = build_geometric(i, o.signature)
        show_checks(g, QUERIES)

        banner("Faithfulness")
        convex = verify_strong_faithfulness(o)
        nonconvex = verify_nonconvex_faithfulness(o)
        print(f"  Convex model:   {convex.total} checks, {len(convex.mismatches)} mismatches")
        print(f"  Vertex sets:    {nonconvex.total} checks, {len(nonconvex.mismatches)} mismatches")

        if MEASURE_SCALING:
            banner("Runtime of A ⊑ ∃r.B")
            frame = measure_scaling({"sizes": SCALING_SIZES})
            print(frame.to_string(index=False))
            print(f"\n  log-log slope: {fit_loglog_slope(frame):.2f}")
            plot_scaling(frame, "scaling.png")

        print(f"\n{'='*70}\n")

    except Exception as e:
        print(f"\n✗ Error: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
