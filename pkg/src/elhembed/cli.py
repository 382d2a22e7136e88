"""
Command line front end: ``elhembed <command> ...``.

Exit codes: 0 success (or the checked property holds), 1 it does not
hold, 2 usage or input errors, 3 internal errors.
"""

import json
import logging
import sys

import click

from .canonical import build_canonical
from .embedding import build_geometric, export_embedding, load_embedding
from .errors import (
    BottomNotSupported, ELHError, ELHSyntaxError, NotNormalFormAxiom, ReservedNameError,
)
from .faithfulness import FaithfulnessVerifier
from .interpretation import FiniteInterpretation
from .modelcheck import MEMBERSHIP, check_axiom
from .normalizer import normalize
from .parser import parse_axiom, parse_ontology, serialize
from .reasoner import Reasoner
from .syntax import Signature
from .utils import dump_json

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

_INPUT_ERRORS = (ELHSyntaxError, BottomNotSupported, ReservedNameError,
                 NotNormalFormAxiom, json.JSONDecodeError)


class _Group(click.Group):
    """Maps library exceptions onto the exit-code table."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except _INPUT_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)
        except ELHError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_INTERNAL)
        except Exception as exc:
            logger.debug("unexpected failure", exc_info=True)
            click.echo(f"internal error: {exc.__class__.__name__}: {exc}", err=True)
            ctx.exit(EXIT_INTERNAL)


def _read_ontology(fh, allow_reserved: bool):
    return parse_ontology(fh.read(), allow_reserved=allow_reserved)


def _read_json(fh, option: str):
    try:
        return json.load(fh)
    except json.JSONDecodeError as exc:
        raise click.BadParameter(f"not valid JSON: {exc}", param_hint=option) from None


ontology_option = click.option(
    "--ontology", "ontology_file", type=click.File("r", encoding="utf-8"),
    help="Ontology in .elh syntax ('-' for stdin).")
allow_reserved_option = click.option(
    "--allow-reserved", is_flag=True, help="Accept names with the fresh-name prefix N_.")
deterministic_option = click.option(
    "--deterministic", is_flag=True, help="Omit timing fields for reproducible output.")
membership_option = click.option(
    "--membership", type=click.Choice(MEMBERSHIP), default="hash", show_default=True,
    help="Role-region membership test used by the model checker.")


@click.group(cls=_Group)
@click.option("--verbose", is_flag=True, help="Log debug output to stderr.")
@click.version_option(package_name="elhembed")
def cli(verbose):
    """Finite canonical models and geometric embeddings of ELH ontologies."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")


@cli.command("normalize")
@ontology_option
@click.option("--out", type=click.File("w", encoding="utf-8"), default="-",
              help="Output .elh file (default stdout).")
@allow_reserved_option
def normalize_cmd(ontology_file, out, allow_reserved):
    """Normalize an ontology."""
    if ontology_file is None:
        raise click.UsageError("--ontology is required")
    o = _read_ontology(ontology_file, allow_reserved)
    out.write(serialize(normalize(o)))


@cli.command("entail")
@ontology_option
@click.option("--axiom", required=True, help="Normal-form axiom, e.g. 'ClassAssertion(B a)'.")
@allow_reserved_option
@click.pass_context
def entail_cmd(ctx, ontology_file, axiom, allow_reserved):
    """Decide whether the ontology entails an axiom."""
    if ontology_file is None:
        raise click.UsageError("--ontology is required")
    o = normalize(_read_ontology(ontology_file, allow_reserved))
    query = parse_axiom(axiom, allow_reserved=True)
    entailed = Reasoner(o).entails(query)
    dump_json({"entailed": entailed}, sys.stdout)
    ctx.exit(EXIT_OK if entailed else EXIT_FALSE)


@cli.command("canonical")
@ontology_option
@click.option("--out", type=click.File("w", encoding="utf-8"), default="-",
              help="Output interpretation JSON (default stdout).")
@allow_reserved_option
def canonical_cmd(ontology_file, out, allow_reserved):
    """Build the canonical model of the (normalized) ontology."""
    if ontology_file is None:
        raise click.UsageError("--ontology is required")
    o = normalize(_read_ontology(ontology_file, allow_reserved))
    dump_json(build_canonical(o).to_json(), out)


@cli.command("embed")
@ontology_option
@click.option("--interpretation", "interpretation_file", type=click.File("r", encoding="utf-8"),
              help="Interpretation JSON to embed instead of a canonical model.")
@click.option("--convex/--no-convex", default=True, show_default=True,
              help="Mark regions as generators of their convex hulls.")
@click.option("--out", type=click.File("w", encoding="utf-8"), default="-",
              help="Output embedding JSON (default stdout).")
@allow_reserved_option
def embed_cmd(ontology_file, interpretation_file, convex, out, allow_reserved):
    """Embed a canonical model or a given interpretation."""
    if (ontology_file is None) == (interpretation_file is None):
        raise click.UsageError("Give exactly one of --ontology and --interpretation")
    if ontology_file is not None:
        o = normalize(_read_ontology(ontology_file, allow_reserved))
        g = build_geometric(build_canonical(o), o.signature, convex=convex)
    else:
        i = FiniteInterpretation.from_json(_read_json(interpretation_file, "--interpretation"))
        sig = Signature.of(i.concepts, i.roles, i.individuals)
        g = build_geometric(i, sig, convex=convex)
    dump_json(export_embedding(g), out)


@cli.command("modelcheck")
@click.option("--embedding", "embedding_file", required=True,
              type=click.File("r", encoding="utf-8"), help="Embedding JSON.")
@click.option("--axiom", required=True, help="Normal-form CI, IQ or RI.")
@membership_option
@deterministic_option
@click.pass_context
def modelcheck_cmd(ctx, embedding_file, axiom, membership, deterministic):
    """Check a normal-form axiom against an embedding."""
    doc = _read_json(embedding_file, "--embedding")
    try:
        g = load_embedding(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise click.BadParameter(f"malformed embedding: {exc}", param_hint="--embedding") from None
    result = check_axiom(g, parse_axiom(axiom, allow_reserved=True), membership)
    dump_json(result.to_dict(deterministic=deterministic), sys.stdout)
    ctx.exit(EXIT_OK if result.verdict else EXIT_FALSE)


@cli.command("faithfulness")
@ontology_option
@click.option("--report", type=click.File("w", encoding="utf-8"), default="-",
              help="Output report JSON (default stdout).")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed of the sample taken under --limit.")
@click.option("--limit", type=click.IntRange(min=0), default=None,
              help="Check a random sample of this many axioms.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker threads.")
@click.option("--include-top", is_flag=True, help="Also enumerate axioms with Top as an atom.")
@click.option("--nonconvex", is_flag=True, help="Check the vertex-set model in set semantics.")
@membership_option
@deterministic_option
@allow_reserved_option
@click.pass_context
def faithfulness_cmd(ctx, ontology_file, report, seed, limit, jobs, include_top,
                     nonconvex, membership, deterministic, allow_reserved):
    """Verify strong IQ and TBox faithfulness of the canonical embedding."""
    if ontology_file is None:
        raise click.UsageError("--ontology is required")
    o = normalize(_read_ontology(ontology_file, allow_reserved))
    verifier = FaithfulnessVerifier(include_top=include_top, limit=limit, jobs=jobs,
                                    seed=seed, membership=membership)
    result = verifier.verify(o, convex=not nonconvex)
    dump_json(result.to_dict(deterministic=deterministic), report)
    ctx.exit(EXIT_OK if result.faithful else EXIT_FALSE)


def main():
    cli(prog_name="elhembed")


if __name__ == "__main__":
    main()
