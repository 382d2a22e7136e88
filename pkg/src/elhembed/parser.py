"""
Reader and writer for the line-oriented ``.elh`` ontology format.

Grammar (whitespace-insensitive inside statements, ``#`` starts a comment
that runs to the end of the line)::

    stmt    := "SubClassOf(" concept concept ")"
             | "SubRoleOf(" role role ")"
             | "ClassAssertion(" concept ind ")"
             | "RoleAssertion(" role ind ind ")"
    concept := "Top" | "Bottom" | name
             | "And(" concept concept+ ")" | "Some(" role concept ")"
"""

import logging
from typing import List, Optional

import parsy as p

from .errors import BottomNotSupported, ELHSyntaxError, ReservedNameError
from .syntax import (
    BOTTOM, CI, RI, TOP, Atomic, Axiom, ConceptAssertion, Exists, FRESH_PREFIX,
    Ontology, RoleAssertion, axiom_signature, conjunction, contains_bottom,
)

logger = logging.getLogger(__name__)

ignored = p.regex(r"(?:\s|#[^\n]*)*")


def lexeme(parser: p.Parser) -> p.Parser:
    return parser << ignored


lparen = lexeme(p.string("(")).desc("'('")
rparen = lexeme(p.string(")")).desc("')'")
word = lexeme(p.regex(r"[A-Za-z0-9_]+"))
role_name = word.desc("role")
individual_name = word.desc("individual")
keyword = lexeme(
    p.regex(r"(?:SubClassOf|SubRoleOf|ClassAssertion|RoleAssertion)\b")
).desc("SubClassOf, SubRoleOf, ClassAssertion or RoleAssertion")


# No .desc() on the generated parsers: it would move every failure back to
# the start of the construct.
@p.generate
def concept():
    name = yield word.desc("concept")
    if name in ("And", "Some"):
        opened = yield lparen.optional()
        if opened is not None:
            if name == "And":
                parts = yield concept.at_least(2)
                yield rparen
                return conjunction(parts)
            role = yield role_name
            filler = yield concept
            yield rparen
            return Exists(role, filler)
    if name == "Top":
        return TOP
    if name == "Bottom":
        return BOTTOM
    return Atomic(name)


@p.generate
def statement():
    kind = yield keyword
    yield lparen
    if kind == "SubClassOf":
        lhs = yield concept
        rhs = yield concept
        result = CI(lhs, rhs)
    elif kind == "SubRoleOf":
        sub = yield role_name
        sup = yield role_name
        result = RI(sub, sup)
    elif kind == "ClassAssertion":
        c = yield concept
        individual = yield individual_name
        result = ConceptAssertion(c, individual)
    else:
        role = yield role_name
        subject = yield individual_name
        obj = yield individual_name
        result = RoleAssertion(role, subject, obj)
    yield rparen
    return result


def _syntax_error(text: str, index: int, expected) -> ELHSyntaxError:
    line, column = p.line_info_at(text, index)
    return ELHSyntaxError(line + 1, column + 1, " or ".join(sorted(expected)))


def _read_statements(text: str, at_most: Optional[int] = None) -> List[Axiom]:
    """Parse statements one at a time so errors keep their own position."""
    axioms: List[Axiom] = []
    index = ignored(text, 0).index
    while index < len(text):
        if at_most is not None and len(axioms) == at_most:
            raise _syntax_error(text, index, ["end of input"])
        result = statement(text, index)
        if not result.status:
            raise _syntax_error(text, result.furthest, result.expected)
        axioms.append(result.value)
        index = result.index
    return axioms


def _validate(axioms, allow_reserved: bool) -> None:
    for axiom in axioms:
        if contains_bottom(axiom):
            raise BottomNotSupported(str(axiom))
        if allow_reserved:
            continue
        sig = axiom_signature(axiom)
        for name in sig.concepts + sig.roles + sig.individuals:
            if name.startswith(FRESH_PREFIX):
                raise ReservedNameError(
                    f"Name '{name}' uses the reserved prefix '{FRESH_PREFIX}'")


def parse_ontology(text: str, allow_reserved: bool = False) -> Ontology:
    """
    Parse ``.elh`` text into an ontology.

    Parameters:
    -----------
    text : str
        Document text; statements separated by whitespace or newlines.
    allow_reserved : bool, default=False
        Accept names with the fresh-name prefix, e.g. when re-reading the
        output of normalization.

    Returns:
    --------
    Ontology
        Duplicate statements collapse.

    Raises:
    -------
    ELHSyntaxError
        With the 1-based line and column of the first offending token.
    BottomNotSupported
        If ⊥ occurs in any statement.
    ReservedNameError
        If a name starts with the fresh-name prefix and ``allow_reserved``
        is not set.
    """
    axioms = _read_statements(text)
    _validate(axioms, allow_reserved)
    o = Ontology.from_axioms(axioms)
    logger.debug("parsed %d statements into %d axioms", len(axioms), len(o))
    return o


def parse_axiom(text: str, allow_reserved: bool = False) -> Axiom:
    """Parse a single statement. Errors as in :func:`parse_ontology`."""
    axioms = _read_statements(text, at_most=1)
    if not axioms:
        raise _syntax_error(text, len(text), ["statement"])
    axiom = axioms[0]
    _validate([axiom], allow_reserved)
    return axiom


def serialize(o: Ontology) -> str:
    """Canonical text of ``o``: axioms sorted lexicographically, one per line."""
    lines = sorted(str(axiom) for axiom in o.tbox | o.abox)
    return "".join(f"{line}\n" for line in lines)


def read_ontology(path: str, allow_reserved: bool = False) -> Ontology:
    """Parse an ``.elh`` file (UTF-8)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ontology(fh.read(), allow_reserved=allow_reserved)


def write_ontology(o: Ontology, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(o))
