"""Canonical text form of words and generator terms.

Output parses back with :mod:`elemcomm.dsl.parser` to an equal object.
"""

from __future__ import annotations

from collections.abc import Iterable

from elemcomm.algebra.elemgroup import GroupWord
from elemcomm.algebra.freering import RingElem, format_elem
from elemcomm.rewrite.decompose import GeneratorTerm
from elemcomm.rewrite.residual import ResidualWord, ZGenRecord


def format_word(w: GroupWord) -> str:
    return str(w)


def format_params(params: Iterable[RingElem]) -> str:
    return ", ".join(format_elem(p) for p in params)


def format_term(term: GeneratorTerm) -> str:
    core = f"{term.kind.value}[{term.i},{term.j}]({format_params(term.params)})"
    if not len(term.conjugator):
        return core
    return f"conj({format_word(term.conjugator)}, {core})"


def format_terms(terms: Iterable[GeneratorTerm]) -> str:
    return "\n".join(format_term(t) for t in terms)


def format_record(rec: ZGenRecord) -> str:
    return str(rec)


def format_record_conjugator(n: int, rec: ZGenRecord) -> str:
    """Conjugator of a residual record as a word; empty text for e."""
    if not rec.conjugator:
        return ""
    return format_word(GroupWord(n, rec.conjugator))


def format_residual(residual: ResidualWord) -> str:
    if not len(residual):
        return "e"
    return " ".join(format_record(rec) for rec in residual.records)
