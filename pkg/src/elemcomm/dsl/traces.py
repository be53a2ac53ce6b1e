"""Trace documents for decomposition runs.

A trace is self-contained: :func:`check_trace` rebuilds the input terms, the
second-type generators, the residual and every rewrite step from the text
alone and re-derives the verdict.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal

from pydantic import ValidationError

from elemcomm.algebra.elemgroup import words_equal
from elemcomm.algebra.freering import IDEAL_SYM, format_elem, member
from elemcomm.core.errors import DslSyntaxError
from elemcomm.dsl.parser import parse_elem, parse_terms, parse_word
from elemcomm.dsl.printer import format_record_conjugator, format_term, format_word
from elemcomm.rewrite.certificates import SecondTypeGen
from elemcomm.rewrite.decompose import Decomposition, GeneratorTerm
from elemcomm.rewrite.residual import ResidualWord, ZGenRecord
from elemcomm.schemas import (
    ResidualEntry,
    SecondTypeEntry,
    TraceDocument,
    TraceStepEntry,
)


def build_trace(
    terms: list[GeneratorTerm], result: Decomposition, *, include_steps: bool = True
) -> TraceDocument:
    verdict: Literal["pass", "fail"] = "pass" if result.verify(terms) else "fail"
    return TraceDocument(
        n=result.n,
        fixed_pair=result.fixed_pair,
        input=[format_term(t) for t in terms],
        second_type=[
            SecondTypeEntry(
                position=g.position, a=format_elem(g.a), b=format_elem(g.b)
            )
            for g in result.second_type
        ],
        residual=[
            ResidualEntry(
                i=r.i,
                j=r.j,
                p=format_elem(r.p),
                c=format_elem(r.c),
                conjugator=format_record_conjugator(result.n, r),
                in_level=member(r.p, IDEAL_SYM),
            )
            for r in result.residual
        ],
        steps=[
            TraceStepEntry(
                rule=s.rule, before=format_word(s.before), after=format_word(s.after)
            )
            for s in (result.trace if include_steps else ())
        ],
        verdict=verdict,
    )


def write_trace(doc: TraceDocument, path: str | Path) -> None:
    Path(path).write_text(doc.model_dump_json(indent=2) + "\n", encoding="utf-8")


def load_trace(path: str | Path) -> TraceDocument:
    """Read a trace document.

    Raises:
        DslSyntaxError: for unreadable or malformed documents
    """
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        return TraceDocument.model_validate(raw)
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise DslSyntaxError(f"unreadable trace {path}: {exc}") from exc


def decomposition_from_trace(
    doc: TraceDocument,
) -> tuple[list[GeneratorTerm], Decomposition]:
    terms = parse_terms("\n".join(doc.input), doc.n)
    gens = tuple(
        SecondTypeGen(e.position[0], e.position[1], parse_elem(e.a), parse_elem(e.b))
        for e in doc.second_type
    )
    residual = ResidualWord(doc.n, tuple(_record(e, doc.n) for e in doc.residual))
    return terms, Decomposition(doc.n, doc.fixed_pair, gens, residual)


def check_trace(doc: TraceDocument) -> tuple[bool, list[str]]:
    """Re-verify a trace.

    Returns:
        Whether the recorded verdict is reproduced, and the problems found
    """
    problems: list[str] = []
    terms, result = decomposition_from_trace(doc)
    holds = result.verify(terms)
    if not holds:
        problems.append("decomposition does not reproduce the input product")
    for index, step in enumerate(doc.steps):
        before = parse_word(step.before, doc.n)
        after = parse_word(step.after, doc.n)
        if not words_equal(before, after):
            problems.append(f"step {index} ({step.rule}) is not an identity")
    recomputed = "pass" if holds and not problems else "fail"
    if recomputed != doc.verdict:
        problems.append(f"recorded verdict {doc.verdict}, recomputed {recomputed}")
    return recomputed == doc.verdict and recomputed == "pass", problems


def _record(entry: ResidualEntry, n: int) -> ZGenRecord:
    conjugator = parse_word(entry.conjugator, n).letters if entry.conjugator else ()
    return ZGenRecord(
        entry.i,
        entry.j,
        parse_elem(entry.p),
        parse_elem(entry.c),
        conjugator=conjugator,
    )
