"""CLI commands evaluating DSL words: ``eval`` and ``level``."""

from __future__ import annotations

import importlib
import json
from typing import TYPE_CHECKING, Annotated

if TYPE_CHECKING:  # pragma: no cover - typing only
    import typer
else:  # pragma: no cover - runtime fallback for typing
    typer = importlib.import_module("typer")

from rich.console import Console
from rich.table import Table

from elemcomm.algebra.elemgroup import SquareMatrix, evaluate, matrix_level
from elemcomm.algebra.freering import (
    FULL_RING,
    IDEAL_A,
    IDEAL_AB,
    IDEAL_B,
    IDEAL_BA,
    IDEAL_SYM,
    IDEAL_SYM_AA,
    IDEAL_SYM_BB,
    format_elem,
)
from elemcomm.cli.common import DegreeOption, JsonFlag, fail, usage_error
from elemcomm.core.constants import DEFAULT_DEGREE
from elemcomm.core.errors import ElemCommError
from elemcomm.dsl.parser import parse_word

WordArgument = Annotated[
    str, typer.Argument(help="Word in the DSL, e.g. 't[1,2](a1)'.")
]

LEVEL_PATTERNS = (
    IDEAL_A,
    IDEAL_B,
    IDEAL_AB,
    IDEAL_BA,
    IDEAL_SYM,
    IDEAL_SYM_AA,
    IDEAL_SYM_BB,
    FULL_RING,
)


def _evaluate(text: str, n: int) -> SquareMatrix:
    try:
        return evaluate(parse_word(text, n))
    except ElemCommError as exc:
        fail(exc)
    except ValueError as exc:
        usage_error(str(exc))


def eval_word(
    word: WordArgument,
    n: DegreeOption = DEFAULT_DEGREE,
    json_output: JsonFlag = False,
) -> None:
    """Multiply out a word and print its matrix."""

    m = _evaluate(word, n)
    rows = [[format_elem(x) for x in row] for row in m.rows]
    if json_output:
        typer.echo(json.dumps({"n": n, "rows": rows}, indent=2))
        return
    table = Table(show_header=False)
    for _ in range(n):
        table.add_column()
    for row in rows:
        table.add_row(*row)
    Console().print(table)


def level_word(
    word: WordArgument,
    n: DegreeOption = DEFAULT_DEGREE,
    json_output: JsonFlag = False,
) -> None:
    """Report for each ideal pattern whether the word's matrix is e modulo it."""

    m = _evaluate(word, n)
    verdicts = {str(ideal): matrix_level(m, ideal) for ideal in LEVEL_PATTERNS}
    if json_output:
        typer.echo(json.dumps(verdicts, indent=2))
        return
    for ideal, holds in verdicts.items():
        typer.echo(f"{ideal}: {'yes' if holds else 'no'}")
