"""CLI commands for generator decomposition and trace checking."""

from __future__ import annotations

import importlib
from pathlib import Path
from typing import TYPE_CHECKING, Annotated

if TYPE_CHECKING:  # pragma: no cover - typing only
    import typer
else:  # pragma: no cover - runtime fallback for typing
    typer = importlib.import_module("typer")

from rich.console import Console
from rich.table import Table

from elemcomm.cli.common import DegreeOption, JsonFlag, fail, parse_pair, usage_error
from elemcomm.core.constants import DEFAULT_DEGREE, EXIT_FAILURE
from elemcomm.core.errors import ElemCommError
from elemcomm.core.options import DecomposeOptions, resolve_max_degree
from elemcomm.dsl.parser import parse_terms
from elemcomm.dsl.traces import build_trace, check_trace, load_trace, write_trace
from elemcomm.rewrite.decompose import Decomposer
from elemcomm.schemas import TraceDocument

InputArgument = Annotated[
    Path,
    typer.Argument(
        help="File of generator terms (zab/zba/c3/c2/zres, optionally conj(...)).",
        exists=True,
        dir_okay=False,
        readable=True,
    ),
]
FixedPairOption = Annotated[
    str,
    typer.Option("--fixed-pair", help="Position k,l for every second-type generator."),
]
MaxDegreeOption = Annotated[
    int | None,
    typer.Option(
        "--max-degree",
        help="Monomial degree guard (default: ELEMCOMM_MAX_DEGREE or 64).",
        min=1,
    ),
]
TraceOption = Annotated[
    Path | None,
    typer.Option("--trace", help="Write the trace document to this path."),
]
TraceArgument = Annotated[
    Path,
    typer.Argument(help="Trace document written by decompose --trace.", exists=True),
]


def _render(doc: TraceDocument) -> None:
    console = Console()
    k, l = doc.fixed_pair
    table = Table(title=f"second-type generators at ({k},{l})")
    table.add_column("a")
    table.add_column("b")
    for g in doc.second_type:
        table.add_row(g.a, g.b)
    console.print(table)

    residual = Table(title="residual z-generators")
    residual.add_column("position")
    residual.add_column("p")
    residual.add_column("c")
    residual.add_column("conjugator")
    residual.add_column("in AB+BA")
    for r in doc.residual:
        residual.add_row(
            f"{r.i},{r.j}", r.p, r.c, r.conjugator or "e", "yes" if r.in_level else "no"
        )
    console.print(residual)


def decompose_command(
    input_file: InputArgument,
    n: DegreeOption = DEFAULT_DEGREE,
    fixed_pair: FixedPairOption = "1,2",
    max_degree: MaxDegreeOption = None,
    trace: TraceOption = None,
    json_output: JsonFlag = False,
) -> None:
    """Rewrite a product of generators into second-type generators and residual."""

    pair = parse_pair(fixed_pair)
    try:
        opts = DecomposeOptions(
            n=n, fixed_pair=pair, max_degree=resolve_max_degree(max_degree)
        )
        terms = parse_terms(input_file.read_text(encoding="utf-8"), n)
        result = Decomposer().decompose(terms, opts)
    except ElemCommError as exc:
        fail(exc)
    except ValueError as exc:
        usage_error(str(exc))

    doc = build_trace(terms, result, include_steps=trace is not None)
    if trace is not None:
        write_trace(doc, trace)

    if json_output:
        typer.echo(doc.model_dump_json(indent=2))
    else:
        _render(doc)
        typer.echo(f"verdict: {doc.verdict}")

    if doc.verdict != "pass":
        raise typer.Exit(code=EXIT_FAILURE)


def check_trace_command(trace_file: TraceArgument) -> None:
    """Re-verify a trace document from its text alone."""

    try:
        ok, problems = check_trace(load_trace(trace_file))
    except ElemCommError as exc:
        fail(exc)
    except ValueError as exc:
        usage_error(str(exc))

    for problem in problems:
        typer.secho(problem, err=True, fg=typer.colors.RED)
    if not ok:
        raise typer.Exit(code=EXIT_FAILURE)
    typer.secho("trace verified", fg=typer.colors.GREEN)
