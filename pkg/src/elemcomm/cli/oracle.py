"""CLI command running the finite-ring verification checks."""

from __future__ import annotations

import importlib
import json
from pathlib import Path
from typing import TYPE_CHECKING, Annotated, cast

if TYPE_CHECKING:  # pragma: no cover - typing only
    import typer
else:  # pragma: no cover - runtime fallback for typing
    typer = importlib.import_module("typer")

from rich.console import Console
from rich.table import Table

from elemcomm.cli.common import DegreeOption, JsonFlag, fail, usage_error
from elemcomm.core.constants import (
    DEFAULT_DEGREE,
    DEFAULT_PAIR_BUDGET,
    DEFAULT_TEST_RINGS,
    EXIT_CAP,
    EXIT_FAILURE,
)
from elemcomm.core.errors import ElemCommError
from elemcomm.core.options import OracleOptions, resolve_oracle_cap
from elemcomm.oracle.rings import (
    FiniteIdeal,
    FiniteRing,
    load_ring_file,
    resolve_ideal,
    ring_builtin,
)
from elemcomm.oracle.verify import CHECKS, CheckName, run_checks
from elemcomm.schemas import OracleReport

RingOption = Annotated[
    str | None,
    typer.Option("--ring", help="Builtin ring: zmod:k, dual:2 or t2f2."),
]
RingFileOption = Annotated[
    Path | None,
    typer.Option("--ring-file", help="Ring spec JSON file.", exists=True),
]
IdealAOption = Annotated[
    str | None,
    typer.Option("--A", help="Ideal A: name, R, 0, {x,y} or generators."),
]
IdealBOption = Annotated[
    str | None,
    typer.Option("--B", help="Ideal B, in the same forms as --A."),
]
CheckOption = Annotated[
    list[str] | None,
    typer.Option("--check", help=f"Check to run (repeatable): {', '.join(CHECKS)}."),
]
CapOption = Annotated[
    int | None,
    typer.Option("--cap", help="Element cap per closure.", min=1),
]
AllowLargeFlag = Annotated[
    bool,
    typer.Option("--allow-large", help="Also run checks that need E(n,R) of t2f2."),
]
PairBudgetOption = Annotated[
    int,
    typer.Option(
        "--pair-budget",
        help="Largest |H|*|K| formed as explicit commutator pairs.",
        min=1,
    ),
]
CrossCheckFlag = Annotated[
    bool,
    typer.Option(
        "--cross-check",
        help="Also form each mixed commutator as a normal closure and compare.",
    ),
]


def _load_ring(ring: str | None, ring_file: Path | None) -> FiniteRing:
    if (ring is None) == (ring_file is None):
        usage_error("give exactly one of --ring and --ring-file")
    if ring_file is not None:
        return load_ring_file(ring_file)
    return ring_builtin(cast(str, ring))


def _ideals(
    ring: FiniteRing, a: str | None, b: str | None
) -> tuple[FiniteIdeal, FiniteIdeal]:
    default_a, default_b = DEFAULT_TEST_RINGS.get(ring.name, (None, None))
    spec_a, spec_b = a or default_a, b or default_b
    if spec_a is None or spec_b is None:
        usage_error(f"no default ideals for {ring.name}; pass --A and --B")
    return resolve_ideal(ring, spec_a), resolve_ideal(ring, spec_b)


def _checks(names: list[str] | None) -> list[CheckName]:
    if not names:
        return list(CHECKS)
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        usage_error(f"unknown check {unknown[0]!r}; choose from {', '.join(CHECKS)}")
    return [cast(CheckName, c) for c in names]


def _exit_code(reports: list[OracleReport]) -> int:
    if any(r.equal is False for r in reports):
        return EXIT_FAILURE
    if any(
        (r.equal is None or r.cap_exceeded) and r.method != "skipped" for r in reports
    ):
        return EXIT_CAP
    return 0


def _render(reports: list[OracleReport]) -> None:
    table = Table(title="finite-ring checks")
    table.add_column("check")
    table.add_column("ring")
    table.add_column("A")
    table.add_column("B")
    table.add_column("orders")
    table.add_column("method")
    table.add_column("verdict")
    for r in reports:
        if r.method == "skipped":
            verdict = "[yellow]skipped[/yellow]"
        elif r.equal is None:
            verdict = "[yellow]cap exceeded[/yellow]"
        else:
            verdict = "[green]equal[/green]" if r.equal else "[red]differ[/red]"
        orders = ", ".join(f"{k}={v}" for k, v in r.orders.items())
        table.add_row(r.check, r.ring, r.ideal_a, r.ideal_b, orders, r.method, verdict)
    console = Console()
    console.print(table)
    for r in reports:
        if r.detail and r.method != "skipped":
            console.print(f"{r.check}: {r.detail}", markup=False)


def oracle_command(
    ring: RingOption = None,
    ring_file: RingFileOption = None,
    ideal_a: IdealAOption = None,
    ideal_b: IdealBOption = None,
    check: CheckOption = None,
    n: DegreeOption = DEFAULT_DEGREE,
    cap: CapOption = None,
    allow_large: AllowLargeFlag = False,
    pair_budget: PairBudgetOption = DEFAULT_PAIR_BUDGET,
    cross_check: CrossCheckFlag = False,
    json_output: JsonFlag = False,
) -> None:
    """Compare the subgroups by exhaustive enumeration over a finite ring."""

    checks = _checks(check)
    try:
        finite = _load_ring(ring, ring_file)
        a, b = _ideals(finite, ideal_a, ideal_b)
        opts = OracleOptions(
            n=n,
            cap=resolve_oracle_cap(cap),
            pair_budget=pair_budget,
            allow_large=allow_large,
            cross_check=cross_check,
        )
        reports = run_checks(finite, a, b, checks, opts)
    except ElemCommError as exc:
        fail(exc)
    except ValueError as exc:
        usage_error(str(exc))

    if json_output:
        typer.echo(json.dumps([r.model_dump() for r in reports], indent=2))
    else:
        _render(reports)

    code = _exit_code(reports)
    if code:
        raise typer.Exit(code=code)
