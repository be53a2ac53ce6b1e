"""CLI command running the built-in identity suite."""

from __future__ import annotations

import importlib
import json
from typing import TYPE_CHECKING, Annotated

if TYPE_CHECKING:  # pragma: no cover - typing only
    import typer
else:  # pragma: no cover - runtime fallback for typing
    typer = importlib.import_module("typer")

from rich.console import Console

from elemcomm.cli.common import JsonFlag
from elemcomm.core.constants import EXIT_FAILURE
from elemcomm.identities.suite import DEFAULT_SPOT_CHECKS, IdentitySuite

SpotChecksOption = Annotated[
    int,
    typer.Option(
        "--spot-checks",
        help="Random finite-ring assignments per matrix identity (0 disables).",
        min=0,
    ),
]
SeedOption = Annotated[
    int,
    typer.Option("--seed", help="Seed for the spot-check assignments."),
]


def verify_paper(
    spot_checks: SpotChecksOption = DEFAULT_SPOT_CHECKS,
    seed: SeedOption = 0,
    json_output: JsonFlag = False,
) -> None:
    """Check every built-in identity; exit 1 when any fails."""

    suite = IdentitySuite(ui=Console())
    reports = suite.run(spot_checks=spot_checks, seed=seed)

    if json_output:
        typer.echo(json.dumps([r.model_dump() for r in reports], indent=2))
    else:
        suite.render(reports)
        for r in reports:
            typer.echo(f"{'PASS' if r.passed else 'FAIL'} {r.name}")

    failed = [r.name for r in reports if not r.passed]
    if failed:
        typer.secho(
            f"{len(failed)} of {len(reports)} identities failed",
            err=True,
            fg=typer.colors.RED,
        )
        raise typer.Exit(code=EXIT_FAILURE)
    if not json_output:
        typer.secho(f"all {len(reports)} identities hold", fg=typer.colors.GREEN)
