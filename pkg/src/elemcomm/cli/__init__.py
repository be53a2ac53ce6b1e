"""CLI entrypoints for elemcomm."""

from __future__ import annotations

import importlib
from collections.abc import Sequence
from typing import TYPE_CHECKING, Annotated, Any

if TYPE_CHECKING:  # pragma: no cover - typing only
    import typer
    from typer import Typer as TyperType
else:  # pragma: no cover - runtime fallback for typing
    typer = importlib.import_module("typer")
    TyperType = Any

from elemcomm.cli.common import configure_logging
from elemcomm.cli.decompose import check_trace_command, decompose_command
from elemcomm.cli.identities import verify_paper
from elemcomm.cli.oracle import oracle_command
from elemcomm.cli.words import eval_word, level_word

app: TyperType = typer.Typer(
    help="Symbolic and finite-ring checks for mixed elementary commutators.",
    no_args_is_help=True,
)

VerboseFlag = Annotated[
    bool,
    typer.Option("--verbose", "-v", help="Log progress events to stderr."),
]


@app.callback()
def main(verbose: VerboseFlag = False) -> None:
    configure_logging(verbose)


def run_cli(args: Sequence[str] | None = None) -> None:
    app(args=args)


app.command("verify-paper")(verify_paper)
app.command("verify-identities", hidden=True)(verify_paper)
app.command("eval")(eval_word)
app.command("level")(level_word)
app.command("decompose")(decompose_command)
app.command("check-trace")(check_trace_command)
app.command("oracle")(oracle_command)

__all__ = ["app", "run_cli"]
