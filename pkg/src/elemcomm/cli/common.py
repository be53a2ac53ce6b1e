"""Shared CLI plumbing: option types, logging setup and exit codes."""

from __future__ import annotations

import importlib
import logging
import sys
from typing import TYPE_CHECKING, Annotated, Any, NoReturn

if TYPE_CHECKING:  # pragma: no cover - typing only
    import typer
else:  # pragma: no cover - runtime fallback for typing
    typer = importlib.import_module("typer")

import structlog

from elemcomm.core.constants import EXIT_CAP, EXIT_USAGE
from elemcomm.core.errors import CapExceeded, ElemCommError

DegreeOption = Annotated[
    int,
    typer.Option("--n", help="Matrix degree n (at least 3).", min=3),
]
JsonFlag = Annotated[
    bool,
    typer.Option("--json", help="Emit JSON instead of rich tables."),
]


def _stderr_logger(*_args: Any) -> structlog.PrintLogger:
    return structlog.PrintLogger(sys.stderr)


def configure_logging(verbose: bool) -> None:
    """Send structlog events to stderr; INFO with --verbose, else WARNING."""
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.INFO if verbose else logging.WARNING
        ),
        logger_factory=_stderr_logger,
    )


def exit_code_for(exc: ElemCommError) -> int:
    if isinstance(exc, CapExceeded):
        return EXIT_CAP
    return EXIT_USAGE


def fail(exc: ElemCommError) -> NoReturn:
    """Print the error and exit with its mapped code."""
    typer.secho(f"error: {exc}", err=True, fg=typer.colors.RED)
    raise typer.Exit(code=exit_code_for(exc)) from exc


def usage_error(message: str) -> NoReturn:
    typer.secho(f"error: {message}", err=True, fg=typer.colors.RED)
    raise typer.Exit(code=EXIT_USAGE)


def parse_pair(text: str) -> tuple[int, int]:
    """Parse ``"k,l"`` into a position."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        usage_error(f"expected a position like 1,2, got {text!r}")
    return int(parts[0]), int(parts[1])
