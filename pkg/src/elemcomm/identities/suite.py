"""Built-in identity suite.

Each identity is checked exactly over the free ring. Identities that are
plain matrix equalities are also spot-checked in a finite ring under random
sort-respecting assignments.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import structlog
from rich.console import Console
from rich.table import Table

from elemcomm.algebra.elemgroup import (
    GroupWord,
    SquareMatrix,
    elementary_commutator,
    evaluate,
    word_comm,
    word_inv,
    z_gen,
)
from elemcomm.algebra.freering import IDEAL_AB, IDEAL_B, RingElem, member
from elemcomm.oracle.rings import FiniteIdeal, FiniteRing, resolve_ideal, ring_builtin
from elemcomm.oracle.specialize import (
    random_assignment,
    specialize_matrix,
    specialize_word,
    word_symbols,
)
from elemcomm.rewrite import congruences, lemmas
from elemcomm.rewrite.certificates import verify_congruence
from elemcomm.rewrite.decompose import GeneratorTerm, theorem1_decompose
from elemcomm.schemas import IdentityReport

#: Ring and ideal generators used for finite spot checks
SPOT_RING = "zmod:8"
SPOT_IDEALS = ("2", "2")
DEFAULT_SPOT_CHECKS = 50

a1, a2, a3, a4 = (RingElem.sym(f"a{k}") for k in range(1, 5))
b1, b2, b3, b4 = (RingElem.sym(f"b{k}") for k in range(1, 5))
c1, c2 = RingElem.sym("c1"), RingElem.sym("c2")

SpotPair = tuple[GroupWord, GroupWord | SquareMatrix]


@dataclass(frozen=True)
class Identity:
    """One named identity; ``check`` returns (holds, detail)."""

    name: str
    check: Callable[[], tuple[bool, str]]
    spot_pairs: Callable[[], list[SpotPair]] | None = field(default=None)


# ============================================================================
# Matrix displays
# ============================================================================


def _embed(n: int, block: list[list[RingElem]]) -> SquareMatrix:
    """Identity of degree n with ``block`` on rows/columns 1, 2."""
    rows = [list(row) for row in SquareMatrix.identity(n).rows]
    for r in range(2):
        for c in range(2):
            rows[r][c] = block[r][c]
    return SquareMatrix.from_entries(rows)


def commutator_display(n: int, a: RingElem, b: RingElem) -> SquareMatrix:
    """``[t_12(a), t_21(b)]`` in closed form."""
    ab, ba = a * b, b * a
    return _embed(n, [[1 + ab + ab * ab, -(ab * a)], [ba * b, 1 - ba]])


def commutator_inverse_display(n: int, a: RingElem, b: RingElem) -> SquareMatrix:
    """``[t_12(a), t_21(b)]^-1`` in closed form."""
    ab, ba = a * b, b * a
    return _embed(n, [[1 - ab, ab * a], [-(ba * b), 1 + ba + ba * ba]])


def _display_pairs() -> list[SpotPair]:
    return [(elementary_commutator(3, 1, 2, a1, b1), commutator_display(3, a1, b1))]


def _inverse_display_pairs() -> list[SpotPair]:
    word = word_inv(elementary_commutator(3, 1, 2, a1, b1))
    return [(word, commutator_inverse_display(3, a1, b1))]


def _check_matrix_pairs(pairs: Callable[[], list[SpotPair]]) -> tuple[bool, str]:
    for word, expected in pairs():
        assert isinstance(expected, SquareMatrix)
        if evaluate(word) != expected:
            return False, f"{word} differs from the displayed matrix"
    return True, ""


# ============================================================================
# Commutator formulas
# ============================================================================

_LETTER_POSITIONS = {
    "ih": lambda i, j, h: (i, h),
    "jh": lambda i, j, h: (j, h),
    "hi": lambda i, j, h: (h, i),
    "hj": lambda i, j, h: (h, j),
}


def _formula_pairs(kind: lemmas.FormulaKind) -> Callable[[], list[SpotPair]]:
    def pairs() -> list[SpotPair]:
        out: list[SpotPair] = []
        for n in (3, 4):
            for h in range(3, n + 1):
                z = elementary_commutator(n, 1, 2, a1, b1)
                k, l = _LETTER_POSITIONS[kind](1, 2, h)
                lhs = word_comm(GroupWord.single(n, k, l, c1), z)
                # module lookup keeps the formula patchable
                rhs = lemmas.lemma3_commutator_formula(kind, n, 1, 2, h, a1, b1, c1)
                out.append((lhs, rhs))
        return out

    return pairs


def _check_word_pairs(pairs: Callable[[], list[SpotPair]]) -> tuple[bool, str]:
    for lhs, rhs in pairs():
        assert isinstance(rhs, GroupWord)
        if evaluate(lhs) != evaluate(rhs):
            return False, f"{lhs} != {rhs}"
    return True, ""


# ============================================================================
# Certificates
# ============================================================================

_CONJUGATOR = GroupWord.of(3, (3, 1, c1), (2, 3, c2), (1, 2, 1))


def _check_lemma4() -> tuple[bool, str]:
    n, i, j = 3, 1, 2
    p, u, q, v = lemmas.lemma4_factors(n, i, j, a1, b1, c1)
    if not all(member(t.param, IDEAL_B) for t in u):
        return False, "u is not in E(n,B)"
    if not all(member(t.param, IDEAL_AB) for t in v):
        return False, "v is not in E(n,AB)"
    inner = word_comm(
        GroupWord.single(n, i, j, a1),
        z_gen(n, i, j, b1, c1),
    )
    head = GroupWord.single(n, i, j, a1)
    if evaluate(inner) != evaluate(head + word_comm(p + u, q + v)):
        return False, "factorisation through [P u, Q v] fails"
    for n in (3, 4):
        x = GroupWord.of(n, (3, 1, c1), (2, 3, c2))
        reduced = lemmas.lemma4_reduce(x, i, j, a1, b1, c1)
        if not verify_congruence(reduced.congruence()):
            return False, f"lemma4_reduce certificate fails for n={n}"
    return True, ""


def _certificate_check(build: Callable[[], Any]) -> Callable[[], tuple[bool, str]]:
    def check() -> tuple[bool, str]:
        certs = build()
        for cert in certs if isinstance(certs, list) else [certs]:
            if not verify_congruence(cert):
                return False, f"{cert.rule} certificate fails"
        return True, ""

    return check


def _check_decompose() -> tuple[bool, str]:
    terms = [
        GeneratorTerm.of("c2", 2, 3, a1, b1, conjugator=_CONJUGATOR),
        GeneratorTerm.of("c3", 1, 3, a2, b2, c1, n=3),
        GeneratorTerm.of("zab", 3, 1, a1, b2, c2, n=3),
    ]
    result = theorem1_decompose(terms, 3)
    if not result.verify(terms):
        return False, "decomposition does not reproduce the input product"
    detail = f"{len(result.second_type)} second-type, {len(result.residual)} records"
    return True, detail


def builtin_identities() -> list[Identity]:
    """Every identity of the suite, in report order."""
    identities = [
        Identity(
            "display.commutator",
            lambda: _check_matrix_pairs(_display_pairs),
            _display_pairs,
        ),
        Identity(
            "display.commutator-inverse",
            lambda: _check_matrix_pairs(_inverse_display_pairs),
            _inverse_display_pairs,
        ),
    ]
    for kind in ("ih", "jh", "hi", "hj"):
        pairs = _formula_pairs(kind)
        identities.append(
            Identity(
                f"lemma3.formula-{kind}",
                lambda pairs=pairs: _check_word_pairs(pairs),
                pairs,
            )
        )
    identities += [
        Identity("lemma4.chain", _check_lemma4),
        Identity(
            "lemma5.column",
            _certificate_check(lambda: lemmas.move_column(3, 1, 2, 3, a1, b1)),
        ),
        Identity(
            "lemma5.row",
            _certificate_check(lambda: lemmas.move_row(3, 1, 2, 3, a1, b1)),
        ),
        Identity(
            "s3-bullet-1",
            _certificate_check(
                lambda: congruences.scale_congruence(3, 1, 2, a1, c1, b1)
            ),
        ),
        Identity(
            "s3-bullet-2",
            _certificate_check(
                lambda: congruences.first_additivity(3, 1, 2, a1, a2, b1)
            ),
        ),
        Identity(
            "s3-bullet-3",
            _certificate_check(
                lambda: congruences.second_additivity(3, 1, 2, a1, b1, b2)
            ),
        ),
        Identity(
            "s3-bullet-4",
            _certificate_check(
                lambda: [
                    congruences.inverse_congruence(3, 1, 2, a1, b1, "first"),
                    congruences.inverse_congruence(3, 1, 2, a1, b1, "second"),
                ]
            ),
        ),
        Identity(
            "s3-bullet-5",
            _certificate_check(
                lambda: congruences.congruent_first(
                    3, 1, 2, a2 + a3 * c1 * a4, a2, b1
                )
            ),
        ),
        Identity(
            "s3-bullet-6",
            _certificate_check(
                lambda: congruences.congruent_second(
                    3, 1, 2, a1, b2 + b3 * b4 + a2 * b1, b2
                )
            ),
        ),
        Identity(
            "lemma6.centrality",
            _certificate_check(
                lambda: lemmas.centrality_congruence(_CONJUGATOR, 1, 2, a1, b1)
            ),
        ),
        Identity("theorem1.decompose", _check_decompose),
    ]
    return identities


# ============================================================================
# Runner
# ============================================================================


def spot_check(
    ring: FiniteRing,
    a: FiniteIdeal,
    b: FiniteIdeal,
    pairs: Sequence[SpotPair],
    count: int,
    rng: random.Random,
) -> bool:
    """Specialise every pair under ``count`` random assignments."""
    for lhs, rhs in pairs:
        symbols = word_symbols(lhs) | (
            word_symbols(rhs)
            if isinstance(rhs, GroupWord)
            else {s for row in rhs.rows for x in row for s in x.symbols()}
        )
        for _ in range(count):
            assignment = random_assignment(ring, symbols, a, b, rng)
            left = specialize_word(ring, lhs, assignment)
            if isinstance(rhs, GroupWord):
                right = specialize_word(ring, rhs, assignment)
            else:
                right = specialize_matrix(ring, rhs, assignment)
            if not np.array_equal(left, right):
                return False
    return True


class IdentitySuite:
    """Runs the identity suite with structured logging and a rich summary."""

    def __init__(self, logger: Any = None, ui: Console | None = None) -> None:
        """Initialize suite.

        Args:
            logger: Optional structlog logger instance
            ui: Optional Rich console for output
        """
        self._logger = logger or structlog.get_logger()
        self._ui = ui or Console()

    def run(
        self,
        identities: Sequence[Identity] | None = None,
        *,
        spot_checks: int = DEFAULT_SPOT_CHECKS,
        seed: int = 0,
    ) -> list[IdentityReport]:
        ring = ring_builtin(SPOT_RING)
        a = resolve_ideal(ring, SPOT_IDEALS[0])
        b = resolve_ideal(ring, SPOT_IDEALS[1])
        rng = random.Random(seed)
        log = self._logger.bind(operation="verify-paper", spot_ring=ring.name)

        reports: list[IdentityReport] = []
        if identities is None:
            identities = builtin_identities()
        for identity in identities:
            started = time.perf_counter()
            worlds = ["free"]
            try:
                passed, detail = identity.check()
            except Exception as exc:  # noqa: BLE001 - reported as a failure
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            if passed and identity.spot_pairs is not None and spot_checks > 0:
                worlds.append(ring.name)
                if not spot_check(ring, a, b, identity.spot_pairs(), spot_checks, rng):
                    passed, detail = False, f"fails after specialising to {ring.name}"
            report = IdentityReport(
                name=identity.name,
                passed=passed,
                worlds=worlds,
                detail=detail,
                elapsed_ms=int((time.perf_counter() - started) * 1000),
            )
            log.info(
                "identities.identity",
                name=report.name,
                passed=report.passed,
                elapsed_ms=report.elapsed_ms,
            )
            reports.append(report)

        log.info(
            "identities.summary",
            total=len(reports),
            failed=sum(not r.passed for r in reports),
        )
        return reports

    def render(self, reports: Sequence[IdentityReport]) -> None:
        table = Table(title="Identity suite")
        table.add_column("identity")
        table.add_column("result")
        table.add_column("worlds")
        table.add_column("ms", justify="right")
        table.add_column("detail")
        for r in reports:
            table.add_row(
                r.name,
                "[green]pass[/green]" if r.passed else "[red]FAIL[/red]",
                ", ".join(r.worlds),
                str(r.elapsed_ms),
                r.detail,
            )
        self._ui.print(table)
