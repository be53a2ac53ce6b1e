"""Decomposition of mixed commutator generators.

Every generator of [E(n,R,A), E(n,R,B)] is a conjugate ``^x g`` of one of

- ``z_ij(ab, c)`` or ``z_ij(ba, c)`` (kinds ``zab`` / ``zba``)
- ``[t_ij(a), t_ji(b)]`` (kind ``c2``)
- ``[t_ij(a), z_ij(b, c)]`` (kind ``c3``)

plus ``z_ij(p, c)`` with p in AB+BA (kind ``zres``), which covers the
relative subgroup E(n,R,AB+BA) directly. :class:`Decomposer` rewrites a
product of such terms into second-type generators at one fixed position
followed by a residual word in E(n,R,AB+BA), and keeps a trace of every
local rewrite.
"""

from __future__ import annotations

import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import structlog

from elemcomm.algebra.elemgroup import (
    GroupWord,
    Param,
    concat,
    elementary_commutator,
    word_comm,
    word_conj,
    word_inv,
    words_equal,
    z_gen,
)
from elemcomm.algebra.freering import (
    IDEAL_A,
    IDEAL_B,
    IDEAL_SYM,
    RingElem,
    check_degree,
    member,
)
from elemcomm.core.errors import (
    DegreeMismatch,
    ElemCommError,
    InvalidPosition,
    StepCheckFailed,
)
from elemcomm.core.options import DecomposeOptions
from elemcomm.rewrite.certificates import (
    Congruence,
    SecondTypeGen,
    TraceStep,
    verify_congruence,
)
from elemcomm.rewrite.lemmas import (
    lemma3_reduce,
    lemma4_reduce,
    require_degree,
    require_sort,
    transport,
)
from elemcomm.rewrite.residual import ResidualWord, ZGenRecord, join


class TermKind(str, Enum):
    """Generator families accepted by the decomposition."""

    ZAB = "zab"
    ZBA = "zba"
    C2 = "c2"
    C3 = "c3"
    ZRES = "zres"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    TermKind.ZAB: 3,
    TermKind.ZBA: 3,
    TermKind.C2: 2,
    TermKind.C3: 3,
    TermKind.ZRES: 2,
}


@dataclass(frozen=True, slots=True)
class GeneratorTerm:
    """Conjugated generator ``^conjugator g``.

    ``params`` is ``(a, b, c)`` for zab/zba/c3, ``(a, b)`` for c2 and
    ``(p, c)`` for zres.
    """

    kind: TermKind
    i: int
    j: int
    params: tuple[RingElem, ...]
    conjugator: GroupWord

    @classmethod
    def of(
        cls,
        kind: TermKind | str,
        i: int,
        j: int,
        *params: Param,
        conjugator: GroupWord | None = None,
        n: int | None = None,
    ) -> GeneratorTerm:
        kind = TermKind(kind)
        if len(params) != kind.arity:
            raise ValueError(f"{kind.value} takes {kind.arity} parameters")
        if conjugator is None:
            if n is None:
                raise ValueError("either a conjugator or a degree is required")
            conjugator = GroupWord.identity(n)
        return cls(
            kind, i, j, tuple(RingElem.coerce(p) for p in params), conjugator
        )

    @property
    def n(self) -> int:
        return self.conjugator.n

    def core_word(self) -> GroupWord:
        n, i, j, p = self.n, self.i, self.j, self.params
        if self.kind is TermKind.ZAB:
            return z_gen(n, i, j, p[0] * p[1], p[2])
        if self.kind is TermKind.ZBA:
            return z_gen(n, i, j, p[1] * p[0], p[2])
        if self.kind is TermKind.C2:
            return elementary_commutator(n, i, j, p[0], p[1])
        if self.kind is TermKind.C3:
            head = GroupWord.single(n, i, j, p[0])
            return word_comm(head, z_gen(n, i, j, p[1], p[2]))
        return z_gen(n, i, j, p[0], p[1])

    def word(self) -> GroupWord:
        return word_conj(self.conjugator, self.core_word())

    def validate(self) -> None:
        """Check positions and parameter sorts.

        Raises:
            InvalidPosition: for a diagonal or out-of-range position
            SortViolation: when a parameter is outside its ideal
        """
        n, i, j = self.n, self.i, self.j
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise InvalidPosition(self.i, self.j, self.n)
        if self.kind is TermKind.ZRES:
            require_sort("p", self.params[0], IDEAL_SYM)
            return
        require_sort("a", self.params[0], IDEAL_A)
        require_sort("b", self.params[1], IDEAL_B)


@dataclass(frozen=True, slots=True)
class Decomposition:
    """``product(inputs) == product(second_type) * residual``."""

    n: int
    fixed_pair: tuple[int, int]
    second_type: tuple[SecondTypeGen, ...]
    residual: ResidualWord
    trace: tuple[TraceStep, ...] = field(default=(), compare=False)

    def second_type_word(self) -> GroupWord:
        return concat(self.n, (g.word(self.n) for g in self.second_type))

    def output_word(self) -> GroupWord:
        return self.second_type_word() + self.residual.expand()

    def verify(self, terms: Sequence[GeneratorTerm]) -> bool:
        """Exact check of the decomposition against its input terms.

        The terms are reduced again with every certificate and every
        conjugation push checked on its own short words. When that rebuild
        equals this decomposition it is verified; any other decomposition is
        checked by evaluating the whole input and output products.
        """
        if any(g.position != self.fixed_pair for g in self.second_type):
            return False
        if any(
            not (member(g.a, IDEAL_A) and member(g.b, IDEAL_B))
            for g in self.second_type
        ):
            return False
        if not self.residual.is_valid(IDEAL_SYM):
            return False
        if self._rebuilt_by(terms):
            return True
        source = concat(self.n, (t.word() for t in terms))
        return words_equal(source, self.output_word())

    def _rebuilt_by(self, terms: Sequence[GeneratorTerm]) -> bool:
        opts = DecomposeOptions(
            n=self.n,
            fixed_pair=self.fixed_pair,
            max_degree=sys.maxsize,
            check_steps=True,
        )
        decomposer = Decomposer(structlog.get_logger().bind(phase="verify"))
        try:
            rebuilt = decomposer.decompose(terms, opts)
        except ElemCommError:
            return False
        return (
            rebuilt.second_type == self.second_type
            and rebuilt.residual == self.residual
        )


# ============================================================================
# Decomposer
# ============================================================================


class Decomposer:
    """Rewrites products of generator terms with structured logging."""

    def __init__(self, logger: Any = None) -> None:
        """Initialize decomposer.

        Args:
            logger: Optional structlog logger instance
        """
        self._logger = logger or structlog.get_logger()

    def decompose(
        self, terms: Sequence[GeneratorTerm], opts: DecomposeOptions
    ) -> Decomposition:
        """Decompose a product of terms.

        Raises:
            DegreeTooSmall: when n < 3
            DegreeMismatch: when a term has another degree
            SortViolation: when a term parameter is outside its ideal
            DegreeGuardExceeded: when an intermediate monomial grows too long
            StepCheckFailed: with ``opts.check_steps``, when a rewrite fails
        """
        n = opts.n
        require_degree(n)
        k, l = opts.fixed_pair
        if k == l or not (1 <= k <= n and 1 <= l <= n):
            raise InvalidPosition(k, l, n)

        log = self._logger.bind(n=n, fixed_pair=f"{k},{l}", terms=len(terms))
        gens: list[SecondTypeGen] = []
        residual = ResidualWord.empty(n)
        steps: list[TraceStep] = []

        for index, term in enumerate(terms):
            if term.n != n:
                raise DegreeMismatch(n, term.n)
            term.validate()
            check_param_degree(term, opts.max_degree)
            gen, chain = self._reduce_term(term, opts.fixed_pair)
            if opts.check_steps:
                _check_chain(index, term, gen, chain)
            term_residual = join(n, [cert.residual for cert in reversed(chain)])

            # Gs R G R' = Gs G (^(G^-1) R) R'
            if gen is not None:
                inverse = word_inv(gen.word(n))
                if opts.check_steps and not residual.conjugation_holds(inverse):
                    raise StepCheckFailed("conjugation", index)
                residual = residual.conjugated(inverse)
                gens.append(gen)
            residual = residual + term_residual
            residual.check_degree(opts.max_degree)
            steps.extend(step for cert in chain for step in cert.trace)

            log.debug(
                "decompose.term",
                index=index,
                kind=term.kind.value,
                position=f"{term.i},{term.j}",
                second_type=gen is not None,
                records=len(term_residual),
            )

        log.info(
            "decompose.summary",
            second_type=len(gens),
            residual_records=len(residual),
            max_degree=residual.max_degree(),
            max_conjugator=residual.max_conjugator(),
            steps=len(steps),
        )
        return Decomposition(n, opts.fixed_pair, tuple(gens), residual, tuple(steps))

    def _reduce_term(
        self, term: GeneratorTerm, fixed_pair: tuple[int, int]
    ) -> tuple[SecondTypeGen | None, list[Congruence]]:
        """Second-type generator and the chain of certificates leading to it.

        The first certificate starts at ``term.word()``, each one starts where
        the previous one ends, and the last ends at the generator's word (or
        at a word equal to e when the generator is None).
        """
        n, i, j, x = term.n, term.i, term.j, term.conjugator
        p = term.params

        if term.kind in (TermKind.ZAB, TermKind.ZBA, TermKind.ZRES):
            if term.kind is TermKind.ZAB:
                record = ZGenRecord(i, j, p[0] * p[1], p[2])
            elif term.kind is TermKind.ZBA:
                record = ZGenRecord(i, j, p[1] * p[0], p[2])
            else:
                record = ZGenRecord(i, j, p[0], p[1])
            pushed = ResidualWord.of(n, [record]).conjugated(x)
            source, identity = term.word(), GroupWord.identity(n)
            step = TraceStep("lemma1", source, pushed.expand())
            return None, [
                Congruence(source, identity, pushed, rule="lemma1", trace=(step,))
            ]

        if term.kind is TermKind.C2:
            a, b = p
            moved = lemma3_reduce(x, i, j, a, b)
            return self._finish(moved, (i, j), a, b, fixed_pair)

        a, b, c = p
        reduced = lemma4_reduce(x, i, j, a, b, c)
        head = reduced.congruence()
        if reduced.gen is None:
            return None, [head]
        gen = reduced.gen
        moved = lemma3_reduce(reduced.conjugator, gen.k, gen.l, gen.a, gen.b)
        g, chain = self._finish(moved, gen.position, gen.a, gen.b, fixed_pair)
        return g, [head, *chain]

    def _finish(
        self,
        unconjugated: Congruence,
        position: tuple[int, int],
        a: RingElem,
        b: RingElem,
        fixed_pair: tuple[int, int],
    ) -> tuple[SecondTypeGen | None, list[Congruence]]:
        """Transport ``[t(a), t(b)]`` at ``position`` to the fixed pair."""
        if not a or not b:
            # the generator is e; only the conjugation residual remains
            return None, [unconjugated]
        moved = transport(unconjugated.n, position, fixed_pair, a, b)
        return SecondTypeGen(fixed_pair[0], fixed_pair[1], a, b), [unconjugated, moved]


def _check_chain(
    index: int,
    term: GeneratorTerm,
    gen: SecondTypeGen | None,
    chain: Sequence[Congruence],
) -> None:
    """Check every certificate of a term on its own words.

    Raises:
        StepCheckFailed: when a certificate does not hold or the chain is broken
    """
    n = term.n
    head = term.word()
    for cert in chain:
        if cert.lhs != head or not verify_congruence(cert):
            raise StepCheckFailed(cert.rule or "rewrite", index)
        head = cert.rhs
    target = gen.word(n) if gen is not None else GroupWord.identity(n)
    if not words_equal(head, target):
        raise StepCheckFailed("endpoint", index)


def theorem1_decompose(
    terms: Sequence[GeneratorTerm],
    n: int,
    *,
    fixed_pair: tuple[int, int] | None = None,
    max_degree: int | None = None,
    logger: Any = None,
) -> Decomposition:
    """Functional entry point around :class:`Decomposer`."""
    opts = DecomposeOptions(n=n)
    if fixed_pair is not None:
        opts.fixed_pair = fixed_pair
    if max_degree is not None:
        opts.max_degree = max_degree
    return Decomposer(logger).decompose(terms, opts)


def check_param_degree(term: GeneratorTerm, limit: int) -> None:
    """Apply the degree guard to the parameters of an input term."""
    for param in term.params:
        check_degree(param, limit)
    for letter in term.conjugator:
        check_degree(letter.param, limit)
