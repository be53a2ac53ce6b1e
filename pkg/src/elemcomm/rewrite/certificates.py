"""Congruence certificates and rewrite trace steps.

A :class:`Congruence` states ``eval(lhs) = eval(rhs) * eval(residual)`` where
every residual record lies in the residual's level (AB+BA unless stated
otherwise). :func:`verify_congruence` checks both halves exactly over the
free ring, so a certificate never has to be trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from elemcomm.algebra.elemgroup import (
    GroupWord,
    Param,
    elementary_commutator,
    words_equal,
)
from elemcomm.algebra.freering import IDEAL_SYM, IdealPattern, RingElem, format_elem
from elemcomm.rewrite.residual import ResidualWord


@dataclass(frozen=True, slots=True)
class SecondTypeGen:
    """Elementary commutator ``[t_kl(a), t_lk(b)]`` with a in A and b in B."""

    k: int
    l: int
    a: RingElem
    b: RingElem

    @classmethod
    def of(cls, k: int, l: int, a: Param, b: Param) -> SecondTypeGen:
        return cls(k, l, RingElem.coerce(a), RingElem.coerce(b))

    @property
    def position(self) -> tuple[int, int]:
        return (self.k, self.l)

    def word(self, n: int) -> GroupWord:
        return elementary_commutator(n, self.k, self.l, self.a, self.b)

    def __str__(self) -> str:
        return (
            f"[t[{self.k},{self.l}]({format_elem(self.a)}), "
            f"t[{self.l},{self.k}]({format_elem(self.b)})]"
        )


@dataclass(frozen=True, slots=True)
class TraceStep:
    """One local rewrite: ``eval(before) == eval(after)``."""

    rule: str
    before: GroupWord
    after: GroupWord

    def verify(self) -> bool:
        return words_equal(self.before, self.after)


@dataclass(frozen=True, slots=True)
class Congruence:
    """``lhs == rhs * residual`` with the residual in E(n, R, level)."""

    lhs: GroupWord
    rhs: GroupWord
    residual: ResidualWord
    level: IdealPattern = IDEAL_SYM
    rule: str = ""
    trace: tuple[TraceStep, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.lhs.n

    def output_word(self) -> GroupWord:
        return self.rhs + self.residual.expand()

    def then(self, nxt: Congruence) -> Congruence:
        """Chain ``self: A = B.R1`` with ``nxt: B = C.R2`` into ``A = C.(R2 R1)``."""
        return Congruence(
            self.lhs,
            nxt.rhs,
            nxt.residual + self.residual,
            self.level,
            rule="+".join(r for r in (self.rule, nxt.rule) if r),
            trace=self.trace + nxt.trace,
        )


def verify_congruence(cert: Congruence) -> bool:
    """Exact check of a certificate over the free ring."""
    if not cert.residual.is_valid(cert.level):
        return False
    return words_equal(cert.lhs, cert.output_word())
