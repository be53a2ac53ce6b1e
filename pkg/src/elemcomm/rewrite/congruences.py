"""Parameter rules for second-type generators modulo E(n,R,AB+BA).

Writing ``G(a, b) = [t_ij(a), t_ji(b)]`` with a in A and b in B:

1. ``G(a*c, b) == G(a, c*b)``
2. ``G(a1 + a2, b) == G(a1, b) * G(a2, b)``
3. ``G(a, b1 + b2) == G(a, b1) * G(a, b2)``
4. ``G(a, b)^-1 == G(-a, b) == G(a, -b)``
5. ``G(a1, b) == G(a2, b)`` when ``a1 - a2`` lies in AB + BA + A^2
6. ``G(a, b1) == G(a, b2)`` when ``b1 - b2`` lies in AB + BA + B^2

Each rule returns a :class:`Congruence` whose residual makes the statement
an exact identity.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Literal

from elemcomm.algebra.elemgroup import (
    GroupWord,
    Param,
    auxiliary_index,
    elementary_commutator,
    word_inv,
)
from elemcomm.algebra.freering import (
    IDEAL_A,
    IDEAL_B,
    IDEAL_SYM,
    IDEAL_SYM_AA,
    IDEAL_SYM_BB,
    IdealPattern,
    Monomial,
    RingElem,
    SymbolSort,
    format_elem,
    member,
)
from elemcomm.core.errors import HypothesisViolation
from elemcomm.rewrite.certificates import Congruence, TraceStep
from elemcomm.rewrite.lemmas import move_column, remove_conjugator, require_sort
from elemcomm.rewrite.residual import ResidualWord, ZGenRecord

Slot = Literal["first", "second"]


def _certificate(
    bullet: int, lhs: GroupWord, rhs: GroupWord, residual: ResidualWord
) -> Congruence:
    rule = f"s3-bullet-{bullet}"
    return Congruence(
        lhs,
        rhs,
        residual,
        rule=rule,
        trace=(TraceStep(rule, lhs, rhs + residual.expand()),),
    )


def scale_congruence(
    n: int, i: int, j: int, a: Param, c: Param, b: Param
) -> Congruence:
    """Bullet 1: ``G(a*c, b) == G(a, c*b)``; c is any ring element."""
    a, b, c = RingElem.coerce(a), RingElem.coerce(b), RingElem.coerce(c)
    require_sort("a", a, IDEAL_A)
    require_sort("b", b, IDEAL_B)
    h = auxiliary_index(n, i, j)

    # both sides move to G_ih(a, c*b)
    shifted = move_column(n, i, j, h, a, b, shift=c)
    plain = move_column(n, i, j, h, a, c * b)
    return _certificate(
        1,
        shifted.lhs,
        plain.lhs,
        plain.residual.inverse() + shifted.residual,
    )


def first_additivity(
    n: int, i: int, j: int, a1: Param, a2: Param, b: Param
) -> Congruence:
    """Bullet 2: ``G(a1 + a2, b) == G(a1, b) * G(a2, b)``."""
    a1, a2, b = RingElem.coerce(a1), RingElem.coerce(a2), RingElem.coerce(b)
    require_sort("a1", a1, IDEAL_A)
    require_sort("a2", a2, IDEAL_A)
    require_sort("b", b, IDEAL_B)
    g1 = elementary_commutator(n, i, j, a1, b)
    g2 = elementary_commutator(n, i, j, a2, b)

    # G(a1+a2, b) = ^t_ij(a1) G2 * G1 = G2 R_a G1 = G1 G2 R_b ^(G1^-1) R_a
    r_a, _ = remove_conjugator(GroupWord.single(n, i, j, a1), i, j, a2, b)
    r_b, _ = remove_conjugator(word_inv(g1), i, j, a2, b)
    residual = r_b + r_a.conjugated(word_inv(g1))
    return _certificate(
        2, elementary_commutator(n, i, j, a1 + a2, b), g1 + g2, residual
    )


def second_additivity(
    n: int, i: int, j: int, a: Param, b1: Param, b2: Param
) -> Congruence:
    """Bullet 3: ``G(a, b1 + b2) == G(a, b1) * G(a, b2)``."""
    a, b1, b2 = RingElem.coerce(a), RingElem.coerce(b1), RingElem.coerce(b2)
    require_sort("a", a, IDEAL_A)
    require_sort("b1", b1, IDEAL_B)
    require_sort("b2", b2, IDEAL_B)
    g1 = elementary_commutator(n, i, j, a, b1)
    g2 = elementary_commutator(n, i, j, a, b2)

    # [x, yz] = [x, y] ^y [x, z]
    residual, _ = remove_conjugator(GroupWord.single(n, j, i, b1), i, j, a, b2)
    return _certificate(
        3, elementary_commutator(n, i, j, a, b1 + b2), g1 + g2, residual
    )


def inverse_congruence(
    n: int, i: int, j: int, a: Param, b: Param, slot: Slot = "first"
) -> Congruence:
    """Bullet 4: ``G(a, b)^-1 == G(-a, b)`` (slot 'first') or ``G(a, -b)``."""
    a, b = RingElem.coerce(a), RingElem.coerce(b)
    require_sort("a", a, IDEAL_A)
    require_sort("b", b, IDEAL_B)
    inverse = word_inv(elementary_commutator(n, i, j, a, b))
    if slot == "first":
        rhs = elementary_commutator(n, i, j, -a, b)
        conjugator = GroupWord.single(n, i, j, -a)
    else:
        rhs = elementary_commutator(n, i, j, a, -b)
        conjugator = GroupWord.single(n, j, i, -b)

    # the inverse is [t_ji(b), t_ij(a)] and rhs is a conjugate of it
    residual, _ = remove_conjugator(conjugator, j, i, b, a)
    return _certificate(4, inverse, rhs, residual.inverse())


# ============================================================================
# Congruent parameters
# ============================================================================


def _split_at_second(
    mono: Monomial, sort: SymbolSort
) -> tuple[Monomial, Monomial] | None:
    """Split before the second symbol of the given sort."""
    hits = [k for k, s in enumerate(mono) if s.sort is sort]
    if len(hits) < 2:
        return None
    cut = hits[1]
    return mono[:cut], mono[cut:]


def _from_monomial(mono: Monomial, coeff: int = 1) -> RingElem:
    return RingElem({mono: coeff})


def _partition(
    d: RingElem, square: SymbolSort
) -> tuple[RingElem, list[tuple[RingElem, RingElem]]]:
    """Split d into its AB+BA part and ``(head, tail)`` factorisations of the
    remaining monomials, each of which contains two symbols of ``square``."""
    sym: dict[Monomial, int] = {}
    squares: list[tuple[RingElem, RingElem]] = []
    for mono, coeff in d.sorted_terms():
        if IDEAL_SYM.matches(mono):
            sym[mono] = coeff
            continue
        split = _split_at_second(mono, square)
        if split is None:
            raise ValueError(f"monomial {mono} is outside the hypothesis ideal")
        head, tail = split
        squares.append((_from_monomial(head, coeff), _from_monomial(tail)))
    return RingElem(sym), squares


def _records_first(n: int, i: int, j: int, q: RingElem, b: RingElem) -> ResidualWord:
    """``G(q, b) = z_ij(q, 0) z_ij(-q, b)`` for q in AB+BA."""
    return ResidualWord.of(n, [ZGenRecord.of(i, j, q, 0), ZGenRecord.of(i, j, -q, b)])


def _records_second(n: int, i: int, j: int, a: RingElem, q: RingElem) -> ResidualWord:
    """``G(a, q) = z_ji(q, a) z_ji(-q, 0)`` for q in AB+BA."""
    return ResidualWord.of(n, [ZGenRecord.of(j, i, q, a), ZGenRecord.of(j, i, -q, 0)])


def _vanish_first(n: int, i: int, j: int, d: RingElem, b: RingElem) -> ResidualWord:
    """``G(d, b)`` as a residual word when d lies in AB + BA + A^2."""
    sym, squares = _partition(d, SymbolSort.A)
    parts: list[ResidualWord] = []
    for head, tail in squares:
        # G(head*tail, b) = G(head, tail*b) R with tail*b in AB
        scaled = scale_congruence(n, i, j, head, tail, b)
        parts.append(_records_second(n, i, j, head, tail * b) + scaled.residual)
    params = ([sym] if sym else []) + [head * tail for head, tail in squares]
    if sym:
        parts.insert(0, _records_first(n, i, j, sym, b))
    return _chain_additive(n, i, j, params, parts, b, first=True)


def _vanish_second(n: int, i: int, j: int, a: RingElem, d: RingElem) -> ResidualWord:
    """``G(a, d)`` as a residual word when d lies in AB + BA + B^2."""
    sym, squares = _partition(d, SymbolSort.B)
    parts: list[ResidualWord] = []
    for head, tail in squares:
        # G(a*head, tail) = G(a, head*tail) R with a*head in AB
        scaled = scale_congruence(n, i, j, a, head, tail)
        records = _records_first(n, i, j, a * head, tail)
        parts.append(records + scaled.residual.inverse())
    params = ([sym] if sym else []) + [head * tail for head, tail in squares]
    if sym:
        parts.insert(0, _records_second(n, i, j, a, sym))
    return _chain_additive(n, i, j, params, parts, a, first=False)


def _chain_additive(
    n: int,
    i: int,
    j: int,
    params: list[RingElem],
    parts: list[ResidualWord],
    other: RingElem,
    *,
    first: bool,
) -> ResidualWord:
    """Fold ``G(p1 + ... + pk)`` from the residual words of each ``G(pm)``.

    ``G(p + rest) = G(p) G(rest) R`` by additivity in the varying slot.
    """
    if not params:
        return ResidualWord.empty(n)
    result = parts[-1]
    rest = params[-1]
    for param, part in zip(reversed(params[:-1]), reversed(parts[:-1]), strict=True):
        if first:
            split = first_additivity(n, i, j, param, rest, other)
        else:
            split = second_additivity(n, i, j, other, param, rest)
        result = part + result + split.residual
        rest = param + rest
    return result


def congruent_first(
    n: int, i: int, j: int, a1: Param, a2: Param, b: Param
) -> Congruence:
    """Bullet 5: ``G(a1, b) == G(a2, b)`` when ``a1 - a2`` is in AB+BA+A^2.

    Raises:
        HypothesisViolation: when the difference is outside AB+BA+A^2
    """
    a1, a2, b = RingElem.coerce(a1), RingElem.coerce(a2), RingElem.coerce(b)
    d = a1 - a2
    _require_hypothesis(5, d, IDEAL_SYM_AA)
    require_sort("a1", a1, IDEAL_A)
    require_sort("a2", a2, IDEAL_A)
    require_sort("b", b, IDEAL_B)

    # G(a2 + d, b) = G(a2, b) G(d, b) R
    split = first_additivity(n, i, j, a2, d, b)
    residual = _vanish_first(n, i, j, d, b) + split.residual
    return _certificate(
        5,
        elementary_commutator(n, i, j, a1, b),
        elementary_commutator(n, i, j, a2, b),
        residual,
    )


def congruent_second(
    n: int, i: int, j: int, a: Param, b1: Param, b2: Param
) -> Congruence:
    """Bullet 6: ``G(a, b1) == G(a, b2)`` when ``b1 - b2`` is in AB+BA+B^2.

    Raises:
        HypothesisViolation: when the difference is outside AB+BA+B^2
    """
    a, b1, b2 = RingElem.coerce(a), RingElem.coerce(b1), RingElem.coerce(b2)
    d = b1 - b2
    _require_hypothesis(6, d, IDEAL_SYM_BB)
    require_sort("a", a, IDEAL_A)
    require_sort("b1", b1, IDEAL_B)
    require_sort("b2", b2, IDEAL_B)

    split = second_additivity(n, i, j, a, b2, d)
    residual = _vanish_second(n, i, j, a, d) + split.residual
    return _certificate(
        6,
        elementary_commutator(n, i, j, a, b1),
        elementary_commutator(n, i, j, a, b2),
        residual,
    )


def _require_hypothesis(bullet: int, d: RingElem, pattern: IdealPattern) -> None:
    if not member(d, pattern):
        raise HypothesisViolation(bullet, format_elem(d), str(pattern))


# ============================================================================
# Dispatcher
# ============================================================================


def s3_congruence(
    bullet: int,
    n: int,
    i: int,
    j: int,
    params: Mapping[str, Param],
    slot: Slot = "first",
) -> Congruence:
    """Certificate for one parameter rule.

    ``params`` keys per bullet: 1 ``a, c, b``; 2 ``a1, a2, b``; 3 ``a, b1, b2``;
    4 ``a, b``; 5 ``a1, a2, b``; 6 ``a, b1, b2``.
    """
    p = {key: RingElem.coerce(value) for key, value in params.items()}
    if bullet == 1:
        return scale_congruence(n, i, j, p["a"], p["c"], p["b"])
    if bullet == 2:
        return first_additivity(n, i, j, p["a1"], p["a2"], p["b"])
    if bullet == 3:
        return second_additivity(n, i, j, p["a"], p["b1"], p["b2"])
    if bullet == 4:
        return inverse_congruence(n, i, j, p["a"], p["b"], slot)
    if bullet == 5:
        return congruent_first(n, i, j, p["a1"], p["a2"], p["b"])
    if bullet == 6:
        return congruent_second(n, i, j, p["a"], p["b1"], p["b2"])
    raise ValueError(f"unknown bullet {bullet}")
