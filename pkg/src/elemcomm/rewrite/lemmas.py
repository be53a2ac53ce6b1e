"""Rewrite lemmas for elementary commutators ``z = [t_ij(p), t_ji(q)]``.

Every public function returns residuals as :class:`ResidualWord` on the
right of the main factor, so each result can be checked with
:func:`elemcomm.rewrite.certificates.verify_congruence`.

- :func:`lemma3_commutator_formula`: closed form of ``[T, z]`` for a letter T
  sharing exactly one index with z.
- :func:`remove_conjugator`: ``^x z = z * R`` with R in E(n,R,AB+BA).
- :func:`lemma4_reduce`: ``^x [t_ij(a), z_ij(b, c)]`` as a conjugated
  second-type generator times a residual.
- :func:`move_column`, :func:`move_row` and :func:`transport`: move a
  second-type generator to any other position modulo E(n,R,AB+BA).
- :func:`centrality_congruence`: ``[[t_ij(a), t_ji(b)], x]`` as a pure
  residual.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Literal

from elemcomm.algebra.elemgroup import (
    GroupWord,
    Param,
    Transvection,
    auxiliary_index,
    elementary_commutator,
    word_comm,
    word_conj,
    word_inv,
    z_gen,
)
from elemcomm.algebra.freering import (
    IDEAL_A,
    IDEAL_B,
    IDEAL_SYM,
    IdealPattern,
    RingElem,
    format_elem,
    member,
)
from elemcomm.core.constants import MIN_DEGREE
from elemcomm.core.errors import DegreeTooSmall, InvalidPosition, SortViolation
from elemcomm.rewrite.certificates import Congruence, SecondTypeGen, TraceStep
from elemcomm.rewrite.residual import ResidualWord, ZGenRecord

FormulaKind = Literal["ih", "jh", "hi", "hj"]


def require_degree(n: int) -> None:
    if n < MIN_DEGREE:
        raise DegreeTooSmall(n, MIN_DEGREE)


def require_sort(role: str, value: RingElem, ideal: IdealPattern) -> None:
    if not member(value, ideal):
        raise SortViolation(role, str(ideal), format_elem(value))


# ============================================================================
# Commutator formulas and conjugator removal
# ============================================================================


def lemma3_commutator_formula(
    kind: FormulaKind, n: int, i: int, j: int, h: int, p: Param, q: Param, c: Param
) -> GroupWord:
    """Closed form of ``[T, [t_ij(p), t_ji(q)]]`` for T = t_ih(c), t_jh(c),
    t_hi(c) or t_hj(c); the two letters of the result commute."""
    p, q, c = RingElem.coerce(p), RingElem.coerce(q), RingElem.coerce(c)
    pq, qp = p * q, q * p
    if kind == "ih":
        return GroupWord.of(n, (i, h, -(pq * c) - pq * pq * c), (j, h, -(q * pq * c)))
    if kind == "jh":
        return GroupWord.of(n, (i, h, pq * p * c), (j, h, qp * c))
    if kind == "hi":
        return GroupWord.of(n, (h, i, c * pq), (h, j, -(c * pq * p)))
    if kind == "hj":
        return GroupWord.of(n, (h, i, c * qp * q), (h, j, -(c * qp) - c * qp * qp))
    raise ValueError(f"unknown formula kind {kind!r}")


def _formula_kind(letter: Transvection, i: int, j: int) -> tuple[FormulaKind, int]:
    if letter.i == i:
        return "ih", letter.j
    if letter.i == j:
        return "jh", letter.j
    if letter.j == i:
        return "hi", letter.i
    return "hj", letter.i


def _split_letter(letter: Transvection, i: int, j: int, n: int) -> list[Transvection]:
    """Write a letter at (i,j) or (j,i) as a commutator of letters sharing one
    index with (i,j)."""
    h = auxiliary_index(n, i, j)
    c = letter.param
    if letter.position == (i, j):
        first, second = Transvection(i, h, c), Transvection.of(h, j, 1)
    else:
        first, second = Transvection(j, h, c), Transvection.of(h, i, 1)
    return [first, second, first.inverse(), second.inverse()]


def remove_conjugator(
    x: GroupWord,
    i: int,
    j: int,
    p: Param,
    q: Param,
    *,
    level: IdealPattern = IDEAL_SYM,
) -> tuple[ResidualWord, tuple[TraceStep, ...]]:
    """Residual R with ``^x [t_ij(p), t_ji(q)] = [t_ij(p), t_ji(q)] * R``.

    The letters of x are absorbed innermost first while keeping the
    invariant ``^(suffix) z = Q * z``; at the end ``R = ^(z^-1) Q``. p and q
    may be given in either sort order.

    Returns:
        Residual and one trace step per letter of x
    """
    n = x.n
    require_degree(n)
    if i == j:
        raise InvalidPosition(i, j, n)
    p, q = RingElem.coerce(p), RingElem.coerce(q)
    z = elementary_commutator(n, i, j, p, q)

    left = ResidualWord.empty(n)
    steps: list[TraceStep] = []
    for letter in reversed(x.letters):
        single = GroupWord(n, (letter,))
        touched = {letter.i, letter.j} & {i, j}
        if not letter.param or not touched:
            left = left.conjugated(single)
            steps.append(TraceStep("lemma3-case1", word_conj(single, z), z))
            continue

        if len(touched) == 2:
            pieces = _split_letter(letter, i, j, n)
            split_word = GroupWord(n, tuple(pieces))
            steps.append(
                TraceStep(
                    "lemma3-case3", word_conj(single, z), word_conj(split_word, z)
                )
            )
        else:
            pieces = [letter]

        for piece in reversed(pieces):
            kind, h = _formula_kind(piece, i, j)
            formula = lemma3_commutator_formula(kind, n, i, j, h, p, q, piece.param)
            piece_word = GroupWord(n, (piece,))
            left = left.conjugated(piece_word)
            left = left + ResidualWord.from_letters(formula, level)
            steps.append(
                TraceStep("lemma3-case2", word_conj(piece_word, z), formula + z)
            )

    return left.conjugated(word_inv(z)), tuple(steps)


def lemma3_reduce(
    x: GroupWord, i: int, j: int, a: Param, b: Param
) -> Congruence:
    """``^x [t_ij(a), t_ji(b)] == [t_ij(a), t_ji(b)]`` modulo E(n,R,AB+BA).

    Raises:
        DegreeTooSmall: when n < 3
        SortViolation: when a is not in A or b is not in B
    """
    a, b = RingElem.coerce(a), RingElem.coerce(b)
    require_sort("a", a, IDEAL_A)
    require_sort("b", b, IDEAL_B)
    residual, steps = remove_conjugator(x, i, j, a, b)
    z = elementary_commutator(x.n, i, j, a, b)
    return Congruence(word_conj(x, z), z, residual, rule="lemma3", trace=steps)


# ============================================================================
# Commutators with a conjugated transvection
# ============================================================================


@dataclass(frozen=True, slots=True)
class Lemma4Result:
    """``source == ^conjugator gen * residual`` (gen None means e)."""

    source: GroupWord
    conjugator: GroupWord
    gen: SecondTypeGen | None
    residual: ResidualWord

    def congruence(self) -> Congruence:
        n = self.source.n
        main = (
            word_conj(self.conjugator, self.gen.word(n))
            if self.gen is not None
            else GroupWord.identity(n)
        )
        return Congruence(
            self.source,
            main,
            self.residual,
            rule="lemma4",
            trace=(TraceStep("lemma4", self.source, main + self.residual.expand()),),
        )


def lemma4_factors(
    n: int, i: int, j: int, a: Param, b: Param, c: Param
) -> tuple[GroupWord, GroupWord, GroupWord, GroupWord]:
    """(P, u, Q, v) with ``[t_ij(a), z_ij(b, c)] = t_ij(a) [P u, Q v]``.

    u lies in E(n, B) and v in E(n, AB).
    """
    a, b, c = RingElem.coerce(a), RingElem.coerce(b), RingElem.coerce(c)
    h = auxiliary_index(n, i, j)
    return (
        GroupWord.single(n, i, h, 1),
        GroupWord.of(n, (j, h, -(c * b * c)), (i, h, -(b * c))),
        GroupWord.single(n, h, j, -a),
        GroupWord.of(n, (h, i, -(a * c * b * c)), (h, j, a * c * b)),
    )


def lemma4_reduce(
    x: GroupWord, i: int, j: int, a: Param, b: Param, c: Param
) -> Lemma4Result:
    """Rewrite ``^x [t_ij(a), z_ij(b, c)]`` as ``^x' [t_hj(a), t_jh(-cbc)] * R``.

    With h the smallest free index, ``P = t_ih(1)`` and ``Q = t_hj(-a)``::

        [t_ij(a), z_ij(b,c)] = t_ij(a) [P u, Q v]
        u = t_jh(-cbc) t_ih(-bc)        v = t_hi(-acbc) t_hj(acb)

    and ``[P u, Q v]`` peels down to ``^P [t_jh(-cbc), t_hj(-a)]`` while every
    dropped factor lies in E(n,R,AB+BA). ``x' = x t_ij(a) t_ih(1)``.

    Raises:
        DegreeTooSmall: when n < 3
        SortViolation: when a is not in A or b is not in B
    """
    n = x.n
    require_degree(n)
    a, b, c = RingElem.coerce(a), RingElem.coerce(b), RingElem.coerce(c)
    require_sort("a", a, IDEAL_A)
    require_sort("b", b, IDEAL_B)

    inner = word_comm(GroupWord.single(n, i, j, a), z_gen(n, i, j, b, c))
    source = word_conj(x, inner)
    if not a or not b or not c:
        return Lemma4Result(source, x, None, ResidualWord.empty(n))

    h = auxiliary_index(n, i, j)
    beta = -(c * b * c)
    p_word, u_word, q_word, v_word = lemma4_factors(n, i, j, a, b, c)
    v_records = ResidualWord.from_letters(v_word)

    # [Pu, Qv] = [Pu, Q] * ^Q [Pu, v]
    pu_v = v_records.conjugated(p_word + u_word) + v_records.inverse()
    r1 = pu_v.conjugated(q_word)

    # [u, Q] = ^U1 t_ij(bca) * G0 = G0 * r3
    u1 = GroupWord.single(n, j, h, beta)
    g0 = word_comm(u1, q_word)
    r = ResidualWord.of(n, [ZGenRecord.of(i, j, b * c * a)])
    r3 = r.conjugated(word_inv(g0) + u1)

    conjugator = x + GroupWord.of(n, (i, j, a), (i, h, 1))
    tail = r3.conjugated(conjugator) + r1.conjugated(x)

    # G0 = [t_jh(beta), t_hj(-a)] turned into [t_hj(a), t_jh(beta)]
    flip, _ = remove_conjugator(GroupWord.single(n, h, j, a), j, h, beta, -a)
    residual = flip.inverse().conjugated(conjugator) + tail
    return Lemma4Result(source, conjugator, SecondTypeGen(h, j, a, beta), residual)


# ============================================================================
# Moving second-type generators between positions
# ============================================================================


def _strip_left_factor(
    x1: GroupWord, x2: GroupWord, y: GroupWord
) -> ResidualWord:
    """R with ``[x1 x2, y] = [x2, y] * R`` when x1 is a level-I letter."""
    c = word_comm(x2, y)
    r1 = ResidualWord.from_letters(x1)
    return r1.conjugated(word_inv(c)) + r1.inverse().conjugated(y)


def move_column(
    n: int, i: int, j: int, h: int, a: Param, b: Param, shift: Param = 1
) -> Congruence:
    """``[t_ij(a*s), t_ji(b)] == [t_ih(a), t_hi(s*b)]`` modulo E(n,R,AB+BA)."""
    require_degree(n)
    a, b, s = RingElem.coerce(a), RingElem.coerce(b), RingElem.coerce(shift)

    # t_ij(-as) = [t_ih(a), t_hj(-s)], conjugated by t_ji(b)
    y1 = GroupWord.single(n, h, j, -s)
    y = y1 + GroupWord.single(n, h, i, s * b)
    stripped = _strip_left_factor(
        GroupWord.single(n, j, h, b * a), GroupWord.single(n, i, h, a), y
    )
    moved, _ = remove_conjugator(y1, i, h, a, s * b)

    lhs = elementary_commutator(n, i, j, a * s, b)
    rhs = elementary_commutator(n, i, h, a, s * b)
    residual = moved + stripped
    return Congruence(
        lhs,
        rhs,
        residual,
        rule="lemma5-move",
        trace=(TraceStep("lemma5-move", lhs, rhs + residual.expand()),),
    )


def move_row(n: int, i: int, j: int, h: int, a: Param, b: Param) -> Congruence:
    """``[t_ij(a), t_ji(b)] == [t_hj(a), t_jh(b)]`` modulo E(n,R,AB+BA)."""
    require_degree(n)
    a, b = RingElem.coerce(a), RingElem.coerce(b)

    # t_ji(b) = [t_jh(b), t_hi(1)], conjugated by t_ij(a)
    y1 = GroupWord.single(n, h, j, -a)
    y = y1 + GroupWord.single(n, h, i, 1)
    stripped = _strip_left_factor(
        GroupWord.single(n, i, h, a * b), GroupWord.single(n, j, h, b), y
    )
    tail = ResidualWord.of(n, [ZGenRecord.of(h, i, -(a * b))]) + stripped.conjugated(
        GroupWord.single(n, j, i, b)
    )

    # [t_jh(b), t_hj(-a)] turned into [t_hj(a), t_jh(b)]
    flip, _ = remove_conjugator(GroupWord.single(n, h, j, a), j, h, b, -a)

    lhs = elementary_commutator(n, i, j, a, b)
    rhs = elementary_commutator(n, h, j, a, b)
    residual = flip.inverse() + tail
    return Congruence(
        lhs,
        rhs,
        residual,
        rule="lemma5-move",
        trace=(TraceStep("lemma5-move", lhs, rhs + residual.expand()),),
    )


def move_path(
    n: int, source: tuple[int, int], target: tuple[int, int]
) -> list[tuple[str, tuple[int, int]]]:
    """Shortest sequence of column/row moves between two positions (BFS)."""
    for i, j in (source, target):
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise InvalidPosition(i, j, n)
    require_degree(n)

    parents: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {source: None}
    queue: deque[tuple[int, int]] = deque([source])
    while queue:
        pos = queue.popleft()
        if pos == target:
            break
        i, j = pos
        for h in range(1, n + 1):
            if h in (i, j):
                continue
            for kind, nxt in (("column", (i, h)), ("row", (h, j))):
                if nxt not in parents:
                    parents[nxt] = (pos, kind)
                    queue.append(nxt)

    path: list[tuple[str, tuple[int, int]]] = []
    pos = target
    while (link := parents[pos]) is not None:
        prev, kind = link
        path.append((kind, pos))
        pos = prev
    path.reverse()
    return path


def transport(
    n: int, source: tuple[int, int], target: tuple[int, int], a: Param, b: Param
) -> Congruence:
    """``[t_ij(a), t_ji(b)] == [t_kl(a), t_lk(b)]`` modulo E(n,R,AB+BA).

    Raises:
        SortViolation: when a is not in A or b is not in B
    """
    a, b = RingElem.coerce(a), RingElem.coerce(b)
    require_sort("a", a, IDEAL_A)
    require_sort("b", b, IDEAL_B)

    i, j = source
    lhs = elementary_commutator(n, i, j, a, b)
    cert = Congruence(lhs, lhs, ResidualWord.empty(n), rule="lemma5")
    pos = source
    for kind, nxt in move_path(n, source, target):
        if kind == "column":
            step = move_column(n, pos[0], pos[1], nxt[1], a, b)
        else:
            step = move_row(n, pos[0], pos[1], nxt[0], a, b)
        cert = cert.then(step)
        pos = nxt
    return Congruence(
        cert.lhs, cert.rhs, cert.residual, rule="lemma5", trace=cert.trace
    )


def lemma5_transport(
    n: int, i: int, j: int, k: int, l: int, a: Param, b: Param
) -> Congruence:
    """Positional form of :func:`transport`."""
    return transport(n, (i, j), (k, l), a, b)


# ============================================================================
# Centrality
# ============================================================================


def centrality_congruence(
    x: GroupWord, i: int, j: int, a: Param, b: Param
) -> Congruence:
    """``[[t_ij(a), t_ji(b)], x]`` written as a residual word alone."""
    g = elementary_commutator(x.n, i, j, a, b)
    residual, _ = remove_conjugator(x, i, j, a, b)
    return Congruence(
        word_comm(g, x),
        GroupWord.identity(x.n),
        residual.inverse().conjugated(g),
        rule="centrality",
    )
