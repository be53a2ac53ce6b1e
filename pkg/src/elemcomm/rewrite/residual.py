"""Residual words: products of z-generators of a fixed level.

A :class:`ZGenRecord` stands for ``^x z_ij(p, c)`` with
``z_ij(p, c) = t_ji(c) t_ij(p) t_ji(-c)``, ``p`` in the record's ideal and x
an elementary conjugator (empty for a plain record). The relative elementary
subgroup is normal in E(n,R), so every such record lies in it. :func:`conj_z`
rewrites the conjugate of a plain record by one transvection as a product of
plain records of the same level. :meth:`ResidualWord.conjugated` uses
:func:`conj_z` while a record stays a single record and otherwise keeps the
conjugator on the record, so conjugation never adds records.

Case table for ``^t_kl(d) z_ij(p, c)`` (h is the index not in {i, j}):

- {k,l} and {i,j} disjoint, or d = 0: unchanged.
- (k,l) = (j,i): ``z_ij(p, c + d)``.
- (k,l) = (i,j), c = 0: unchanged (same-position letters commute).
- (k,l) = (i,j), c != 0: the conjugate equals ``e + U p V`` with
  ``U = (1 + dc, c)^T`` and ``V = (-c, 1 + cd)`` on rows/columns (i, j),
  which is the commutator ``[t_ih(1+dc) t_jh(c), t_hi(-pc) t_hj(p(1+cd))]``;
  that commutator is expanded through the cases below.
- one shared index: ``^T z = ^(S Y) (^T t_ij(p))`` with ``Y = t_ji(c)`` and
  ``S = [T, Y]``; every step is a Steinberg commutator or an opposite-position
  conjugation, so the recursion stops after two levels.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from elemcomm.algebra.elemgroup import (
    GroupWord,
    Param,
    Transvection,
    auxiliary_index,
    concat,
    free_reduce,
    steinberg_comm,
    word_conj,
    words_equal,
    z_gen,
)
from elemcomm.algebra.freering import (
    IDEAL_SYM,
    IdealPattern,
    RingElem,
    check_degree,
    format_elem,
    member,
)
from elemcomm.core.errors import DegreeMismatch, InvalidPosition


@dataclass(frozen=True, slots=True)
class ZGenRecord:
    """Generator ``^conjugator z_ij(p, c)`` of E(n,R,I) with ``p`` in ``level``."""

    i: int
    j: int
    p: RingElem
    c: RingElem
    level: IdealPattern = IDEAL_SYM
    conjugator: tuple[Transvection, ...] = ()

    @classmethod
    def of(
        cls, i: int, j: int, p: Param, c: Param = 0, level: IdealPattern = IDEAL_SYM
    ) -> ZGenRecord:
        return cls(i, j, RingElem.coerce(p), RingElem.coerce(c), level)

    def expand(self, n: int) -> GroupWord:
        core = z_gen(n, self.i, self.j, self.p, self.c)
        if not self.conjugator:
            return core
        return word_conj(GroupWord(n, self.conjugator), core)

    def inverse(self) -> ZGenRecord:
        return ZGenRecord(
            self.i, self.j, -self.p, self.c, self.level, self.conjugator
        )

    def under(self, n: int, letters: Sequence[Transvection]) -> ZGenRecord:
        """The record ``^(letters) self``."""
        joined = free_reduce(GroupWord(n, tuple(letters) + self.conjugator))
        return ZGenRecord(self.i, self.j, self.p, self.c, self.level, joined.letters)

    def merges_with(self, other: ZGenRecord) -> bool:
        return (
            (self.i, self.j, self.c, self.level, self.conjugator)
            == (other.i, other.j, other.c, other.level, other.conjugator)
        )

    def is_valid(self) -> bool:
        return (
            self.i != self.j
            and all(t.i != t.j for t in self.conjugator)
            and member(self.p, self.level)
        )

    def __str__(self) -> str:
        core = f"z[{self.i},{self.j}]({format_elem(self.p)}, {format_elem(self.c)})"
        if not self.conjugator:
            return core
        return f"conj({' '.join(str(t) for t in self.conjugator)}, {core})"


def merge_records(records: Iterable[ZGenRecord]) -> tuple[ZGenRecord, ...]:
    """Drop zero records and add up adjacent records that differ only in p.

    ``z_ij(p, c) z_ij(q, c) = z_ij(p + q, c)`` holds under any conjugator.
    """
    stack: list[ZGenRecord] = []
    for rec in records:
        if not rec.p:
            continue
        if stack and stack[-1].merges_with(rec):
            top = stack.pop()
            total = top.p + rec.p
            if total:
                stack.append(
                    ZGenRecord(
                        top.i, top.j, total, top.c, top.level, top.conjugator
                    )
                )
        else:
            stack.append(rec)
    return tuple(stack)


@dataclass(frozen=True, slots=True)
class ResidualWord:
    """Flat product of z-generator records, read left to right."""

    n: int
    records: tuple[ZGenRecord, ...] = ()

    @classmethod
    def empty(cls, n: int) -> ResidualWord:
        return cls(n)

    @classmethod
    def of(cls, n: int, records: Iterable[ZGenRecord]) -> ResidualWord:
        return cls(n, merge_records(records))

    @classmethod
    def from_letters(
        cls, word: GroupWord, level: IdealPattern = IDEAL_SYM
    ) -> ResidualWord:
        """Read each letter ``t_ij(q)`` of a level-I word as ``z_ij(q, 0)``."""
        return cls.of(
            word.n,
            (ZGenRecord(t.i, t.j, t.param, RingElem.zero(), level) for t in word),
        )

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ZGenRecord]:
        return iter(self.records)

    def __add__(self, other: ResidualWord) -> ResidualWord:
        if other.n != self.n:
            raise DegreeMismatch(self.n, other.n)
        return ResidualWord.of(self.n, self.records + other.records)

    def expand(self) -> GroupWord:
        return concat(self.n, (r.expand(self.n) for r in self.records))

    def inverse(self) -> ResidualWord:
        return ResidualWord(self.n, tuple(r.inverse() for r in reversed(self.records)))

    def conjugated(self, x: GroupWord) -> ResidualWord:
        """Records whose product equals ``^x`` of this product.

        The result never has more records than this word.
        """
        if x.n != self.n:
            raise DegreeMismatch(self.n, x.n)
        if not len(x):
            return self
        return ResidualWord.of(
            self.n, (out for rec in self.records for out in push_record(rec, x))
        )

    def conjugation_holds(self, x: GroupWord) -> bool:
        """Check :meth:`conjugated` one record at a time.

        The merge of adjacent records afterwards is additivity in p and is not
        re-evaluated.
        """
        n = self.n
        return all(
            words_equal(
                word_conj(x, rec.expand(n)),
                concat(n, (out.expand(n) for out in push_record(rec, x))),
            )
            for rec in self.records
        )

    def flattened(self) -> ResidualWord:
        """Equal product of plain records, expanded letter by letter.

        The number of records can grow exponentially in the conjugator length.
        """
        records: list[ZGenRecord] = []
        for rec in self.records:
            plain = ZGenRecord(rec.i, rec.j, rec.p, rec.c, rec.level)
            records.extend(_flat_conjugate([plain], rec.conjugator, self.n))
        return ResidualWord.of(self.n, records)

    def is_valid(self, level: IdealPattern = IDEAL_SYM) -> bool:
        return all(
            r.i != r.j and member(r.p, level) and all(t.i != t.j for t in r.conjugator)
            for r in self.records
        )

    def max_degree(self) -> int:
        return max(
            (max(r.p.degree(), r.c.degree()) for r in self.records), default=0
        )

    def max_conjugator(self) -> int:
        return max((len(r.conjugator) for r in self.records), default=0)

    def check_degree(self, limit: int) -> None:
        for rec in self.records:
            check_degree(rec.p, limit)
            check_degree(rec.c, limit)

    def __str__(self) -> str:
        return " ".join(str(r) for r in self.records) or "e"


def join(n: int, parts: Sequence[ResidualWord]) -> ResidualWord:
    records: list[ZGenRecord] = []
    for part in parts:
        if part.n != n:
            raise DegreeMismatch(n, part.n)
        records.extend(part.records)
    return ResidualWord.of(n, records)


# ============================================================================
# Conjugation of a single record
# ============================================================================


def push_record(rec: ZGenRecord, x: GroupWord) -> list[ZGenRecord]:
    """At most one record equal to ``^x rec``.

    Letters of x are absorbed with :func:`conj_z` from the right while each
    result is a single plain record; the remaining prefix stays on the record
    as its conjugator.
    """
    n = x.n
    if rec.conjugator:
        return [rec.under(n, x.letters)]
    current = rec
    for index in range(len(x.letters) - 1, -1, -1):
        letter = x.letters[index]
        step = conj_z(letter.i, letter.j, letter.param, current, n)
        if not step:
            return []
        if len(step) > 1:
            return [current.under(n, x.letters[: index + 1])]
        current = step[0]
    return [current]


def conj_z(k: int, l: int, d: Param, rec: ZGenRecord, n: int) -> list[ZGenRecord]:
    """Records whose product equals ``^t_kl(d) z_ij(p, c)``.

    A plain record gives plain records; a record that already carries a
    conjugator takes the letter onto it.

    Raises:
        InvalidPosition: when k = l
    """
    if k == l:
        raise InvalidPosition(k, l, n)
    d = RingElem.coerce(d)
    i, j, p, c = rec.i, rec.j, rec.p, rec.c

    if not p:
        return []
    if not d:
        return [rec]
    letter = Transvection(k, l, d)
    if rec.conjugator:
        return [rec.under(n, (letter,))]
    if not ({k, l} & {i, j}):
        return [rec]
    if (k, l) == (j, i):
        return [ZGenRecord(i, j, p, c + d, rec.level)]
    if (k, l) == (i, j):
        if not c:
            return [rec]
        return _conj_same_position(rec, d, n)

    if not c:
        return _conj_bare(letter, rec, n)

    shift = steinberg_comm(letter, Transvection(j, i, c), n)
    bare = [ZGenRecord(i, j, p, RingElem.zero(), rec.level)]
    return _flat_conjugate(bare, shift.letters + (Transvection(j, i, c), letter), n)


def _flat_conjugate(
    records: list[ZGenRecord], letters: Sequence[Transvection], n: int
) -> list[ZGenRecord]:
    for letter in reversed(letters):
        records = [
            out
            for rec in records
            for out in conj_z(letter.i, letter.j, letter.param, rec, n)
        ]
    return records


def _conj_bare(letter: Transvection, rec: ZGenRecord, n: int) -> list[ZGenRecord]:
    """``^T t_ij(p) = [T, t_ij(p)] t_ij(p)`` for a letter sharing one index."""
    comm = steinberg_comm(letter, Transvection(rec.i, rec.j, rec.p), n)
    head = [
        ZGenRecord(t.i, t.j, t.param, RingElem.zero(), rec.level) for t in comm.letters
    ]
    return head + [rec]


def _conj_same_position(rec: ZGenRecord, d: RingElem, n: int) -> list[ZGenRecord]:
    i, j, p, c = rec.i, rec.j, rec.p, rec.c
    h = auxiliary_index(n, i, j)
    one = RingElem.one()

    # [X, Y] = ^X Y . Y^-1 with X = t_ih(1+dc) t_jh(c), Y = t_hi(-pc) t_hj(p(1+cd))
    x_word = GroupWord.of(n, (i, h, one + d * c), (j, h, c))
    y_word = GroupWord.of(n, (h, i, -(p * c)), (h, j, p * (one + c * d)))
    y_records = list(ResidualWord.from_letters(y_word, rec.level).records)
    return _flat_conjugate(y_records, x_word.letters, n) + [
        r.inverse() for r in reversed(y_records)
    ]
