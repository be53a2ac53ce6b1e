"""Tests for residual words and z-generator conjugation."""

import random
from collections.abc import Callable

import pytest

from elemcomm.algebra.elemgroup import (
    GroupWord,
    evaluate,
    word_conj,
    word_inv,
    z_gen,
)
from elemcomm.algebra.freering import IDEAL_A, IDEAL_SYM, RingElem
from elemcomm.core.errors import DegreeGuardExceeded, DegreeMismatch, InvalidPosition
from elemcomm.rewrite.residual import ResidualWord, ZGenRecord, conj_z, join

a, b, c = RingElem.sym("a1"), RingElem.sym("b1"), RingElem.sym("c1")
ab = a * b


def test_record_expands_to_z_generator() -> None:
    rec = ZGenRecord.of(1, 2, ab, c)
    assert rec.expand(3) == z_gen(3, 1, 2, ab, c)
    assert rec.is_valid()
    assert not ZGenRecord.of(1, 2, a).is_valid()
    assert str(rec) == "z[1,2](a1*b1, c1)"


def test_zero_records_are_dropped() -> None:
    residual = ResidualWord.of(3, [ZGenRecord.of(1, 2, 0, c), ZGenRecord.of(2, 3, ab)])
    assert len(residual) == 1
    assert str(ResidualWord.empty(3)) == "e"


def test_inverse_expands_to_inverse_word() -> None:
    residual = ResidualWord.of(
        3, [ZGenRecord.of(1, 2, ab, c), ZGenRecord.of(3, 1, -ab, a)]
    )
    product = evaluate(residual.expand()) * evaluate(residual.inverse().expand())
    assert product.is_identity()


def test_from_letters() -> None:
    word = GroupWord.of(3, (1, 3, ab), (2, 1, ab * c))
    residual = ResidualWord.from_letters(word)
    assert evaluate(residual.expand()) == evaluate(word)
    assert residual.is_valid(IDEAL_SYM)


def test_join_and_mismatch() -> None:
    left = ResidualWord.of(3, [ZGenRecord.of(1, 2, ab)])
    right = ResidualWord.of(3, [ZGenRecord.of(2, 3, ab)])
    assert join(3, [left, right]) == left + right
    with pytest.raises(DegreeMismatch):
        join(4, [left])
    with pytest.raises(DegreeMismatch):
        left + ResidualWord.empty(4)


def test_degree_guard() -> None:
    residual = ResidualWord.of(3, [ZGenRecord.of(1, 2, ab * c * c, c)])
    assert residual.max_degree() == 4
    residual.check_degree(4)
    with pytest.raises(DegreeGuardExceeded):
        residual.check_degree(3)


def test_diagonal_conjugator_rejected() -> None:
    with pytest.raises(InvalidPosition):
        conj_z(2, 2, c, ZGenRecord.of(1, 2, ab), 3)


@pytest.mark.parametrize(
    "k,l",
    [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)],
)
def test_conj_z_every_position(k: int, l: int) -> None:
    d = RingElem.sym("x") + 2
    for cc in (RingElem.zero(), c, c * c - 1):
        rec = ZGenRecord.of(1, 2, ab, cc)
        records = conj_z(k, l, d, rec, 3)
        expected = word_conj(GroupWord.single(3, k, l, d), rec.expand(3))
        got = ResidualWord.of(3, records)
        assert evaluate(got.expand()) == evaluate(expected)
        assert got.is_valid(IDEAL_SYM)


def test_conj_z_random(
    rng: random.Random,
    elem_factory: Callable[..., RingElem],
) -> None:
    for _ in range(200):
        n = rng.choice((3, 4))
        i, j = rng.sample(range(1, n + 1), 2)
        k, l = rng.sample(range(1, n + 1), 2)
        p = RingElem.sym(rng.choice(("a1", "a2"))) * RingElem.sym("b1")
        rec = ZGenRecord.of(i, j, p * elem_factory(max_degree=1), elem_factory())
        d = elem_factory()
        got = ResidualWord.of(n, conj_z(k, l, d, rec, n))
        expected = word_conj(GroupWord.single(n, k, l, d), rec.expand(n))
        assert evaluate(got.expand()) == evaluate(expected)
        assert got.is_valid(IDEAL_SYM)


def test_conjugated_by_word(word_factory: Callable[..., GroupWord]) -> None:
    residual = ResidualWord.of(
        3, [ZGenRecord.of(1, 2, ab, c), ZGenRecord.of(2, 3, b * a, 1)]
    )
    for _ in range(30):
        x = word_factory(3)
        got = residual.conjugated(x)
        assert evaluate(got.expand()) == evaluate(word_conj(x, residual.expand()))
        assert got.is_valid()
        back = got.conjugated(word_inv(x))
        assert evaluate(back.expand()) == evaluate(residual.expand())


def test_level_is_preserved() -> None:
    rec = ZGenRecord.of(1, 2, a, c, level=IDEAL_A)
    got = ResidualWord.of(3, conj_z(1, 3, c, rec, 3))
    assert all(r.level is IDEAL_A for r in got)
    assert got.is_valid(IDEAL_A)


def test_adjacent_records_merge() -> None:
    residual = ResidualWord.of(
        3,
        [
            ZGenRecord.of(1, 2, ab, c),
            ZGenRecord.of(1, 2, b * a, c),
            ZGenRecord.of(1, 2, ab, 0),
            ZGenRecord.of(1, 2, -ab, 0),
        ],
    )
    assert residual.records == (ZGenRecord.of(1, 2, ab + b * a, c),)


def test_conjugator_is_kept_on_the_record() -> None:
    rec = ZGenRecord.of(1, 2, ab, c)
    x = GroupWord.of(3, (1, 3, c), (3, 2, a))
    got = rec.under(3, x.letters)
    assert got.conjugator == x.letters
    assert str(got).startswith("conj(t[1,3](c1)")
    assert evaluate(got.expand(3)) == evaluate(word_conj(x, rec.expand(3)))

    inverse = got.inverse()
    assert inverse.conjugator == got.conjugator
    product = evaluate(got.expand(3)) * evaluate(inverse.expand(3))
    assert product.is_identity()


def test_conjugation_does_not_add_records(
    word_factory: Callable[..., GroupWord],
) -> None:
    residual = ResidualWord.of(
        3, [ZGenRecord.of(1, 2, ab, c), ZGenRecord.of(3, 1, b * a, 0)]
    )
    for _ in range(20):
        x = word_factory(3) + word_factory(3)
        got = residual.conjugated(x)
        assert len(got) <= len(residual)
        assert got.max_conjugator() <= len(x)
        assert evaluate(got.expand()) == evaluate(word_conj(x, residual.expand()))


def test_cancelling_conjugators_reduce() -> None:
    rec = ZGenRecord.of(1, 2, ab, c)
    x = GroupWord.of(3, (1, 3, c), (3, 2, a))
    there = ResidualWord.of(3, [rec.under(3, x.letters)])
    back = there.conjugated(word_inv(x))
    assert back.max_conjugator() == 0
    assert evaluate(back.expand()) == evaluate(rec.expand(3))


def test_flattened_has_plain_records() -> None:
    rec = ZGenRecord.of(2, 3, ab, c)
    x = GroupWord.of(3, (1, 2, c), (2, 1, 1), (3, 1, a))
    pushed = ResidualWord.of(3, [rec]).conjugated(x)
    flat = pushed.flattened()
    assert flat.max_conjugator() == 0
    assert flat.is_valid()
    assert evaluate(flat.expand()) == evaluate(pushed.expand())


def test_conjugation_holds_record_by_record(
    word_factory: Callable[..., GroupWord],
) -> None:
    residual = ResidualWord.of(
        3, [ZGenRecord.of(1, 2, ab, c), ZGenRecord.of(2, 3, b * a, a)]
    )
    for _ in range(10):
        assert residual.conjugation_holds(word_factory(3))
