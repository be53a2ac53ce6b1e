"""Tests for transvection words and exact matrix evaluation."""

import random
from collections.abc import Callable

import pytest

from elemcomm.algebra.elemgroup import (
    GroupWord,
    SquareMatrix,
    Transvection,
    auxiliary_index,
    concat,
    elementary_commutator,
    evaluate,
    free_reduce,
    matrix_level,
    steinberg_comm,
    transvection_matrix,
    word_comm,
    word_conj,
    word_inv,
    words_equal,
    z_gen,
)
from elemcomm.algebra.freering import IDEAL_A, IDEAL_SYM, RingElem
from elemcomm.core.errors import (
    DegreeMismatch,
    DegreeTooSmall,
    InvalidPosition,
    OppositePositions,
)

a, b, c = RingElem.sym("a1"), RingElem.sym("b1"), RingElem.sym("c1")


def _inverse_matrix(w: GroupWord) -> SquareMatrix:
    return evaluate(word_inv(w))


def test_single_letter_matrix() -> None:
    m = transvection_matrix(3, Transvection.of(1, 2, a))
    assert m.entry(1, 2) == a
    assert m.entry(1, 1) == 1
    assert m.entry(2, 1) == 0
    assert list(m.deviation()) == [(1, 2, a)]


def test_empty_word_is_identity() -> None:
    assert evaluate(GroupWord.identity(4)).is_identity()
    assert str(GroupWord.identity(3)) == "e"


def test_product_is_in_word_order() -> None:
    # t_12(a) t_23(b) has a*b at (1,3); the reverse order has none
    m = evaluate(GroupWord.of(3, (1, 2, a), (2, 3, b)))
    assert m.entry(1, 3) == a * b
    reverse = evaluate(GroupWord.of(3, (2, 3, b), (1, 2, a)))
    assert reverse.entry(1, 3) == 0


def test_evaluate_agrees_with_matrix_product(
    word_factory: Callable[..., GroupWord],
) -> None:
    for _ in range(50):
        u, v = word_factory(3), word_factory(3)
        assert evaluate(u + v) == evaluate(u) * evaluate(v)


class TestWordOperations:
    def test_inverse(self, word_factory: Callable[..., GroupWord]) -> None:
        for n in (3, 4):
            for _ in range(50):
                w = word_factory(n, length=8)
                assert (evaluate(word_inv(w)) * evaluate(w)).is_identity()
                assert (evaluate(w) * evaluate(w.inverse())).is_identity()

    def test_conjugation(self, word_factory: Callable[..., GroupWord]) -> None:
        for _ in range(50):
            x, w = word_factory(3), word_factory(3)
            expected = evaluate(x) * evaluate(w) * _inverse_matrix(x)
            assert evaluate(word_conj(x, w)) == expected

    def test_commutator(self, word_factory: Callable[..., GroupWord]) -> None:
        for _ in range(50):
            u, v = word_factory(3), word_factory(3)
            expected = (
                evaluate(u) * evaluate(v) * _inverse_matrix(u) * _inverse_matrix(v)
            )
            assert evaluate(word_comm(u, v)) == expected

    def test_free_reduce_is_sound(self, word_factory: Callable[..., GroupWord]) -> None:
        for _ in range(100):
            w = word_factory(3, length=8)
            reduced = free_reduce(w)
            assert evaluate(reduced) == evaluate(w)
            assert len(reduced) <= len(w)

    def test_free_reduce_cancels(self) -> None:
        w = GroupWord.of(3, (1, 2, a), (1, 2, -a), (2, 3, b), (2, 3, 0))
        assert free_reduce(w) == GroupWord.of(3, (2, 3, b))

    def test_degree_mismatch(self) -> None:
        with pytest.raises(DegreeMismatch):
            GroupWord.identity(3) + GroupWord.identity(4)
        with pytest.raises(DegreeMismatch):
            concat(3, [GroupWord.identity(4)])

    def test_degree_bounds(self) -> None:
        with pytest.raises(DegreeTooSmall):
            GroupWord.identity(2)
        with pytest.raises(DegreeTooSmall):
            GroupWord.of(2, (1, 2, a))
        with pytest.raises(ValueError):
            GroupWord.identity(9)

    def test_words_equal_after_cancellation(self) -> None:
        x = GroupWord.of(3, (1, 3, a), (3, 2, b))
        z = z_gen(3, 1, 2, a * b, 1)
        assert words_equal(x + z + word_inv(x), word_conj(x, z))
        assert words_equal(x + word_inv(x), GroupWord.identity(3))
        assert not words_equal(x, word_inv(x))

    @pytest.mark.parametrize("i,j", [(1, 1), (0, 2), (1, 4)])
    def test_invalid_positions(self, i: int, j: int) -> None:
        with pytest.raises(InvalidPosition):
            GroupWord.single(3, i, j, a)


def test_z_generator_shape() -> None:
    w = z_gen(3, 1, 2, a, c)
    assert [t.position for t in w] == [(2, 1), (1, 2), (2, 1)]
    assert evaluate(z_gen(3, 1, 2, a, 0)) == evaluate(GroupWord.single(3, 1, 2, a))


def test_elementary_commutator_on_block() -> None:
    m = evaluate(elementary_commutator(3, 1, 2, a, b))
    ab, ba = a * b, b * a
    assert m.block([1, 2]) == [[1 + ab + ab * ab, -(ab * a)], [ba * b, 1 - ba]]
    assert m.entry(3, 3) == 1


class TestSteinberg:
    def test_additivity(self, elem_factory: Callable[..., RingElem]) -> None:
        for _ in range(1000):
            x, y = elem_factory(), elem_factory()
            joined = evaluate(GroupWord.of(3, (1, 2, x), (1, 2, y)))
            assert joined == evaluate(GroupWord.single(3, 1, 2, x + y))

    def test_product_relation(self, rng: random.Random) -> None:
        for _ in range(1000):
            n = rng.choice((3, 4))
            i, j, k = rng.sample(range(1, n + 1), 3)
            x = RingElem.sym(rng.choice(("a1", "b2", "c1")))
            y = RingElem.sym(rng.choice(("a2", "b1", "x")))
            t1, t2 = Transvection(i, j, x), Transvection(j, k, y)
            lhs = word_comm(GroupWord(n, (t1,)), GroupWord(n, (t2,)))
            assert evaluate(lhs) == evaluate(GroupWord.single(n, i, k, x * y))
            assert steinberg_comm(t1, t2, n) == GroupWord.single(n, i, k, x * y)

    def test_disjoint_commute(self, rng: random.Random) -> None:
        for _ in range(1000):
            i, j, k, l = rng.sample(range(1, 5), 4)
            x = RingElem.sym(rng.choice(("a1", "c1")))
            y = RingElem.sym(rng.choice(("b1", "c2")))
            first, second = (i, j, x), (k, l, y)
            if rng.random() < 0.5:
                second = (i, rng.choice((k, l)), y)
            lhs = evaluate(GroupWord.of(4, first, second))
            assert lhs == evaluate(GroupWord.of(4, second, first))

    def test_closed_form_matches_evaluation(self, rng: random.Random) -> None:
        for _ in range(200):
            n = 4
            t1 = Transvection(*rng.sample(range(1, n + 1), 2), RingElem.sym("a1"))
            t2 = Transvection(*rng.sample(range(1, n + 1), 2), RingElem.sym("b1"))
            if t1.position == (t2.j, t2.i):
                with pytest.raises(OppositePositions):
                    steinberg_comm(t1, t2, n)
                continue
            lhs = word_comm(GroupWord(n, (t1,)), GroupWord(n, (t2,)))
            assert evaluate(lhs) == evaluate(steinberg_comm(t1, t2, n))


class TestLevel:
    def test_commutator_is_in_sym_level(self) -> None:
        g = evaluate(elementary_commutator(3, 1, 2, a, b))
        assert matrix_level(g, IDEAL_SYM)
        assert matrix_level(g, IDEAL_A)

    def test_transvection_level(self) -> None:
        t = evaluate(GroupWord.single(3, 1, 2, a))
        assert matrix_level(t, IDEAL_A)
        assert not matrix_level(t, IDEAL_SYM)

    def test_z_of_product_is_in_sym_level(self) -> None:
        assert matrix_level(evaluate(z_gen(3, 2, 3, a * b, c)), IDEAL_SYM)


def test_auxiliary_index() -> None:
    assert auxiliary_index(3, 1, 2) == 3
    assert auxiliary_index(4, 2, 3) == 1
    with pytest.raises(DegreeTooSmall):
        auxiliary_index(2, 1, 2)
