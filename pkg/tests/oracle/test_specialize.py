"""Tests for specialising symbolic words to finite rings."""

import random
from collections.abc import Callable

import numpy as np

from elemcomm.algebra.elemgroup import GroupWord, elementary_commutator, word_comm
from elemcomm.algebra.freering import RingElem
from elemcomm.oracle.closure import commutator, transvection
from elemcomm.oracle.rings import resolve_ideal, ring_builtin
from elemcomm.oracle.specialize import (
    check_identity,
    random_assignment,
    specialize_elem,
    specialize_word,
    word_symbols,
)

a, b, c = RingElem.sym("a1"), RingElem.sym("b1"), RingElem.sym("c1")


def test_specialize_elem() -> None:
    ring = ring_builtin("zmod:8")
    p = 3 * a * b - c + 1
    assert specialize_elem(ring, p, {"a1": 2, "b1": 3, "c1": 5}) == (18 - 5 + 1) % 8


def test_specialize_respects_order() -> None:
    ring = ring_builtin("t2f2")
    e11, e12 = ring.index("[10;0]"), ring.index("[01;0]")
    assignment = {"a1": e11, "b1": e12}
    assert specialize_elem(ring, a * b, assignment) == e12
    assert specialize_elem(ring, b * a, assignment) == ring.zero


def test_commutator_word_matches_finite_commutator() -> None:
    ring = ring_builtin("zmod:4")
    w = elementary_commutator(3, 1, 2, a, b)
    got = specialize_word(ring, w, {"a1": 2, "b1": 3})
    expected = commutator(
        ring, transvection(ring, 3, 1, 2, 2), transvection(ring, 3, 2, 1, 3)
    )
    assert np.array_equal(got, expected)


def test_random_assignment_respects_sorts(rng: random.Random) -> None:
    ring = ring_builtin("zmod:8")
    ideal_a, ideal_b = resolve_ideal(ring, "2"), resolve_ideal(ring, "4")
    w = GroupWord.of(3, (1, 2, a * c), (2, 3, b + c))
    symbols = word_symbols(w)
    assert {s.name for s in symbols} == {"a1", "b1", "c1"}
    for _ in range(20):
        assignment = random_assignment(ring, symbols, ideal_a, ideal_b, rng)
        assert assignment["a1"] in ideal_a
        assert assignment["b1"] in ideal_b


def test_symbolic_identities_hold_after_specialising(
    rng: random.Random, word_factory: Callable[..., GroupWord]
) -> None:
    ring = ring_builtin("t2f2")
    strict = resolve_ideal(ring, "strict")
    for _ in range(20):
        x, y = word_factory(3, length=3, max_degree=1), word_factory(3, length=3)
        lhs = word_comm(x, y)
        rhs = lhs.inverse().inverse()
        assignment = random_assignment(
            ring, word_symbols(lhs, rhs), strict, strict, rng
        )
        assert check_identity(ring, lhs, rhs, assignment)


def test_false_identity_is_caught() -> None:
    ring = ring_builtin("zmod:4")
    lhs = GroupWord.of(3, (1, 2, a), (2, 3, b))
    rhs = GroupWord.of(3, (2, 3, b), (1, 2, a))
    assert not check_identity(ring, lhs, rhs, {"a1": 1, "b1": 1})
