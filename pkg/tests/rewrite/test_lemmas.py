"""Tests for the commutator rewrite lemmas and their certificates."""

import random
from collections.abc import Callable
from itertools import permutations
from typing import cast

import pytest

from elemcomm.algebra.elemgroup import (
    GroupWord,
    elementary_commutator,
    evaluate,
    word_comm,
    z_gen,
)
from elemcomm.algebra.freering import IDEAL_AB, IDEAL_B, RingElem, member
from elemcomm.core.errors import DegreeTooSmall, InvalidPosition, SortViolation
from elemcomm.rewrite.certificates import (
    Congruence,
    SecondTypeGen,
    TraceStep,
    verify_congruence,
)
from elemcomm.rewrite.lemmas import (
    FormulaKind,
    centrality_congruence,
    lemma3_commutator_formula,
    lemma3_reduce,
    lemma4_factors,
    lemma4_reduce,
    lemma5_transport,
    move_column,
    move_path,
    move_row,
    remove_conjugator,
    transport,
)
from elemcomm.rewrite.residual import ResidualWord

a, b, c = RingElem.sym("a1"), RingElem.sym("b1"), RingElem.sym("c1")

KINDS: tuple[FormulaKind, ...] = ("ih", "jh", "hi", "hj")

POSITIONS = {
    "ih": lambda i, j, h: (i, h),
    "jh": lambda i, j, h: (j, h),
    "hi": lambda i, j, h: (h, i),
    "hj": lambda i, j, h: (h, j),
}


class TestCommutatorFormulas:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", [3, 4])
    def test_formula_is_exact(self, kind: FormulaKind, n: int) -> None:
        for h in range(3, n + 1):
            z = elementary_commutator(n, 1, 2, a, b)
            k, l = POSITIONS[kind](1, 2, h)
            lhs = word_comm(GroupWord.single(n, k, l, c), z)
            rhs = lemma3_commutator_formula(kind, n, 1, 2, h, a, b, c)
            assert evaluate(lhs) == evaluate(rhs)

    def test_formula_letters_are_in_level(self) -> None:
        for kind in KINDS:
            w = lemma3_commutator_formula(kind, 3, 1, 2, 3, a, b, c)
            assert ResidualWord.from_letters(w).is_valid()

    def test_unknown_kind(self) -> None:
        with pytest.raises(ValueError):
            lemma3_commutator_formula(cast(FormulaKind, "ij"), 3, 1, 2, 3, a, b, c)


class TestRemoveConjugator:
    def test_random_conjugators(
        self,
        rng: random.Random,
        word_factory: Callable[..., GroupWord],
        sorted_factory: Callable[..., RingElem],
    ) -> None:
        for _ in range(100):
            n = rng.choice((3, 4))
            i, j = rng.sample(range(1, n + 1), 2)
            x = word_factory(n, length=4, max_degree=1)
            cert = lemma3_reduce(x, i, j, sorted_factory("A"), sorted_factory("B"))
            assert verify_congruence(cert)
            assert all(step.verify() for step in cert.trace)

    def test_letter_on_both_indices_is_split(self) -> None:
        x = GroupWord.of(3, (1, 2, c), (2, 1, c * c))
        cert = lemma3_reduce(x, 1, 2, a, b)
        assert verify_congruence(cert)
        assert any(step.rule == "lemma3-case3" for step in cert.trace)

    def test_disjoint_letters_leave_no_residual(self) -> None:
        x = GroupWord.of(4, (3, 4, c), (4, 3, c))
        residual, steps = remove_conjugator(x, 1, 2, a, b)
        assert len(residual) == 0
        assert [s.rule for s in steps] == ["lemma3-case1"] * 2

    def test_sort_and_degree_errors(self) -> None:
        x = GroupWord.identity(3)
        with pytest.raises(SortViolation):
            lemma3_reduce(x, 1, 2, b, a)
        with pytest.raises(DegreeTooSmall):
            lemma3_reduce(GroupWord.identity(2), 1, 2, a, b)
        with pytest.raises(InvalidPosition):
            remove_conjugator(x, 2, 2, a, b)


class TestLemma4:
    def test_factors(self) -> None:
        n, i, j = 3, 1, 2
        p, u, q, v = lemma4_factors(n, i, j, a, b, c)
        assert all(member(t.param, IDEAL_B) for t in u)
        assert all(member(t.param, IDEAL_AB) for t in v)
        inner = word_comm(GroupWord.single(n, i, j, a), z_gen(n, i, j, b, c))
        head = GroupWord.single(n, i, j, a)
        assert evaluate(inner) == evaluate(head + word_comm(p + u, q + v))

    def test_generator_position(self) -> None:
        result = lemma4_reduce(GroupWord.identity(3), 1, 2, a, b, c)
        assert result.gen == SecondTypeGen.of(3, 2, a, -(c * b * c))
        assert verify_congruence(result.congruence())

    @pytest.mark.timeout(120)
    def test_random_instances(
        self,
        rng: random.Random,
        word_factory: Callable[..., GroupWord],
        sorted_factory: Callable[..., RingElem],
        elem_factory: Callable[..., RingElem],
    ) -> None:
        for _ in range(100):
            n = rng.choice((3, 4))
            i, j = rng.sample(range(1, n + 1), 2)
            x = word_factory(n, length=3, max_degree=1)
            result = lemma4_reduce(
                x,
                i,
                j,
                sorted_factory("A", max_degree=1),
                sorted_factory("B", max_degree=1),
                elem_factory(max_degree=1, max_terms=2),
            )
            assert verify_congruence(result.congruence())
            assert len(result.residual) <= 32

    def test_zero_parameter_gives_no_generator(self) -> None:
        result = lemma4_reduce(GroupWord.identity(3), 1, 2, a, b, 0)
        assert result.gen is None
        assert verify_congruence(result.congruence())


class TestTransport:
    def test_one_step_moves(self) -> None:
        assert verify_congruence(move_column(3, 1, 2, 3, a, b))
        assert verify_congruence(move_column(3, 1, 2, 3, a, b, shift=c))
        assert verify_congruence(move_row(3, 1, 2, 3, a, b))
        assert verify_congruence(move_row(4, 2, 1, 4, a * c, b))

    @pytest.mark.parametrize("source", list(permutations(range(1, 4), 2)))
    def test_every_pair_in_degree_three(self, source: tuple[int, int]) -> None:
        for target in permutations(range(1, 4), 2):
            assert len(move_path(3, source, target)) <= 3
            cert = transport(3, source, target, a, b)
            assert verify_congruence(cert)
            assert cert.rhs == elementary_commutator(3, *target, a, b)

    def test_positional_form(self) -> None:
        cert = lemma5_transport(4, 3, 4, 1, 2, a, b)
        assert verify_congruence(cert)
        assert cert.rule == "lemma5"

    def test_sort_violation(self) -> None:
        with pytest.raises(SortViolation):
            transport(3, (1, 2), (2, 3), c, b)


def test_centrality(word_factory: Callable[..., GroupWord]) -> None:
    for _ in range(20):
        x = word_factory(3, length=3, max_degree=1)
        cert = centrality_congruence(x, 1, 2, a, b)
        assert verify_congruence(cert)
        assert len(cert.rhs) == 0


class TestCertificates:
    def test_tampered_residual_fails(self) -> None:
        cert = move_row(3, 1, 2, 3, a, b)
        broken = Congruence(cert.lhs, cert.rhs, cert.residual.inverse())
        assert not verify_congruence(broken)

    def test_residual_outside_level_fails(self) -> None:
        lhs = GroupWord.single(3, 1, 2, a)
        cert = Congruence(lhs, GroupWord.identity(3), ResidualWord.from_letters(lhs))
        assert not verify_congruence(cert)

    def test_then_chains_residuals(self) -> None:
        first = move_column(3, 1, 2, 3, a, b)
        second = move_row(3, 1, 3, 2, a, b)
        chained = first.then(second)
        assert verify_congruence(chained)
        assert chained.rule == "lemma5-move+lemma5-move"

    def test_then_keeps_the_only_rule_name(self) -> None:
        step = move_row(3, 1, 2, 3, a, b)
        lhs = step.lhs
        start = Congruence(lhs, lhs, ResidualWord.empty(3))
        assert start.then(step).rule == "lemma5-move"
        assert step.then(start).rule == "lemma5-move"
        assert start.then(start).rule == ""

    def test_trace_step(self) -> None:
        z = elementary_commutator(3, 1, 2, a, b)
        assert TraceStep("noop", z, z).verify()
        assert not TraceStep("bad", z, GroupWord.identity(3)).verify()
