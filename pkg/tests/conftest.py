"""Pytest configuration and fixtures for elemcomm tests."""

from __future__ import annotations

import random
from collections.abc import Callable, Iterator

import pytest
import structlog

from elemcomm.algebra.elemgroup import GroupWord, Transvection
from elemcomm.algebra.freering import RingElem

A_NAMES = ("a1", "a2", "a3")
B_NAMES = ("b1", "b2", "b3")
R_NAMES = ("c1", "c2", "x")


@pytest.fixture(autouse=True)
def reset_structlog() -> Iterator[None]:
    """The CLI callback configures structlog globally; undo it after each test."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240617)


def random_elem(
    rng: random.Random,
    names: tuple[str, ...] = A_NAMES + B_NAMES + R_NAMES,
    max_degree: int = 2,
    max_terms: int = 3,
) -> RingElem:
    """Random integer combination of monomials of degree 0..max_degree."""
    total = RingElem.zero()
    for _ in range(rng.randint(1, max_terms)):
        length = rng.randint(0, max_degree)
        coeff = rng.choice((-2, -1, 1, 2, 3))
        total = total + RingElem.word(
            *(rng.choice(names) for _ in range(length)), coeff=coeff
        )
    return total


def random_sorted(rng: random.Random, sort: str, max_degree: int = 2) -> RingElem:
    """Random element of A or B: every monomial starts with a symbol of that sort."""
    heads = A_NAMES if sort == "A" else B_NAMES
    total = RingElem.zero()
    for _ in range(rng.randint(1, 2)):
        tail_len = rng.randint(0, max_degree - 1)
        tail = [rng.choice(A_NAMES + B_NAMES + R_NAMES) for _ in range(tail_len)]
        total = total + RingElem.word(
            rng.choice(heads), *tail, coeff=rng.choice((-1, 1, 2))
        )
    return total or RingElem.sym(heads[0])


def random_word(
    rng: random.Random, n: int, length: int = 4, max_degree: int = 2
) -> GroupWord:
    letters = []
    for _ in range(rng.randint(0, length)):
        i, j = rng.sample(range(1, n + 1), 2)
        letters.append(
            Transvection(i, j, random_elem(rng, max_degree=max_degree, max_terms=2))
        )
    return GroupWord(n, tuple(letters))


@pytest.fixture
def elem_factory(rng: random.Random) -> Callable[..., RingElem]:
    return lambda **kw: random_elem(rng, **kw)


@pytest.fixture
def word_factory(rng: random.Random) -> Callable[..., GroupWord]:
    return lambda n, **kw: random_word(rng, n, **kw)


@pytest.fixture
def sorted_factory(rng: random.Random) -> Callable[..., RingElem]:
    return lambda sort, **kw: random_sorted(rng, sort, **kw)
