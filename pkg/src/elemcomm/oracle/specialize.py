"""Specialisation of symbolic objects to a finite ring.

An assignment sends every symbol to an element index of a finite ring. It
respects sorts when ``a...`` symbols land in A and ``b...`` symbols in B; the
free ring's universal property then makes every symbolic identity hold after
specialisation.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping

import numpy as np

from elemcomm.algebra.elemgroup import GroupWord, SquareMatrix, evaluate
from elemcomm.algebra.freering import RingElem, Symbol, SymbolSort
from elemcomm.oracle.closure import FinMatrix, identity, mat_mul, transvection
from elemcomm.oracle.rings import FiniteIdeal, FiniteRing, whole_ideal

Assignment = Mapping[str, int]


def specialize_elem(ring: FiniteRing, p: RingElem, assignment: Assignment) -> int:
    acc = ring.zero
    for mono, coeff in p.terms.items():
        value = ring.from_int(coeff)
        for sym in mono:
            value = int(ring.mul[value, assignment[sym.name]])
        acc = int(ring.add[acc, value])
    return acc


def specialize_matrix(
    ring: FiniteRing, m: SquareMatrix, assignment: Assignment
) -> FinMatrix:
    out = np.empty((m.n, m.n), dtype=np.uint8)
    for r, row in enumerate(m.rows):
        for c, value in enumerate(row):
            out[r, c] = specialize_elem(ring, value, assignment)
    return out


def specialize_word(
    ring: FiniteRing, w: GroupWord, assignment: Assignment
) -> FinMatrix:
    """Product of the specialised letters, computed in the finite ring."""
    if not len(w):
        return identity(ring, w.n)
    return mat_mul(
        ring,
        *(
            transvection(
                ring, w.n, t.i, t.j, specialize_elem(ring, t.param, assignment)
            )
            for t in w
        ),
    )


def word_symbols(*words: GroupWord) -> set[Symbol]:
    return {s for w in words for t in w for s in t.param.symbols()}


def random_assignment(
    ring: FiniteRing,
    symbols: Iterable[Symbol],
    a: FiniteIdeal,
    b: FiniteIdeal,
    rng: random.Random,
) -> dict[str, int]:
    """Sort-respecting random assignment."""
    pools = {
        SymbolSort.A: a.sorted_members(),
        SymbolSort.B: b.sorted_members(),
        SymbolSort.R: whole_ideal(ring).sorted_members(),
    }
    return {
        s.name: rng.choice(pools[s.sort])
        for s in sorted(symbols, key=lambda s: s.name)
    }


def check_identity(
    ring: FiniteRing,
    lhs: GroupWord,
    rhs: GroupWord,
    assignment: Assignment,
) -> bool:
    """``lhs == rhs`` after specialisation.

    Both sides are also specialised after symbolic evaluation, so a failure
    is reported when the symbolic and finite products disagree.
    """
    left = specialize_word(ring, lhs, assignment)
    right = specialize_word(ring, rhs, assignment)
    if not np.array_equal(left, right):
        return False
    return bool(
        np.array_equal(left, specialize_matrix(ring, evaluate(lhs), assignment))
        and np.array_equal(right, specialize_matrix(ring, evaluate(rhs), assignment))
    )
