"""Elementary transvections, group words and exact matrix evaluation.

A :class:`GroupWord` is a finite product of transvections
``t_ij(p) = e + p*e_ij`` over the free ring; :func:`evaluate` multiplies it
out into a dense :class:`SquareMatrix`, which is the ground truth every
rewrite in :mod:`elemcomm.rewrite` is checked against.

Conventions:
- indices are 1-based, as in the usual notation;
- commutators are left-normed, ``[x, y] = x y x^-1 y^-1``;
- conjugation is ``^x w = x w x^-1``;
- inverses are structural: ``t_ij(p)^-1 = t_ij(-p)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from elemcomm.algebra.freering import (
    IDEAL_SYM,
    IdealPattern,
    RingElem,
    format_elem,
    member,
)
from elemcomm.core.constants import MAX_MATRIX_DEGREE, MIN_DEGREE
from elemcomm.core.errors import (
    DegreeMismatch,
    DegreeTooSmall,
    InvalidPosition,
    OppositePositions,
)

Param = RingElem | int


@dataclass(frozen=True, slots=True)
class Transvection:
    """Letter ``t_ij(param)``; positions are validated against a degree by
    the word that carries it."""

    i: int
    j: int
    param: RingElem

    @classmethod
    def of(cls, i: int, j: int, param: Param) -> Transvection:
        return cls(i, j, RingElem.coerce(param))

    @property
    def position(self) -> tuple[int, int]:
        return (self.i, self.j)

    def inverse(self) -> Transvection:
        return Transvection(self.i, self.j, -self.param)

    def __str__(self) -> str:
        return f"t[{self.i},{self.j}]({format_elem(self.param)})"


def _check_position(i: int, j: int, n: int) -> None:
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise InvalidPosition(i, j, n)


@dataclass(frozen=True, slots=True)
class GroupWord:
    """Word in elementary transvections of degree n (empty word = e)."""

    n: int
    letters: tuple[Transvection, ...] = ()

    def __post_init__(self) -> None:
        if self.n < MIN_DEGREE:
            raise DegreeTooSmall(self.n, MIN_DEGREE)
        if self.n > MAX_MATRIX_DEGREE:
            raise ValueError(f"degree must be at most {MAX_MATRIX_DEGREE}")
        for letter in self.letters:
            _check_position(letter.i, letter.j, self.n)

    @classmethod
    def identity(cls, n: int) -> GroupWord:
        return cls(n)

    @classmethod
    def of(cls, n: int, *letters: tuple[int, int, Param]) -> GroupWord:
        """Build from ``(i, j, param)`` triples."""
        return cls(n, tuple(Transvection.of(i, j, p) for i, j, p in letters))

    @classmethod
    def single(cls, n: int, i: int, j: int, param: Param) -> GroupWord:
        return cls(n, (Transvection.of(i, j, param),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Transvection]:
        return iter(self.letters)

    def __add__(self, other: GroupWord) -> GroupWord:
        if other.n != self.n:
            raise DegreeMismatch(self.n, other.n)
        return GroupWord(self.n, self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return word_inv(self)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(str(letter) for letter in self.letters)


def concat(n: int, words: Iterable[GroupWord]) -> GroupWord:
    letters: list[Transvection] = []
    for word in words:
        if word.n != n:
            raise DegreeMismatch(n, word.n)
        letters.extend(word.letters)
    return GroupWord(n, tuple(letters))


# ============================================================================
# Matrices
# ============================================================================


@dataclass(frozen=True, slots=True)
class SquareMatrix:
    """Dense n x n matrix over the free ring (rows of RingElem)."""

    n: int
    rows: tuple[tuple[RingElem, ...], ...]

    @classmethod
    def identity(cls, n: int) -> SquareMatrix:
        one, zero = RingElem.one(), RingElem.zero()
        return cls(
            n,
            tuple(
                tuple(one if r == c else zero for c in range(n)) for r in range(n)
            ),
        )

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[Param]]) -> SquareMatrix:
        n = len(entries)
        return cls(
            n, tuple(tuple(RingElem.coerce(x) for x in row) for row in entries)
        )

    def entry(self, i: int, j: int) -> RingElem:
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: SquareMatrix) -> SquareMatrix:
        if other.n != self.n:
            raise DegreeMismatch(self.n, other.n)
        n = self.n
        out: list[tuple[RingElem, ...]] = []
        for r in range(n):
            row: list[RingElem] = []
            for c in range(n):
                acc = RingElem.zero()
                for k in range(n):
                    left = self.rows[r][k]
                    if left:
                        acc = acc + left * other.rows[k][c]
                row.append(acc)
            out.append(tuple(row))
        return SquareMatrix(n, tuple(out))

    def deviation(self) -> Iterator[tuple[int, int, RingElem]]:
        """Yield ``(i, j, entry - delta_ij)`` for every nonzero deviation."""
        for r, row in enumerate(self.rows):
            for c, value in enumerate(row):
                dev = value - 1 if r == c else value
                if dev:
                    yield r + 1, c + 1, dev

    def is_identity(self) -> bool:
        return next(self.deviation(), None) is None

    def max_degree(self) -> int:
        return max((x.degree() for row in self.rows for x in row), default=0)

    def block(self, indices: Sequence[int]) -> list[list[RingElem]]:
        """Submatrix on the given 1-based rows and columns."""
        return [[self.entry(r, c) for c in indices] for r in indices]

    def __str__(self) -> str:
        return "\n".join(
            "[" + ", ".join(format_elem(x) for x in row) + "]" for row in self.rows
        )


def transvection_matrix(n: int, letter: Transvection) -> SquareMatrix:
    return evaluate(GroupWord(n, (letter,)))


def evaluate(w: GroupWord) -> SquareMatrix:
    """Multiply out a word; each letter t_ij(p) adds column i * p to column j."""
    n = w.n
    one, zero = RingElem.one(), RingElem.zero()
    cols = [[one if r == c else zero for r in range(n)] for c in range(n)]
    for letter in w.letters:
        p = letter.param
        if not p:
            continue
        src = cols[letter.i - 1]
        dst = cols[letter.j - 1]
        for r in range(n):
            if src[r]:
                dst[r] = dst[r] + src[r] * p
    return SquareMatrix(n, tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))


# ============================================================================
# Word Operations
# ============================================================================


def word_inv(w: GroupWord) -> GroupWord:
    return GroupWord(w.n, tuple(letter.inverse() for letter in reversed(w.letters)))


def word_conj(x: GroupWord, w: GroupWord) -> GroupWord:
    """``^x w = x w x^-1``."""
    if x.n != w.n:
        raise DegreeMismatch(x.n, w.n)
    return GroupWord(w.n, x.letters + w.letters + word_inv(x).letters)


def word_comm(u: GroupWord, v: GroupWord) -> GroupWord:
    """Left-normed commutator ``[u, v] = u v u^-1 v^-1``."""
    if u.n != v.n:
        raise DegreeMismatch(u.n, v.n)
    return GroupWord(
        u.n, u.letters + v.letters + word_inv(u).letters + word_inv(v).letters
    )


def z_gen(n: int, i: int, j: int, p: Param, c: Param) -> GroupWord:
    """``z_ij(p, c) = t_ji(c) t_ij(p) t_ji(-c)``."""
    _check_position(i, j, n)
    p, c = RingElem.coerce(p), RingElem.coerce(c)
    return GroupWord.of(n, (j, i, c), (i, j, p), (j, i, -c))


def elementary_commutator(n: int, i: int, j: int, a: Param, b: Param) -> GroupWord:
    """Second-type generator ``[t_ij(a), t_ji(b)]``."""
    return word_comm(GroupWord.single(n, i, j, a), GroupWord.single(n, j, i, b))


def free_reduce(w: GroupWord) -> GroupWord:
    """Merge adjacent letters at equal positions and drop zero letters."""
    stack: list[Transvection] = []
    for letter in w.letters:
        if not letter.param:
            continue
        if stack and stack[-1].position == letter.position:
            merged = stack.pop().param + letter.param
            if merged:
                stack.append(Transvection(letter.i, letter.j, merged))
        else:
            stack.append(letter)
    return GroupWord(w.n, tuple(stack))


def words_equal(u: GroupWord, v: GroupWord) -> bool:
    """Whether two words evaluate to the same matrix; both are free-reduced first."""
    return evaluate(free_reduce(u)) == evaluate(free_reduce(v))


def steinberg_comm(t1: Transvection, t2: Transvection, n: int) -> GroupWord:
    """Closed form of ``[t1, t2]`` from the Steinberg relations.

    Raises:
        OppositePositions: when t1 sits at (i,j) and t2 at (j,i)
    """
    i1, j1 = t1.position
    i2, j2 = t2.position
    if (i1, j1) == (j2, i2):
        raise OppositePositions(t1.position, t2.position)

    if j1 == i2 and i1 != j2:
        product = t1.param * t2.param
        letters = (Transvection(i1, j2, product),) if product else ()
    elif i1 == j2 and j1 != i2:
        product = -(t2.param * t1.param)
        letters = (Transvection(i2, j1, product),) if product else ()
    else:
        letters = ()
    return GroupWord(n, letters)


def matrix_level(m: SquareMatrix, ideal: IdealPattern = IDEAL_SYM) -> bool:
    """True when m is congruent to e modulo the ideal."""
    return all(member(dev, ideal) for _, _, dev in m.deviation())


def auxiliary_index(n: int, *used: int) -> int:
    """Smallest index in 1..n not among ``used``.

    Raises:
        DegreeTooSmall: when every index is taken
    """
    for h in range(1, n + 1):
        if h not in used:
            return h
    raise DegreeTooSmall(n, required=len(set(used)) + 1)
