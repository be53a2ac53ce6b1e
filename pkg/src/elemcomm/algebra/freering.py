"""Exact arithmetic in the free associative ring over the integers.

Symbols are sorted by the ideal they stand for: names beginning with ``a``
are elements of the ideal A, names beginning with ``b`` elements of B, every
other name is a generic ring element. A :class:`RingElem` is a finite integer
combination of words (monomials) in those symbols.

Because the ring is free, a two-sided ideal generated by sorted symbols is
spanned by the monomials containing the right sorts in the right order, so
ideal membership reduces to an ordered-subsequence test on each monomial
(:func:`member`).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from elemcomm.core.errors import DegreeGuardExceeded


class SymbolSort(str, Enum):
    """Ideal a free generator belongs to.

    Attributes:
        A: element of the ideal A
        B: element of the ideal B
        R: unrestricted ring element
    """

    A = "A"
    B = "B"
    R = "R"


def sort_of(name: str) -> SymbolSort:
    """Return the sort encoded by a symbol name prefix."""
    if name.startswith("a"):
        return SymbolSort.A
    if name.startswith("b"):
        return SymbolSort.B
    return SymbolSort.R


@dataclass(frozen=True, slots=True, order=True)
class Symbol:
    """A free generator; its sort is fixed by its name."""

    name: str

    @property
    def sort(self) -> SymbolSort:
        return sort_of(self.name)

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=4096)
def symbol(name: str) -> Symbol:
    """Interned symbol constructor."""
    return Symbol(name)


#: Ordered product of symbols; the empty tuple is the multiplicative unit.
Monomial = tuple[Symbol, ...]


def monomial_key(mono: Monomial) -> tuple[int, tuple[str, ...]]:
    """Degree-lexicographic sort key used for canonical printing."""
    return (len(mono), tuple(s.name for s in mono))


class RingElem:
    """Immutable element of the free ring: monomial -> nonzero integer.

    Zero coefficients are never stored, so two elements are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None) -> None:
        cleaned: dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    cleaned[tuple(mono)] = int(coeff)
        self._terms = cleaned
        self._hash: int | None = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def _trusted(cls, terms: dict[Monomial, int]) -> RingElem:
        """Wrap an already canonical dict without copying."""
        elem = cls.__new__(cls)
        elem._terms = terms
        elem._hash = None
        return elem

    @classmethod
    def zero(cls) -> RingElem:
        return _ZERO

    @classmethod
    def one(cls) -> RingElem:
        return _ONE

    @classmethod
    def const(cls, value: int) -> RingElem:
        return cls._trusted({(): value}) if value else _ZERO

    @classmethod
    def sym(cls, name: str) -> RingElem:
        return cls._trusted({(symbol(name),): 1})

    @classmethod
    def word(cls, *names: str, coeff: int = 1) -> RingElem:
        """Single monomial ``coeff * names[0]*names[1]*...``."""
        if not coeff:
            return _ZERO
        return cls._trusted({tuple(symbol(n) for n in names): coeff})

    @classmethod
    def coerce(cls, value: RingElem | int) -> RingElem:
        if isinstance(value, RingElem):
            return value
        return cls.const(value)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def monomials(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest monomial length (0 for constants and for zero)."""
        return max((len(m) for m in self._terms), default=0)

    def symbols(self) -> set[Symbol]:
        return {s for mono in self._terms for s in mono}

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda item: monomial_key(item[0]))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: RingElem | int) -> RingElem:
        other = RingElem.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            total = out.get(mono, 0) + coeff
            if total:
                out[mono] = total
            else:
                out.pop(mono, None)
        return RingElem._trusted(out)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem._trusted({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: RingElem | int) -> RingElem:
        return self + (-RingElem.coerce(other))

    def __rsub__(self, other: RingElem | int) -> RingElem:
        return RingElem.coerce(other) - self

    def __mul__(self, other: RingElem | int) -> RingElem:
        other = RingElem.coerce(other)
        if not self._terms or not other._terms:
            return _ZERO
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = m1 + m2
                total = out.get(mono, 0) + c1 * c2
                if total:
                    out[mono] = total
                else:
                    del out[mono]
        return RingElem._trusted(out)

    def __rmul__(self, other: RingElem | int) -> RingElem:
        return RingElem.coerce(other) * self

    # ------------------------------------------------------------------
    # Protocols
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RingElem.const(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return format_elem(self)

    def __repr__(self) -> str:
        return f"RingElem({format_elem(self)!r})"


_ZERO = RingElem._trusted({})
_ONE = RingElem._trusted({(): 1})


def format_elem(p: RingElem) -> str:
    """Canonical text form, degree-lexicographic: ``1 + 2*a1*b1 - c``."""
    items = p.sorted_terms()
    if not items:
        return "0"

    parts: list[str] = []
    for index, (mono, coeff) in enumerate(items):
        magnitude = abs(coeff)
        body = "*".join(s.name for s in mono)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"

        if index == 0:
            parts.append(f"-{text}" if coeff < 0 else text)
        else:
            parts.append(f" - {text}" if coeff < 0 else f" + {text}")
    return "".join(parts)


def re_add(p: RingElem, q: RingElem) -> RingElem:
    return p + q


def re_mul(p: RingElem, q: RingElem) -> RingElem:
    return p * q


def re_neg(p: RingElem) -> RingElem:
    return -p


def re_sum(items: Iterable[RingElem]) -> RingElem:
    total = RingElem.zero()
    for item in items:
        total = total + item
    return total


def check_degree(p: RingElem, limit: int) -> None:
    """Raise DegreeGuardExceeded when p has a monomial longer than limit."""
    degree = p.degree()
    if degree > limit:
        raise DegreeGuardExceeded(degree, limit)


# ============================================================================
# Ideal Patterns
# ============================================================================


def _is_subsequence(needle: tuple[SymbolSort, ...], sorts: list[SymbolSort]) -> bool:
    position = 0
    for sort in sorts:
        if position < len(needle) and sort is needle[position]:
            position += 1
    return position == len(needle)


@dataclass(frozen=True, slots=True)
class IdealPattern:
    """Two-sided ideal of the free ring described by ordered sort patterns.

    A monomial lies in the ideal when the sorts of its symbols contain one
    of the alternatives as an ordered (not necessarily contiguous)
    subsequence. The whole ring is the explicit ``full`` marker; an empty
    alternative set is rejected.
    """

    alternatives: frozenset[tuple[SymbolSort, ...]]
    full: bool = False
    label: str = ""

    def __post_init__(self) -> None:
        if self.full:
            return
        if not self.alternatives:
            raise ValueError("an ideal pattern needs at least one alternative")
        for alt in self.alternatives:
            if not alt:
                raise ValueError("ideal pattern alternatives must be nonempty")
            if any(s is SymbolSort.R for s in alt):
                raise ValueError("ideal pattern alternatives use sorts A and B only")

    @classmethod
    def of(cls, *alternatives: str, label: str = "") -> IdealPattern:
        """Build from strings such as ``"AB"`` or ``"BA"``."""
        alts = frozenset(tuple(SymbolSort(ch) for ch in alt) for alt in alternatives)
        return cls(alts, label=label or "+".join(sorted(alternatives)))

    @classmethod
    def whole_ring(cls) -> IdealPattern:
        return cls(frozenset(), full=True, label="R")

    def matches(self, mono: Monomial) -> bool:
        if self.full:
            return True
        sorts = [s.sort for s in mono]
        return any(_is_subsequence(alt, sorts) for alt in self.alternatives)

    def refines(self, other: IdealPattern) -> bool:
        """True when every monomial matching self also matches other."""
        if other.full:
            return True
        if self.full:
            return False
        return all(
            any(_is_subsequence(target, list(alt)) for target in other.alternatives)
            for alt in self.alternatives
        )

    def __str__(self) -> str:
        return self.label


def member(p: RingElem, ideal: IdealPattern) -> bool:
    """Two-sided ideal membership: every monomial of p matches the pattern."""
    return all(ideal.matches(mono) for mono in p.monomials())


IDEAL_A = IdealPattern.of("A", label="A")
IDEAL_B = IdealPattern.of("B", label="B")
IDEAL_AB = IdealPattern.of("AB", label="AB")
IDEAL_BA = IdealPattern.of("BA", label="BA")
IDEAL_SYM = IdealPattern.of("AB", "BA", label="AB+BA")
IDEAL_SYM_AA = IdealPattern.of("AB", "BA", "AA", label="AB+BA+A^2")
IDEAL_SYM_BB = IdealPattern.of("AB", "BA", "BB", label="AB+BA+B^2")
FULL_RING = IdealPattern.whole_ring()
