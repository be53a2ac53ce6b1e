"""Finite rings given by Cayley tables, and their two-sided ideals.

Elements are indices ``0..k-1`` into uint8 addition and multiplication
tables. Validation checks every ring law on all triples at once with numpy
fancy indexing, so a table of order 16 costs a few thousand lookups.

Builtin rings:
- ``zmod:k``: integers modulo k (2 <= k <= 16)
- ``dual:2``: F2[t]/(t^2), elements 0, 1, t, 1+t; named ideal ``t``
- ``t2f2``: upper triangular 2x2 matrices over F2; named ideal ``strict``
  (the strictly upper triangular matrices, {0, e12})
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from elemcomm.core.constants import MAX_RING_ORDER
from elemcomm.core.errors import RingValidationError, UnknownRing
from elemcomm.schemas import RingSpec

Table = np.ndarray


@dataclass(eq=False)
class FiniteRing:
    """Finite unital ring (not necessarily commutative).

    Attributes:
        name: Display name, e.g. 'zmod:8'
        labels: Printed form of each element index
        add: Addition table, shape (k, k)
        mul: Multiplication table, shape (k, k)
        one: Index of the multiplicative unit
        ideals: Named ideals shipped with the ring
    """

    name: str
    labels: tuple[str, ...]
    add: Table
    mul: Table
    one: int
    ideals: dict[str, frozenset[int]] = field(default_factory=dict)
    zero: int = field(init=False, default=0)
    neg: Table = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.add = np.asarray(self.add, dtype=np.uint8)
        self.mul = np.asarray(self.mul, dtype=np.uint8)
        self.validate()
        self.neg = np.argmax(self.add == self.zero, axis=1).astype(np.uint8)

    @property
    def order(self) -> int:
        return len(self.labels)

    def label(self, x: int) -> str:
        return self.labels[int(x)]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise RingValidationError(
                f"'{label}' is not an element of {self.name}"
            ) from None

    def from_int(self, value: int) -> int:
        """Image of an integer under Z -> R."""
        step = self.one if value >= 0 else int(self.neg[self.one])
        acc = self.zero
        for _ in range(abs(value) % self.order):
            acc = int(self.add[acc, step])
        return acc

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def validate(self) -> None:
        """Check the ring axioms on all triples.

        Raises:
            RingValidationError: naming the failed law and a witness
        """
        k = len(self.labels)
        if not 1 <= k <= MAX_RING_ORDER:
            raise RingValidationError(f"order {k} outside 1..{MAX_RING_ORDER}")
        for table in (self.add, self.mul):
            if table.shape != (k, k):
                raise RingValidationError(f"table shape {table.shape} is not {k}x{k}")
            if int(table.max(initial=0)) >= k:
                raise RingValidationError("table entry out of range")
        if not 0 <= self.one < k:
            raise RingValidationError("unit index out of range")

        x = np.arange(k)
        add, mul = self.add.astype(np.intp), self.mul.astype(np.intp)

        zeros = [
            z for z in range(k) if (add[z] == x).all() and (add[:, z] == x).all()
        ]
        if not zeros:
            raise RingValidationError("additive identity")
        self.zero = zeros[0]

        _require(add == add.T, "additive commutativity")
        _require((add == self.zero).any(axis=1), "additive inverses")
        _require(_associative(add), "additive associativity")
        _require(_associative(mul), "multiplicative associativity")
        _require(
            (mul[self.one] == x) & (mul[:, self.one] == x), "multiplicative unit"
        )
        _require(
            mul[x[:, None, None], add[None, :, :]]
            == add[mul[:, :, None], mul[:, None, :]],
            "left distributivity",
        )
        _require(
            mul[add[:, :, None], x[None, None, :]]
            == add[mul[:, None, :], mul[None, :, :]],
            "right distributivity",
        )


def _associative(table: np.ndarray) -> np.ndarray:
    x = np.arange(table.shape[0])
    left = table[table[:, :, None], x[None, None, :]]
    right = table[x[:, None, None], table[None, :, :]]
    return np.asarray(left == right)


def _require(holds: np.ndarray, law: str) -> None:
    if not holds.all():
        witness = tuple(int(v) for v in np.argwhere(~holds)[0])
        raise RingValidationError(law, witness)


# ============================================================================
# Ideals
# ============================================================================


@dataclass(frozen=True, eq=False)
class FiniteIdeal:
    """Two-sided ideal given by its member indices."""

    ring: FiniteRing
    members: frozenset[int]
    name: str = ""

    def __post_init__(self) -> None:
        self.validate()

    @property
    def order(self) -> int:
        return len(self.members)

    def mask(self) -> np.ndarray:
        out = np.zeros(self.ring.order, dtype=bool)
        out[list(self.members)] = True
        return out

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteIdeal):
            return NotImplemented
        return self.ring is other.ring and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def validate(self) -> None:
        """Raises RingValidationError unless the subset is a two-sided ideal."""
        ring = self.ring
        if ring.zero not in self.members:
            raise RingValidationError(f"ideal {self.name or '?'} lacks zero")
        if any(not 0 <= m < ring.order for m in self.members):
            raise RingValidationError(f"ideal {self.name or '?'} has stray elements")
        mask = self.mask()
        m = np.array(self.sorted_members())
        x = np.arange(ring.order)
        checks = (
            (ring.add[np.ix_(m, m)], "ideal additive closure"),
            (ring.mul[np.ix_(x, m)], "ideal left absorption"),
            (ring.mul[np.ix_(m, x)], "ideal right absorption"),
        )
        for products, law in checks:
            if not mask[products].all():
                raise RingValidationError(law)

    def __str__(self) -> str:
        labels = ", ".join(self.ring.label(v) for v in self.sorted_members())
        return self.name or "{" + labels + "}"


def _additive_closure(ring: FiniteRing, seed: Iterable[int]) -> frozenset[int]:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    for s in seed:
        mask[int(s)] = True
    while True:
        m = np.flatnonzero(mask)
        grown = mask.copy()
        grown[ring.add[np.ix_(m, m)].ravel()] = True
        if (grown == mask).all():
            return frozenset(int(v) for v in np.flatnonzero(mask))
        mask = grown


def whole_ideal(ring: FiniteRing) -> FiniteIdeal:
    return FiniteIdeal(ring, frozenset(range(ring.order)), "R")


def zero_ideal(ring: FiniteRing) -> FiniteIdeal:
    return FiniteIdeal(ring, frozenset({ring.zero}), "0")


def ideal_generated(
    ring: FiniteRing, gens: Iterable[int], name: str = ""
) -> FiniteIdeal:
    """Smallest two-sided ideal containing the given elements."""
    g = np.array(sorted({int(v) for v in gens}), dtype=np.intp)
    if g.size == 0:
        return zero_ideal(ring)
    mul = ring.mul.astype(np.intp)
    # r * g * s over all r, s
    left = mul[:, g]
    products = mul[left[:, :, None], np.arange(ring.order)[None, None, :]]
    return FiniteIdeal(ring, _additive_closure(ring, products.ravel()), name)


def ideal_sum(left: FiniteIdeal, right: FiniteIdeal) -> FiniteIdeal:
    return FiniteIdeal(
        left.ring,
        _additive_closure(left.ring, left.members | right.members),
        f"{left}+{right}",
    )


def ideal_product(left: FiniteIdeal, right: FiniteIdeal) -> FiniteIdeal:
    """Additive span of the products ``l * r``."""
    ring = left.ring
    products = ring.mul[np.ix_(left.sorted_members(), right.sorted_members())]
    return FiniteIdeal(
        ring, _additive_closure(ring, products.ravel()), f"{left}{right}"
    )


def ideal_ops(
    ring: FiniteRing, a: FiniteIdeal, b: FiniteIdeal
) -> dict[str, FiniteIdeal]:
    """Ideals derived from A and B that the verification checks compare."""
    ab = ideal_product(a, b)
    ba = ideal_product(b, a)
    sym = ideal_sum(ab, ba)
    return {
        "AB": ab,
        "BA": ba,
        "AB+BA": FiniteIdeal(ring, sym.members, "AB+BA"),
        "AB+BA+A^2": ideal_sum(sym, ideal_product(a, a)),
        "AB+BA+B^2": ideal_sum(sym, ideal_product(b, b)),
    }


def resolve_ideal(ring: FiniteRing, spec: str) -> FiniteIdeal:
    """Parse an ideal description.

    Accepted forms: a named ideal of the ring, ``R``, ``0``, an explicit
    member set ``{l1,l2,...}``, or comma-separated element labels that
    generate the ideal.
    """
    spec = spec.strip()
    if spec in ring.ideals:
        return FiniteIdeal(ring, ring.ideals[spec], spec)
    if spec == "R":
        return whole_ideal(ring)
    if spec.startswith("{") and spec.endswith("}"):
        labels = [s.strip() for s in spec[1:-1].split(",") if s.strip()]
        return FiniteIdeal(ring, frozenset(ring.index(s) for s in labels), spec)
    labels = [s.strip() for s in spec.split(",") if s.strip()]
    return ideal_generated(ring, (ring.index(s) for s in labels), f"({spec})")


# ============================================================================
# Builtin and file-defined rings
# ============================================================================


def _zmod(k: int) -> FiniteRing:
    if not 2 <= k <= MAX_RING_ORDER:
        raise UnknownRing(f"zmod:{k}")
    x = np.arange(k)
    return FiniteRing(
        f"zmod:{k}",
        tuple(str(v) for v in range(k)),
        (x[:, None] + x[None, :]) % k,
        (x[:, None] * x[None, :]) % k,
        one=1,
    )


def _dual_f2() -> FiniteRing:
    # index = u + 2v for u + v*t
    u, v = np.arange(4) % 2, np.arange(4) // 2
    add = (u[:, None] ^ u[None, :]) + 2 * (v[:, None] ^ v[None, :])
    mul = (u[:, None] & u[None, :]) + 2 * (
        (u[:, None] & v[None, :]) ^ (v[:, None] & u[None, :])
    )
    return FiniteRing(
        "dual:2",
        ("0", "1", "t", "1+t"),
        add,
        mul,
        one=1,
        ideals={"t": frozenset({0, 2})},
    )


def _upper_triangular_f2() -> FiniteRing:
    # index = x + 2y + 4w for [[x, y], [0, w]]
    idx = np.arange(8)
    x, y, w = idx % 2, (idx // 2) % 2, idx // 4
    add = (
        (x[:, None] ^ x[None, :])
        + 2 * (y[:, None] ^ y[None, :])
        + 4 * (w[:, None] ^ w[None, :])
    )
    mul = (
        (x[:, None] & x[None, :])
        + 2 * ((x[:, None] & y[None, :]) ^ (y[:, None] & w[None, :]))
        + 4 * (w[:, None] & w[None, :])
    )
    labels = tuple(f"[{a}{b};{c}]" for a, b, c in zip(x, y, w, strict=True))
    return FiniteRing(
        "t2f2", labels, add, mul, one=5, ideals={"strict": frozenset({0, 2})}
    )


def ring_builtin(name: str) -> FiniteRing:
    """Build a builtin ring by name.

    Raises:
        UnknownRing: for unrecognised names or orders out of range
    """
    family, _, arg = name.partition(":")
    if family == "zmod" and arg.isdigit():
        return _zmod(int(arg))
    if family == "dual" and arg in ("", "2"):
        return _dual_f2()
    if family == "t2f2" and not arg:
        return _upper_triangular_f2()
    raise UnknownRing(name)


def ring_from_spec(spec: RingSpec) -> FiniteRing:
    """Build and validate a ring from a parsed spec document."""
    ring = FiniteRing(
        spec.name,
        tuple(spec.elements),
        np.array(spec.add),
        np.array(spec.mul),
        one=spec.one,
    )
    for ideal_name, members in spec.ideals.items():
        ideal = FiniteIdeal(ring, frozenset(members), ideal_name)
        ring.ideals[ideal_name] = ideal.members
    return ring


def load_ring_file(path: str | Path) -> FiniteRing:
    """Load a ring spec JSON file.

    Raises:
        RingValidationError: for malformed files or failed ring laws
    """
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        spec = RingSpec.model_validate(raw)
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise RingValidationError(f"unreadable ring file {path}: {exc}") from exc
    return ring_from_spec(spec)
