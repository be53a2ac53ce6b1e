"""Subgroup closure of matrices over a finite ring.

Matrices are uint8 arrays of element indices, shape (n, n), and batches are
shape (m, n, n). Products are computed with table lookups: one fancy-index
into the multiplication table gives every ``x_rk * y_kc`` of a batch, then
the addition table folds the k axis.

Each matrix is packed into one uint64 key (``bits`` bits per entry), so a
subgroup is a sorted key array and membership is ``np.searchsorted``.
:class:`SubgroupClosure` grows by right multiplication with its generators,
breadth first, and a generator already inside the current closure is dropped
before any work is done for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from elemcomm.core.constants import CLOSURE_BATCH
from elemcomm.core.errors import CapExceeded
from elemcomm.oracle.rings import FiniteRing
from elemcomm.utils.debug import debug

#: Matrix over a finite ring: uint8 element indices, shape (n, n)
FinMatrix = np.ndarray

_MAX_POWER = 1 << 16


@dataclass(frozen=True, eq=False)
class MatrixCodec:
    """Packs n x n matrices with entries below k into uint64 keys."""

    n: int
    k: int
    bits: int = field(init=False)
    shifts: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        bits = max(1, (self.k - 1).bit_length())
        if self.n * self.n * bits > 64:
            raise ValueError(
                f"{self.n}x{self.n} matrices over {self.k} elements need more "
                "than 64 bits"
            )
        object.__setattr__(self, "bits", bits)
        shifts = np.arange(self.n * self.n, dtype=np.uint64) * np.uint64(bits)
        object.__setattr__(self, "shifts", shifts)

    def pack(self, batch: np.ndarray) -> np.ndarray:
        flat = batch.reshape(-1, self.n * self.n).astype(np.uint64)
        return np.bitwise_or.reduce(flat << self.shifts, axis=1)

    def unpack(self, keys: np.ndarray) -> np.ndarray:
        mask = np.uint64((1 << self.bits) - 1)
        flat = (keys.astype(np.uint64)[:, None] >> self.shifts) & mask
        return flat.astype(np.uint8).reshape(-1, self.n, self.n)


# ============================================================================
# Matrix arithmetic
# ============================================================================


def identity(ring: FiniteRing, n: int) -> FinMatrix:
    out = np.full((n, n), ring.zero, dtype=np.uint8)
    np.fill_diagonal(out, ring.one)
    return out


def transvection(ring: FiniteRing, n: int, i: int, j: int, a: int) -> FinMatrix:
    """``t_ij(a)`` with 1-based indices."""
    out = identity(ring, n)
    out[i - 1, j - 1] = a
    return out


def batch_mul(ring: FiniteRing, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Entrywise-batched product; either side may be a single (n, n) matrix."""
    left, right = np.broadcast_arrays(
        np.asarray(left)[..., :, :], np.asarray(right)[..., :, :]
    )
    # terms[..., r, k, c] = left[r, k] * right[k, c]
    terms = ring.mul[left[..., :, :, None], right[..., None, :, :]]
    acc = terms[..., 0, :]
    for k in range(1, terms.shape[-2]):
        acc = ring.add[acc, terms[..., k, :]]
    return np.ascontiguousarray(acc, dtype=np.uint8)


def mat_mul(ring: FiniteRing, *factors: FinMatrix) -> FinMatrix:
    out = factors[0]
    for factor in factors[1:]:
        out = batch_mul(ring, out, factor)
    return out


def batch_inverse(ring: FiniteRing, batch: np.ndarray) -> np.ndarray:
    """Inverses of invertible matrices via ``x^-1 = x^(m-1)`` when ``x^m = e``."""
    batch = np.asarray(batch, dtype=np.uint8)
    single = batch.ndim == 2
    if single:
        batch = batch[None]
    n = batch.shape[-1]
    ident = identity(ring, n)

    result = np.empty_like(batch)
    power = batch.copy()
    previous = np.broadcast_to(ident, batch.shape).copy()
    pending = np.ones(len(batch), dtype=bool)
    for _ in range(_MAX_POWER):
        hit = pending & (power == ident).all(axis=(1, 2))
        result[hit] = previous[hit]
        pending &= ~hit
        if not pending.any():
            return result[0] if single else result
        previous = power
        power = batch_mul(ring, power, batch)
    raise ValueError("matrix is not invertible (no power reached the identity)")


def commutator(ring: FiniteRing, x: FinMatrix, y: FinMatrix) -> FinMatrix:
    return mat_mul(ring, x, y, batch_inverse(ring, x), batch_inverse(ring, y))


def z_matrix(ring: FiniteRing, n: int, i: int, j: int, p: int, c: int) -> FinMatrix:
    """``z_ij(p, c) = t_ji(c) t_ij(p) t_ji(-c)``."""
    return mat_mul(
        ring,
        transvection(ring, n, j, i, c),
        transvection(ring, n, i, j, p),
        transvection(ring, n, j, i, int(ring.neg[c])),
    )


# ============================================================================
# Closure
# ============================================================================


def _contains(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    if sorted_keys.size == 0:
        return np.zeros(keys.shape, dtype=bool)
    pos = np.searchsorted(sorted_keys, keys)
    pos = np.minimum(pos, sorted_keys.size - 1)
    return np.asarray(sorted_keys[pos] == keys)


@dataclass(eq=False)
class SubgroupClosure:
    """Subgroup of GL_n over a finite ring.

    ``keys`` is None for a subgroup known by generators only; otherwise it is
    the sorted array of packed elements. ``cap_exceeded`` marks a partial
    enumeration.
    """

    ring: FiniteRing
    n: int
    generators: np.ndarray
    keys: np.ndarray | None
    cap: int
    cap_exceeded: bool = False
    codec: MatrixCodec = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.codec = MatrixCodec(self.n, self.ring.order)

    @classmethod
    def trivial(cls, ring: FiniteRing, n: int, cap: int) -> SubgroupClosure:
        codec = MatrixCodec(n, ring.order)
        keys = codec.pack(identity(ring, n)[None])
        return cls(ring, n, np.empty((0, n, n), dtype=np.uint8), keys, cap)

    @classmethod
    def from_generators(
        cls, ring: FiniteRing, n: int, generators: np.ndarray, cap: int
    ) -> SubgroupClosure:
        """Subgroup known only by its generators (never enumerated)."""
        gens = np.asarray(generators, dtype=np.uint8).reshape(-1, n, n)
        return cls(ring, n, _dedupe(MatrixCodec(n, ring.order), gens), None, cap)

    @property
    def enumerated(self) -> bool:
        return self.keys is not None

    @property
    def complete(self) -> bool:
        return self.keys is not None and not self.cap_exceeded

    @property
    def order(self) -> int | None:
        return None if self.keys is None else int(self.keys.size)

    def require_complete(self) -> None:
        """Raises CapExceeded unless the enumeration is complete."""
        if self.keys is None:
            raise ValueError("subgroup is known by generators only")
        if self.cap_exceeded:
            raise CapExceeded(self.cap, int(self.keys.size))

    def elements(self) -> np.ndarray:
        if self.keys is None:
            raise ValueError("subgroup is known by generators only")
        return self.codec.unpack(self.keys)

    def contains(self, batch: np.ndarray) -> np.ndarray:
        if self.keys is None:
            raise ValueError("subgroup is known by generators only")
        batch = np.asarray(batch, dtype=np.uint8).reshape(-1, self.n, self.n)
        return _contains(self.keys, self.codec.pack(batch))

    def same_elements(self, other: SubgroupClosure) -> bool:
        if self.keys is None or other.keys is None:
            raise ValueError("both subgroups must be enumerated")
        return bool(np.array_equal(self.keys, other.keys))

    def issubset(self, other: SubgroupClosure) -> bool:
        if self.keys is None:
            raise ValueError("subgroup is known by generators only")
        return bool(other.contains(self.codec.unpack(self.keys)).all())

    def add_generators(self, batch: np.ndarray) -> np.ndarray:
        """Grow the closure by new generators.

        Returns:
            The generators that were not already members
        """
        if self.keys is None:
            raise ValueError("subgroup is known by generators only")
        batch = np.asarray(batch, dtype=np.uint8).reshape(-1, self.n, self.n)
        batch = _dedupe(self.codec, batch)
        kept: list[np.ndarray] = []
        for gen in batch:
            if self.cap_exceeded:
                break
            if _contains(self.keys, self.codec.pack(gen[None]))[0]:
                continue
            kept.append(gen)
            self.generators = np.concatenate([self.generators, gen[None]])
            # old elements times the new generator, then BFS over all generators
            fresh = self._absorb(self.keys, gen[None])
            while fresh.size and not self.cap_exceeded:
                fresh = self._absorb(fresh, self.generators)
        debug(f"closure order {self.keys.size} with {len(self.generators)} generators")
        if not kept:
            return np.empty((0, self.n, self.n), dtype=np.uint8)
        return np.stack(kept)

    def _absorb(self, sources: np.ndarray, gens: np.ndarray) -> np.ndarray:
        """Add ``sources * g`` for every g; returns the keys that were new."""
        assert self.keys is not None
        found: list[np.ndarray] = []
        for start in range(0, sources.size, CLOSURE_BATCH):
            chunk = self.codec.unpack(sources[start : start + CLOSURE_BATCH])
            for g in gens:
                found.append(self.codec.pack(batch_mul(self.ring, chunk, g)))
        candidates = np.unique(np.concatenate(found)) if found else sources[:0]
        fresh = candidates[~_contains(self.keys, candidates)]
        if fresh.size:
            self.keys = np.union1d(self.keys, fresh)
            if self.keys.size > self.cap:
                self.cap_exceeded = True
        return fresh


def _dedupe(codec: MatrixCodec, batch: np.ndarray) -> np.ndarray:
    if len(batch) == 0:
        return batch
    _, first = np.unique(codec.pack(batch), return_index=True)
    return batch[np.sort(first)]


def bfs_closure(
    ring: FiniteRing, n: int, generators: np.ndarray, cap: int
) -> SubgroupClosure:
    """Enumerate the subgroup generated by a batch of matrices."""
    closure = SubgroupClosure.trivial(ring, n, cap)
    closure.add_generators(generators)
    return closure


def commutator_keys(
    ring: FiniteRing, codec: MatrixCodec, left: np.ndarray, right: np.ndarray
) -> np.ndarray:
    """Sorted unique keys of ``[h, k]`` over all pairs h in left, k in right."""
    right_inv = batch_inverse(ring, right)
    found: list[np.ndarray] = []
    for h in left:
        h_inv = batch_inverse(ring, h)
        for start in range(0, len(right), CLOSURE_BATCH):
            k = right[start : start + CLOSURE_BATCH]
            k_inv = right_inv[start : start + CLOSURE_BATCH]
            prod = mat_mul(ring, h, k, h_inv)
            prod = batch_mul(ring, prod, k_inv)
            found.append(np.unique(codec.pack(prod)))
        if len(found) > 64:
            found = [np.unique(np.concatenate(found))]
    return np.unique(np.concatenate(found)) if found else np.empty(0, dtype=np.uint64)


def normal_closure(
    ring: FiniteRing,
    n: int,
    seeds: np.ndarray,
    conjugators: np.ndarray,
    cap: int,
) -> SubgroupClosure:
    """Smallest subgroup containing the seeds and normalised by the conjugators."""
    closure = bfs_closure(ring, n, seeds, cap)
    if len(conjugators) == 0:
        return closure
    conj_inv = batch_inverse(ring, conjugators)
    pending = closure.generators
    while len(pending) and not closure.cap_exceeded:
        images = [
            batch_mul(ring, batch_mul(ring, c, pending), c_inv)
            for c, c_inv in zip(conjugators, conj_inv, strict=True)
        ]
        pending = closure.add_generators(np.concatenate(images))
    return closure
