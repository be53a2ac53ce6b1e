"""Finite-ring verification of the subgroup equalities.

Subgroups built here:
- ``unrel_elementary``: E(n, A), generated by every ``t_ij(a)``
- ``rel_elementary``: E(n, R, A), generated by every ``z_ij(a, c)`` (a finite
  generating set, so no normal closure is needed)
- ``mixed_commutator``: [H, K]

Checks (each returns an :class:`OracleReport`):
- ``theorem1``: the listed generators span [E(n,R,A), E(n,R,B)]
- ``theorem2``: [E(n,R,A), E(n,R,B)] = [E(n,A), E(n,B)]
- ``lemma6``: [[E(n,A), E(n,B)], E(n,R)] = E(n,R,AB+BA)
- ``containments``: E(n,A) <= E(n,R,A) <= GL(n,R,A)
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Literal

import numpy as np
import structlog

from elemcomm.core.constants import LARGE_ELEMENTARY_RINGS, MIN_DEGREE
from elemcomm.core.errors import DegreeTooSmall
from elemcomm.core.options import OracleOptions
from elemcomm.oracle.closure import (
    SubgroupClosure,
    batch_inverse,
    batch_mul,
    bfs_closure,
    commutator,
    commutator_keys,
    normal_closure,
    transvection,
    z_matrix,
)
from elemcomm.oracle.rings import FiniteIdeal, FiniteRing, ideal_ops, whole_ideal
from elemcomm.schemas import OracleReport

CheckName = Literal["theorem1", "theorem2", "lemma6", "containments"]
CHECKS: tuple[CheckName, ...] = ("theorem1", "theorem2", "lemma6", "containments")


def _positions(n: int) -> list[tuple[int, int]]:
    return list(permutations(range(1, n + 1), 2))


def _stack(ring: FiniteRing, n: int, mats: Iterable[np.ndarray]) -> np.ndarray:
    batch = list(mats)
    if not batch:
        return np.empty((0, n, n), dtype=np.uint8)
    return np.stack(batch).astype(np.uint8)


# ============================================================================
# Elementary subgroups
# ============================================================================


def unrel_generators(ring: FiniteRing, n: int, ideal: FiniteIdeal) -> np.ndarray:
    nonzero = [a for a in ideal.sorted_members() if a != ring.zero]
    return _stack(
        ring,
        n,
        (transvection(ring, n, i, j, a) for i, j in _positions(n) for a in nonzero),
    )


def rel_generators(ring: FiniteRing, n: int, ideal: FiniteIdeal) -> np.ndarray:
    nonzero = [a for a in ideal.sorted_members() if a != ring.zero]
    return _stack(
        ring,
        n,
        (
            z_matrix(ring, n, i, j, a, c)
            for i, j in _positions(n)
            for a in nonzero
            for c in range(ring.order)
        ),
    )


def unrel_elementary(
    ring: FiniteRing, n: int, ideal: FiniteIdeal, cap: int
) -> SubgroupClosure:
    """E(n, A) enumerated from the transvections ``t_ij(a)``."""
    return bfs_closure(ring, n, unrel_generators(ring, n, ideal), cap)


def rel_elementary(
    ring: FiniteRing, n: int, ideal: FiniteIdeal, cap: int
) -> SubgroupClosure:
    """E(n, R, A) enumerated from ``z_ij(a, c)`` over all a in A, c in R."""
    return bfs_closure(ring, n, rel_generators(ring, n, ideal), cap)


def elementary_group(ring: FiniteRing, n: int, cap: int) -> SubgroupClosure:
    """E(n, R) by its generators ``t_ij(r)``; enumerated only for all pairs."""
    gens = unrel_generators(ring, n, whole_ideal(ring))
    return SubgroupClosure.from_generators(ring, n, gens, cap)


@dataclass(slots=True)
class MixedCommutator:
    """[H, K] with the method used and any note for the report."""

    closure: SubgroupClosure
    method: str
    detail: str = ""


def _unknown(ring: FiniteRing, n: int, cap: int) -> SubgroupClosure:
    empty = np.empty((0, n, n), dtype=np.uint8)
    return SubgroupClosure(ring, n, empty, None, cap, cap_exceeded=True)


def mixed_commutator(
    left: SubgroupClosure,
    right: SubgroupClosure,
    *,
    pair_budget: int,
    cap: int,
    cross_check: bool = False,
) -> MixedCommutator:
    """[H, K] as the closure of ``[h, k]`` over every h in H and k in K.

    A group known only by generators is enumerated first, with a cap that
    keeps ``|H| * |K|`` within ``pair_budget``. When an enumeration is partial
    or the pairs exceed the budget, the closure is marked partial and carries
    no elements. ``cross_check`` adds the normal closure of the generator
    commutators ``[s, t]`` in ``<H, K>`` to the detail; it never replaces the
    all-pairs result.
    """
    ring, n = left.ring, left.n
    if left.keys is None:
        left, right = right, left
        swapped = True
    else:
        swapped = False
    if left.keys is not None and right.keys is None and not left.cap_exceeded:
        limit = min(cap, max(1, pair_budget // max(1, left.keys.size)))
        right = bfs_closure(ring, n, right.generators, limit)
    if swapped:
        left, right = right, left

    notes: list[str] = []
    if not (left.complete and right.complete):
        closure = _unknown(ring, n, cap)
        notes.append("partial enumeration (cap or pair budget); all pairs not formed")
    else:
        pairs = left.elements().shape[0] * right.elements().shape[0]
        if pairs > pair_budget:
            closure = _unknown(ring, n, cap)
            notes.append(f"{pairs} pairs exceed the pair budget {pair_budget}")
        else:
            keys = commutator_keys(ring, left.codec, left.elements(), right.elements())
            closure = bfs_closure(ring, n, left.codec.unpack(keys), cap)

    method = "all-pairs"
    if cross_check:
        method = "all-pairs+normal-closure"
        notes.append(_cross_check(left, right, closure, cap))
    return MixedCommutator(closure, method, "; ".join(notes))


def _cross_check(
    left: SubgroupClosure,
    right: SubgroupClosure,
    all_pairs: SubgroupClosure,
    cap: int,
) -> str:
    ring, n = left.ring, left.n
    seeds = [
        commutator(ring, s, t) for s in left.generators for t in right.generators
    ]
    conjugators = np.concatenate([left.generators, right.generators])
    closure = normal_closure(ring, n, _stack(ring, n, seeds), conjugators, cap)
    if closure.cap_exceeded:
        return "normal-closure cross-check: cap exceeded"
    if not all_pairs.complete:
        return f"normal-closure cross-check: order {closure.order}"
    verdict = "agrees" if closure.same_elements(all_pairs) else "DISAGREES"
    return f"normal-closure cross-check {verdict} (order {closure.order})"


def in_congruence_subgroup(
    ring: FiniteRing, batch: np.ndarray, ideal: FiniteIdeal
) -> np.ndarray:
    """Entry test for GL(n, R, A): ``m - e`` has every entry in A."""
    mask = ideal.mask()
    n = batch.shape[-1]
    diagonal = np.eye(n, dtype=bool)
    shifted = ring.add[batch, ring.neg[ring.one]]
    entries = np.where(diagonal, shifted, batch)
    return np.asarray(mask[entries].all(axis=(1, 2)))


# ============================================================================
# Checks
# ============================================================================


def _report(
    check: CheckName,
    ring: FiniteRing,
    n: int,
    a: FiniteIdeal,
    b: FiniteIdeal | None,
    groups: dict[str, SubgroupClosure],
    equal: bool | None,
    method: str,
    started: float,
    detail: str = "",
) -> OracleReport:
    return OracleReport(
        check=check,
        ring=ring.name,
        n=n,
        ideal_a=str(a),
        ideal_b="" if b is None else str(b),
        orders={name: g.order for name, g in groups.items() if g.order is not None},
        equal=equal,
        method=method,
        cap_exceeded=any(g.cap_exceeded for g in groups.values()),
        elapsed_ms=int((time.perf_counter() - started) * 1000),
        detail=detail,
    )


def _compare(left: SubgroupClosure, right: SubgroupClosure) -> bool | None:
    if left.cap_exceeded or right.cap_exceeded:
        return None
    return left.same_elements(right)


def theorem1_generators(
    ring: FiniteRing, n: int, a: FiniteIdeal, b: FiniteIdeal
) -> np.ndarray:
    """``z_ij(ab, c)``, ``z_ij(ba, c)`` at every position and
    ``[t_12(a), t_21(b)]``."""
    products = {
        int(p)
        for x in a.sorted_members()
        for y in b.sorted_members()
        for p in (ring.mul[x, y], ring.mul[y, x])
    } - {ring.zero}
    relative = [
        z_matrix(ring, n, i, j, p, c)
        for i, j in _positions(n)
        for p in sorted(products)
        for c in range(ring.order)
    ]
    second = [
        commutator(
            ring, transvection(ring, n, 1, 2, x), transvection(ring, n, 2, 1, y)
        )
        for x in a.sorted_members()
        for y in b.sorted_members()
    ]
    return _stack(ring, n, relative + second)


def _require_degree(n: int) -> None:
    if n < MIN_DEGREE:
        raise DegreeTooSmall(n, MIN_DEGREE)


def _mixed(
    left: SubgroupClosure, right: SubgroupClosure, opts: OracleOptions
) -> MixedCommutator:
    return mixed_commutator(
        left,
        right,
        pair_budget=opts.pair_budget,
        cap=opts.cap,
        cross_check=opts.cross_check,
    )


def verify_theorem1(
    ring: FiniteRing,
    a: FiniteIdeal,
    b: FiniteIdeal,
    opts: OracleOptions,
    logger: Any = None,
) -> OracleReport:
    """Compare the listed generators with [E(n,R,A), E(n,R,B)].

    Raises:
        DegreeTooSmall: when n < 3
    """
    _require_degree(opts.n)
    log = (logger or structlog.get_logger()).bind(check="theorem1", ring=ring.name)
    started = time.perf_counter()
    n = opts.n

    g1 = bfs_closure(ring, n, theorem1_generators(ring, n, a, b), opts.cap)
    _log_closure(log, "G1", g1)
    rel_a = rel_elementary(ring, n, a, opts.cap)
    rel_b = rel_elementary(ring, n, b, opts.cap)
    g2 = _mixed(rel_a, rel_b, opts)
    _log_closure(log, "G2", g2.closure)

    groups = {"G1": g1, "G2": g2.closure, "E(n,R,A)": rel_a, "E(n,R,B)": rel_b}
    report = _report(
        "theorem1",
        ring,
        n,
        a,
        b,
        groups,
        _compare(g1, g2.closure),
        g2.method,
        started,
        g2.detail,
    )
    _log_verdict(log, report)
    return report


def verify_theorem2(
    ring: FiniteRing,
    a: FiniteIdeal,
    b: FiniteIdeal,
    opts: OracleOptions,
    logger: Any = None,
) -> OracleReport:
    _require_degree(opts.n)
    log = (logger or structlog.get_logger()).bind(check="theorem2", ring=ring.name)
    started = time.perf_counter()
    n = opts.n

    relative = _mixed(
        rel_elementary(ring, n, a, opts.cap),
        rel_elementary(ring, n, b, opts.cap),
        opts,
    )
    _log_closure(log, "relative", relative.closure)
    plain = _mixed(
        unrel_elementary(ring, n, a, opts.cap),
        unrel_elementary(ring, n, b, opts.cap),
        opts,
    )
    _log_closure(log, "unrelative", plain.closure)

    groups = {
        "[E(n,R,A),E(n,R,B)]": relative.closure,
        "[E(n,A),E(n,B)]": plain.closure,
    }
    detail = "; ".join(
        f"{name}: {m.detail}"
        for name, m in (("relative", relative), ("unrelative", plain))
        if m.detail
    )
    report = _report(
        "theorem2",
        ring,
        n,
        a,
        b,
        groups,
        _compare(relative.closure, plain.closure),
        relative.method,
        started,
        detail,
    )
    _log_verdict(log, report)
    return report


def verify_lemma6(
    ring: FiniteRing,
    a: FiniteIdeal,
    b: FiniteIdeal,
    opts: OracleOptions,
    logger: Any = None,
) -> OracleReport:
    _require_degree(opts.n)
    log = (logger or structlog.get_logger()).bind(check="lemma6", ring=ring.name)
    started = time.perf_counter()
    n = opts.n

    if ring.name in LARGE_ELEMENTARY_RINGS and not opts.allow_large:
        report = _report(
            "lemma6", ring, n, a, b, {}, None, "skipped", started,
            detail=f"E({n},{ring.name}) is large; pass --allow-large to run",
        )
        _log_verdict(log, report)
        return report

    inner = _mixed(
        unrel_elementary(ring, n, a, opts.cap),
        unrel_elementary(ring, n, b, opts.cap),
        opts,
    )
    lhs = _mixed(inner.closure, elementary_group(ring, n, opts.cap), opts)
    _log_closure(log, "lhs", lhs.closure)
    sym = ideal_ops(ring, a, b)["AB+BA"]
    rhs = rel_elementary(ring, n, sym, opts.cap)
    _log_closure(log, "rhs", rhs)

    groups = {
        "[E(n,A),E(n,B)]": inner.closure,
        "lhs": lhs.closure,
        "E(n,R,AB+BA)": rhs,
    }
    detail = "; ".join(m.detail for m in (inner, lhs) if m.detail)
    report = _report(
        "lemma6",
        ring,
        n,
        a,
        b,
        groups,
        _compare(lhs.closure, rhs),
        lhs.method,
        started,
        detail,
    )
    _log_verdict(log, report)
    return report


def verify_containments(
    ring: FiniteRing,
    a: FiniteIdeal,
    opts: OracleOptions,
    logger: Any = None,
) -> OracleReport:
    """E(n,A) <= E(n,R,A) <= GL(n,R,A), the last by an entry test."""
    _require_degree(opts.n)
    log = (logger or structlog.get_logger()).bind(check="containments", ring=ring.name)
    started = time.perf_counter()
    n = opts.n

    plain = unrel_elementary(ring, n, a, opts.cap)
    relative = rel_elementary(ring, n, a, opts.cap)
    groups = {"E(n,A)": plain, "E(n,R,A)": relative}
    if plain.cap_exceeded or relative.cap_exceeded:
        holds: bool | None = None
        detail = "cap exceeded"
    else:
        first = plain.issubset(relative)
        second = bool(in_congruence_subgroup(ring, relative.elements(), a).all())
        holds = first and second
        detail = f"E(n,A)<=E(n,R,A): {first}; E(n,R,A)<=GL(n,R,A): {second}"
        if first and plain.order != relative.order:
            detail += " (strict)"
    report = _report(
        "containments", ring, n, a, None, groups, holds, "entry-test", started, detail
    )
    _log_verdict(log, report)
    return report


def run_checks(
    ring: FiniteRing,
    a: FiniteIdeal,
    b: FiniteIdeal,
    checks: Sequence[CheckName],
    opts: OracleOptions,
    logger: Any = None,
) -> list[OracleReport]:
    reports: list[OracleReport] = []
    for check in checks:
        if check == "theorem1":
            reports.append(verify_theorem1(ring, a, b, opts, logger))
        elif check == "theorem2":
            reports.append(verify_theorem2(ring, a, b, opts, logger))
        elif check == "lemma6":
            reports.append(verify_lemma6(ring, a, b, opts, logger))
        elif check == "containments":
            reports.append(verify_containments(ring, a, opts, logger))
        else:
            raise ValueError(f"unknown check {check!r}")
    return reports


def closure_is_group(closure: SubgroupClosure) -> bool:
    """Closed under products with its generators and under inverses.

    Raises:
        CapExceeded: for a partial enumeration
    """
    closure.require_complete()
    elements = closure.elements()
    if not closure.contains(batch_inverse(closure.ring, elements)).all():
        return False
    return all(
        closure.contains(batch_mul(closure.ring, elements, g)).all()
        for g in closure.generators
    )


def _log_closure(log: Any, name: str, closure: SubgroupClosure) -> None:
    log.info(
        "oracle.closure",
        group=name,
        order=closure.order,
        generators=len(closure.generators),
        cap_exceeded=closure.cap_exceeded,
    )


def _log_verdict(log: Any, report: OracleReport) -> None:
    log.info(
        "oracle.verdict",
        equal=report.equal,
        method=report.method,
        orders=report.orders,
        elapsed_ms=report.elapsed_ms,
    )
