"""Option bundles and environment resolution for elemcomm.

Environment:
    ELEMCOMM_ORACLE_CAP: element cap for a single subgroup closure
    ELEMCOMM_MAX_DEGREE: monomial degree guard for the rewriting engine
"""

import os
from dataclasses import dataclass, field

from elemcomm.core.constants import (
    DEFAULT_DEGREE,
    DEFAULT_FIXED_PAIR,
    DEFAULT_MAX_DEGREE,
    DEFAULT_ORACLE_CAP,
    DEFAULT_PAIR_BUDGET,
)

__all__ = [
    "DecomposeOptions",
    "OracleOptions",
    "resolve_max_degree",
    "resolve_oracle_cap",
]


def _env_int(name: str) -> int | None:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def resolve_oracle_cap(cap: int | None = None) -> int:
    """Explicit value, then ELEMCOMM_ORACLE_CAP, then the default."""
    if cap is not None:
        return cap
    return _env_int("ELEMCOMM_ORACLE_CAP") or DEFAULT_ORACLE_CAP


def resolve_max_degree(limit: int | None = None) -> int:
    """Explicit value, then ELEMCOMM_MAX_DEGREE, then the default."""
    if limit is not None:
        return limit
    return _env_int("ELEMCOMM_MAX_DEGREE") or DEFAULT_MAX_DEGREE


@dataclass
class DecomposeOptions:
    """Options for the generator decomposition.

    Attributes:
        n: Matrix degree (at least 3)
        fixed_pair: Position every second-type generator ends up at
        max_degree: Monomial degree guard for intermediate ring elements
        check_steps: Check every certificate on its own words while reducing
    """

    n: int = DEFAULT_DEGREE
    fixed_pair: tuple[int, int] = DEFAULT_FIXED_PAIR
    max_degree: int = field(default_factory=resolve_max_degree)
    check_steps: bool = False


@dataclass
class OracleOptions:
    """Options for finite-ring verification runs.

    Attributes:
        n: Matrix degree
        cap: Element cap for a single closure
        pair_budget: Largest |H|*|K| for the all-pairs commutator route
        allow_large: Also run checks that need E(n,R) of large rings
        cross_check: Also form mixed commutators by normal closure and compare
    """

    n: int = DEFAULT_DEGREE
    cap: int = field(default_factory=resolve_oracle_cap)
    pair_budget: int = DEFAULT_PAIR_BUDGET
    allow_large: bool = False
    cross_check: bool = False
