"""Core constants for elemcomm.

This module defines constants used throughout the application:
- Defaults for the rewriting pipeline (degree, fixed pair, degree guard)
- Oracle limits (closure cap, pairwise-commutator budget)
- Builtin finite rings and their canonical ideals
"""

# ============================================================================
# Rewriting Defaults
# ============================================================================

#: Default matrix degree n
DEFAULT_DEGREE: int = 3

#: Smallest degree for which an auxiliary index h != i, j exists
MIN_DEGREE: int = 3

#: Position every second-type generator is transported to
DEFAULT_FIXED_PAIR: tuple[int, int] = (1, 2)

#: Largest monomial degree tolerated in any intermediate ring element
DEFAULT_MAX_DEGREE: int = 64

#: Largest matrix degree handled by the dense evaluator
MAX_MATRIX_DEGREE: int = 8

# ============================================================================
# Oracle Configuration
# ============================================================================

#: Default element cap for a single subgroup closure
DEFAULT_ORACLE_CAP: int = 20_000_000

#: Largest |H|*|K| for which every pairwise commutator is formed explicitly
DEFAULT_PAIR_BUDGET: int = 4_000_000

#: Largest ring order accepted by the oracle
MAX_RING_ORDER: int = 16

#: Rows of a frontier multiplied at once during closure
CLOSURE_BATCH: int = 262_144

# ============================================================================
# Builtin Rings
# ============================================================================

#: Builtin ring families accepted by ring_builtin
BUILTIN_RINGS: tuple[str, ...] = ("zmod", "dual", "t2f2")

#: Canonical (A, B) ideal generators used by the default oracle runs
DEFAULT_TEST_RINGS: dict[str, tuple[str, str]] = {
    "zmod:4": ("2", "2"),
    "zmod:6": ("2", "3"),
    "zmod:8": ("2", "2"),
    "dual:2": ("t", "t"),
    "t2f2": ("strict", "strict"),
}

#: Rings whose full E(3,R) is only attempted on explicit request
LARGE_ELEMENTARY_RINGS: tuple[str, ...] = ("t2f2",)

# ============================================================================
# CLI Exit Codes
# ============================================================================

EXIT_OK: int = 0
EXIT_FAILURE: int = 1
EXIT_USAGE: int = 2
EXIT_CAP: int = 3
