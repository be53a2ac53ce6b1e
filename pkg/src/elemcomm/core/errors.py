"""Custom exceptions for elemcomm.

This module defines typed exceptions used throughout the rewriting engine,
the finite-ring oracle and the CLI. Every exception converts to a dictionary
for JSON reports.
"""

from typing import Any


class ElemCommError(Exception):
    """Base exception for all elemcomm errors.

    All custom exceptions inherit from this base class so the CLI can map
    them onto exit codes in one place.
    """

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary for JSON reports."""
        return {"error": type(self).__name__, "message": str(self)}


class DegreeMismatch(ElemCommError):
    """Raised when two group words of different degree are combined.

    Attributes:
        left: Degree of the first operand
        right: Degree of the second operand
    """

    def __init__(self, left: int, right: int) -> None:
        self.left = left
        self.right = right
        super().__init__(f"Degree mismatch: {left} vs {right}")

    def to_dict(self) -> dict[str, Any]:
        return {"error": "degree_mismatch", "left": self.left, "right": self.right}

    def __repr__(self) -> str:
        return f"DegreeMismatch(left={self.left}, right={self.right})"


class InvalidPosition(ElemCommError):
    """Raised for a transvection position outside 1..n or on the diagonal.

    Attributes:
        i: Row index
        j: Column index
        n: Matrix degree
    """

    def __init__(self, i: int, j: int, n: int) -> None:
        self.i = i
        self.j = j
        self.n = n

        if i == j:
            message = f"Position ({i},{j}) lies on the diagonal"
        else:
            message = f"Position ({i},{j}) is outside 1..{n}"
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        return {"error": "invalid_position", "i": self.i, "j": self.j, "n": self.n}

    def __repr__(self) -> str:
        return f"InvalidPosition(i={self.i}, j={self.j}, n={self.n})"


class OppositePositions(ElemCommError):
    """Raised by steinberg_comm for transvections at (i,j) and (j,i).

    That configuration has no closed Steinberg form: the commutator must be
    kept as an elementary commutator (second-type generator).

    Attributes:
        first: Position of the first transvection
        second: Position of the second transvection
    """

    def __init__(self, first: tuple[int, int], second: tuple[int, int]) -> None:
        self.first = first
        self.second = second
        super().__init__(
            f"Transvections at {first} and {second} sit at opposite positions"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": "opposite_positions",
            "first": list(self.first),
            "second": list(self.second),
        }


class DegreeTooSmall(ElemCommError):
    """Raised when an auxiliary index h != i, j is needed but n < 3."""

    def __init__(self, n: int, required: int = 3) -> None:
        self.n = n
        self.required = required
        super().__init__(f"Degree {n} is too small (need n >= {required})")

    def to_dict(self) -> dict[str, Any]:
        return {"error": "degree_too_small", "n": self.n, "required": self.required}


class SortViolation(ElemCommError):
    """Raised when a parameter does not lie in the ideal its role requires.

    Attributes:
        role: Parameter role (e.g. 'a', 'b', 'residual')
        expected: Printed ideal pattern the parameter should belong to
        value: Printed offending ring element
    """

    def __init__(self, role: str, expected: str, value: str) -> None:
        self.role = role
        self.expected = expected
        self.value = value
        super().__init__(f"Parameter {role}={value} does not lie in {expected}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": "sort_violation",
            "role": self.role,
            "expected": self.expected,
            "value": self.value,
        }

    def __repr__(self) -> str:
        return (
            f"SortViolation(role={self.role!r}, expected={self.expected!r}, "
            f"value={self.value!r})"
        )


class HypothesisViolation(ElemCommError):
    """Raised when the parameter congruence of bullets 5/6 fails."""

    def __init__(self, bullet: int, difference: str, pattern: str) -> None:
        self.bullet = bullet
        self.difference = difference
        self.pattern = pattern
        super().__init__(
            f"Bullet {bullet}: difference {difference} does not lie in {pattern}"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": "hypothesis_violation",
            "bullet": self.bullet,
            "difference": self.difference,
            "pattern": self.pattern,
        }


class DegreeGuardExceeded(ElemCommError):
    """Raised when a ring element exceeds the monomial degree guard."""

    def __init__(self, degree: int, limit: int) -> None:
        self.degree = degree
        self.limit = limit
        super().__init__(
            f"Monomial degree {degree} exceeds the guard of {limit} "
            "(raise --max-degree or shrink the input)"
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": "degree_guard_exceeded",
            "degree": self.degree,
            "limit": self.limit,
        }


class RingValidationError(ElemCommError):
    """Raised when ring tables or ideal subsets fail validation.

    Attributes:
        reason: Which law failed (e.g. 'associativity')
        witness: Element indices exhibiting the failure
    """

    def __init__(self, reason: str, witness: tuple[int, ...] = ()) -> None:
        self.reason = reason
        self.witness = witness

        message = f"Ring validation failed: {reason}"
        if witness:
            message += f" (witness {witness})"
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": "ring_validation",
            "reason": self.reason,
            "witness": list(self.witness),
        }


class UnknownRing(ElemCommError):
    """Raised for a builtin ring name that is not recognised."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Unknown builtin ring '{name}'")

    def to_dict(self) -> dict[str, Any]:
        return {"error": "unknown_ring", "name": self.name}


class CapExceeded(ElemCommError):
    """Raised when a complete closure is required but the cap was hit."""

    def __init__(self, cap: int, reached: int) -> None:
        self.cap = cap
        self.reached = reached
        super().__init__(f"Closure cap {cap} exceeded ({reached} elements)")

    def to_dict(self) -> dict[str, Any]:
        return {"error": "cap_exceeded", "cap": self.cap, "reached": self.reached}


class StepCheckFailed(ElemCommError):
    """Raised when a local rewrite fails its exact check.

    Attributes:
        rule: Name of the rewrite that failed
        term: 0-based index of the input term being reduced
    """

    def __init__(self, rule: str, term: int) -> None:
        self.rule = rule
        self.term = term
        super().__init__(f"Rewrite '{rule}' does not hold for term {term}")

    def to_dict(self) -> dict[str, Any]:
        return {"error": "step_check_failed", "rule": self.rule, "term": self.term}


class DslSyntaxError(ElemCommError):
    """Raised when word DSL text cannot be parsed.

    Attributes:
        line: 1-based line of the offending token (0 when unknown)
        column: 1-based column of the offending token (0 when unknown)
    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line = line
        self.column = column
        self.detail = message

        if line:
            message = f"{message} at line {line}, column {column}"
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": "syntax_error",
            "message": self.detail,
            "line": self.line,
            "column": self.column,
        }

    def __repr__(self) -> str:
        return (
            f"DslSyntaxError(message={self.detail!r}, line={self.line}, "
            f"column={self.column})"
        )
