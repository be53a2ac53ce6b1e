"""Pydantic schemas for documents elemcomm reads and writes.

- RingSpec: a finite ring given by Cayley tables (ring spec JSON files)
- TraceDocument: a decomposition trace with its verdict (decompose --trace)
- OracleReport: the outcome of one finite-ring verification check
- IdentityReport: the outcome of one identity in the verification suite

All schemas use Pydantic v2 for validation and serialization.
"""

from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

TRACE_SCHEMA_VERSION = 1


class RingSpec(BaseModel):
    """Finite ring described by element labels and Cayley tables.

    Attributes:
        name: Display name
        elements: Element labels; table entries index into this list
        add: Addition table
        mul: Multiplication table
        one: Index of the multiplicative unit
        ideals: Named ideals as lists of member indices
    """

    name: str
    elements: list[str] = Field(min_length=1)
    add: list[list[int]]
    mul: list[list[int]]
    one: int = Field(ge=0)
    ideals: dict[str, list[int]] = Field(default_factory=dict)

    @field_validator("elements")
    @classmethod
    def unique_labels(cls, v: list[str]) -> list[str]:
        if len(set(v)) != len(v):
            raise ValueError("element labels must be unique")
        return v

    @model_validator(mode="after")
    def square_tables(self) -> "RingSpec":
        k = len(self.elements)
        for name, table in (("add", self.add), ("mul", self.mul)):
            if len(table) != k or any(len(row) != k for row in table):
                raise ValueError(f"{name} table must be {k}x{k}")
            if any(not 0 <= v < k for row in table for v in row):
                raise ValueError(f"{name} table entries must lie in 0..{k - 1}")
        if self.one >= k:
            raise ValueError("one must index an element")
        return self


# ============================================================================
# Decomposition traces
# ============================================================================


class SecondTypeEntry(BaseModel):
    """Second-type generator ``[t_kl(a), t_lk(b)]``."""

    position: tuple[int, int]
    a: str
    b: str


class ResidualEntry(BaseModel):
    """Residual record ``^conjugator z_ij(p, c)``; an empty conjugator is e."""

    i: int
    j: int
    p: str
    c: str
    conjugator: str = ""
    in_level: bool = True


class TraceStepEntry(BaseModel):
    """One rewrite step; words use the DSL syntax."""

    rule: str
    before: str
    after: str


class TraceDocument(BaseModel):
    """Self-contained record of one decomposition run.

    ``input`` holds one generator term per entry; ``check-trace`` rebuilds
    every word from this document alone.
    """

    schema_version: int = TRACE_SCHEMA_VERSION
    n: int = Field(ge=3)
    fixed_pair: tuple[int, int]
    input: list[str]
    second_type: list[SecondTypeEntry] = Field(default_factory=list)
    residual: list[ResidualEntry] = Field(default_factory=list)
    steps: list[TraceStepEntry] = Field(default_factory=list)
    verdict: Literal["pass", "fail"]


# ============================================================================
# Reports
# ============================================================================


class OracleReport(BaseModel):
    """Outcome of a finite-ring check.

    ``equal`` is None when a closure hit the cap before the comparison could
    be made.
    """

    check: Literal["theorem1", "theorem2", "lemma6", "containments"]
    ring: str
    n: int
    ideal_a: str
    ideal_b: str
    orders: dict[str, int] = Field(default_factory=dict)
    equal: bool | None = None
    method: str = ""
    cap_exceeded: bool = False
    elapsed_ms: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.equal is True and not self.cap_exceeded


class IdentityReport(BaseModel):
    """Outcome of one identity of the verification suite."""

    name: str
    passed: bool
    worlds: list[str] = Field(default_factory=list)
    detail: str = ""
    elapsed_ms: int = 0
