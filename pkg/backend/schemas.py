"""
Serializable report and cache documents.

Counts can outgrow any native integer width, so BigInt fields travel as
decimal strings in JSON and are parsed back from either form.
"""

from enum import Enum
from typing import Annotated, Any, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

from backend.config import SCHEMA_VERSION


def _parse_decimal(value: Any) -> Any:
    if isinstance(value, str):
        return int(value.strip())
    return value


BigInt = Annotated[
    int,
    BeforeValidator(_parse_decimal),
    PlainSerializer(lambda v: str(v), return_type=str, when_used="json"),
]


class Relation(str, Enum):
    STRICT_GREATER = "StrictGreater"
    EQUAL = "Equal"
    STRICT_LESS = "StrictLess"


class MapVariant(str, Enum):
    AS_WRITTEN = "as-written"
    COLOR_PRESERVING = "color-preserving"


class OutputFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


class MaxMode(str, Enum):
    BRUTE_FORCE = "brute-force"
    CLOSED_FORM = "closed-form"


# ── Scans ──────────────────────────────────────────────────────────────────────

class ComparisonOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    relation: Relation
    lhs: BigInt
    rhs: BigInt

    @classmethod
    def compare(cls, lhs: int, rhs: int) -> "ComparisonOutcome":
        if lhs > rhs:
            relation = Relation.STRICT_GREATER
        elif lhs == rhs:
            relation = Relation.EQUAL
        else:
            relation = Relation.STRICT_LESS
        return cls(relation=relation, lhs=lhs, rhs=rhs)


class ScanEntry(BaseModel):
    params: dict[str, int]
    outcome: ComparisonOutcome

    def key(self, order: list) -> tuple:
        return tuple(self.params[name] for name in order)


class RelationMismatch(BaseModel):
    """A claimed exception found with a different relation than claimed."""

    params: dict[str, int]
    claimed: Relation
    found: Relation


class ScanReport(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    scan: str
    statement: str
    param_order: list[str]
    ranges: dict[str, list[int]]
    exceptions: list[ScanEntry] = []
    ties: list[ScanEntry] = []
    appendix: list[ScanEntry] = []
    total_checked: int = 0
    claimed: Optional[list[dict[str, int]]] = None
    unlisted: list[dict[str, int]] = []
    unconfirmed: list[dict[str, int]] = []
    relation_mismatches: list[RelationMismatch] = []

    model_config = ConfigDict(populate_by_name=True)

    def exception_params(self) -> list:
        return [entry.key(self.param_order) for entry in self.exceptions]

    @property
    def has_discrepancy(self) -> bool:
        return bool(self.unlisted or self.unconfirmed or self.relation_mismatches)


# ── Maxima ─────────────────────────────────────────────────────────────────────

class MaxResult(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    k: int
    n: int
    mode: MaxMode
    value: BigInt
    maximizers: list[list[int]]

    model_config = ConfigDict(populate_by_name=True)


# ── Audits ─────────────────────────────────────────────────────────────────────

class MappedPair(BaseModel):
    """An input partition and its image pair, in textual form."""

    source: str
    mu: str
    nu: str


class Collision(BaseModel):
    first: str
    second: str
    mu: str
    nu: str


class CodomainPair(BaseModel):
    mu: str
    nu: str


class AuditReport(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    map: str
    k: int
    parameters: dict[str, int]
    variant: Optional[MapVariant] = None
    domain: str
    codomain: str
    domain_size: BigInt
    codomain_size: BigInt
    codomain_violations: list[MappedPair] = []
    collisions: list[Collision] = []
    unhit_count: BigInt = 0
    unhit_codomain_examples: list[CodomainPair] = []
    injective: bool
    surjective: bool

    model_config = ConfigDict(populate_by_name=True)


# ── Count tables ───────────────────────────────────────────────────────────────

class ProfileModel(BaseModel):
    forbidden_units: list[int] = []
    required_units: list[int] = []


class CountCache(BaseModel):
    schema_: int = Field(alias="schema")
    k: int
    profile: ProfileModel = ProfileModel()
    counts: list[BigInt]

    model_config = ConfigDict(populate_by_name=True)


class CountRow(BaseModel):
    k: int
    values: list[BigInt]


class CountGrid(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    k_range: list[int]
    n_range: list[int]
    rows: list[CountRow]

    model_config = ConfigDict(populate_by_name=True)


class CountResult(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    k: int
    n: int
    condition: str
    count: BigInt

    model_config = ConfigDict(populate_by_name=True)


class VerifyResult(BaseModel):
    schema_: int = Field(default=SCHEMA_VERSION, alias="schema")
    check: str
    parameters: dict[str, int]
    holds: bool
    failures: list[dict[str, int]] = []

    model_config = ConfigDict(populate_by_name=True)


# ── --expect documents ─────────────────────────────────────────────────────────

class Expectation(BaseModel):
    """
    Expected results for one command. Only the fields present are compared:
    exceptions for scans; injective, surjective and the sizes for audits;
    value and maximizers for max; holds for verify.
    """

    exceptions: Optional[list[dict[str, int]]] = None
    injective: Optional[bool] = None
    surjective: Optional[bool] = None
    domain_size: Optional[BigInt] = None
    codomain_size: Optional[BigInt] = None
    unhit_count: Optional[BigInt] = None
    value: Optional[BigInt] = None
    maximizers: Optional[list[list[int]]] = None
    holds: Optional[bool] = None

    model_config = ConfigDict(extra="forbid")

    def present(self, keys: tuple) -> dict:
        data = self.model_dump(exclude_none=True)
        return {key: data[key] for key in keys if key in data}
