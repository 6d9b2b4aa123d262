from __future__ import annotations
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .domain import ClauseStatus, LawMode, Provenance, Semantics, WfStatus


# -- dilator spec files ------------------------------------------------------

class ConstExpr(BaseModel):
    op: Literal["const"]
    value: str


class IdentityExpr(BaseModel):
    op: Literal["identity"]


class SumExpr(BaseModel):
    op: Literal["sum"]
    args: List["CombinatorExpr"] = Field(min_length=2, max_length=2)


class SigmaExpr(BaseModel):
    op: Literal["sigma"]
    args: List["CombinatorExpr"] = Field(min_length=1, max_length=1)


CombinatorExpr = Annotated[
    Union[ConstExpr, IdentityExpr, SumExpr, SigmaExpr], Field(discriminator="op")
]

SumExpr.model_rebuild()
SigmaExpr.model_rebuild()


class TableSpec(BaseModel):
    """A finite table: ``cofaces`` keyed ``"n,i"``, ``supports`` keyed ``"n,sigma"``, ``mu`` keyed ``"n"``."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["table"]
    name: Optional[str] = None
    bound: int = Field(ge=0)
    values: List[str]
    cofaces: Dict[str, List[str]]
    supports: Dict[str, List[int]]
    mu: Optional[Dict[str, List[str]]] = None


class CombinatorSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["combinator"]
    expr: CombinatorExpr


DilatorSpec = Annotated[Union[TableSpec, CombinatorSpec], Field(discriminator="kind")]


# -- reports -----------------------------------------------------------------

class LawResult(BaseModel):
    law: str
    mode: LawMode
    checked: int
    passed: bool
    counterexample: Optional[Dict[str, Any]] = None


class LawReport(BaseModel):
    subject: str
    bound: int
    laws: List[LawResult]

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def failures(self) -> List[LawResult]:
        return [law for law in self.laws if not law.passed]


class ClauseResult(BaseModel):
    clause: str
    requested: int
    instances: int
    passed: int
    status: ClauseStatus
    counterexample: Optional[Dict[str, Any]] = None


class FundamentalReport(BaseModel):
    dilator: str
    seed: int
    clauses: List[ClauseResult]

    @property
    def passed(self) -> bool:
        return all(c.status is not ClauseStatus.failed for c in self.clauses)


class CollapseViolation(BaseModel):
    condition: Literal["a", "b", "range"]
    pair: List[str]
    lhs: str
    rhs: str


class CollapseReport(BaseModel):
    dilator: str
    alpha: str
    provenance: Provenance
    entries: int
    skipped: int = 0  # terms with no recorded witness
    violations: List[CollapseViolation] = []

    @property
    def valid(self) -> bool:
        return not self.violations


class MinimalityViolation(BaseModel):
    term: str
    recorded: str
    smaller: str


class WfReport(BaseModel):
    dilator: str
    base: str
    budget: int
    status: WfStatus
    term: Optional[str] = None
    embedding: Optional[str] = None
    chain: List[str] = []


class TableHeader(BaseModel):
    """What a relation table was computed from; echoed into every exported table."""

    dilator: str
    semantics: Semantics
    universe: List[str]
    padding: int = 0
