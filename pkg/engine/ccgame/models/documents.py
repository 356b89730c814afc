# JSON documents read and written by the engine, validated with pydantic
from __future__ import annotations

from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator


class MatrixDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m: int = Field(ge=1)
    n: int = Field(ge=1)
    alphabet: int = Field(ge=1)
    rows: list[list[int]]

    @model_validator(mode="after")
    def check_shape(self) -> "MatrixDocument":
        if len(self.rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(self.rows)}")
        for row in self.rows:
            if len(row) != self.n:
                raise ValueError(f"expected {self.n} columns, got a row of {len(row)}")
        return self


class SelectionDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    R: list[int]
    C: list[int]
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    p: int = Field(ge=1)


class WitnessDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rows: list[int]
    cols: list[int]


class LeafDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    node: Literal["leaf"]
    value: int


class InternalDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    node: Literal["internal"]
    player: Literal["row", "col"]
    left: list[int]
    children: list[ProtocolDocument] = Field(min_length=2, max_length=2)


ProtocolDocument = Annotated[Union[LeafDocument, InternalDocument], Field(discriminator="node")]
InternalDocument.model_rebuild()
protocol_adapter: TypeAdapter = TypeAdapter(ProtocolDocument)


class Violation(BaseModel):
    instance: str
    lhs: Union[int, float, str, None]
    rhs: Union[int, float, str, None]


class LemmaReport(BaseModel):
    lemma: str
    grid: dict[str, Any]
    instances: int
    violations: list[Violation] = Field(default_factory=list)
    status: Literal["pass", "fail"] = "pass"
    seed: int = 0
    # instances whose hypothesis fails, counted apart from passes
    vacuous: int = 0
    notes: list[str] = Field(default_factory=list)
    values: dict[str, Union[int, float, str]] = Field(default_factory=dict)
    wall_time: float = Field(default=0.0, exclude=True)

    @model_validator(mode="after")
    def status_follows_violations(self) -> "LemmaReport":
        if (self.status == "pass") != (not self.violations):
            raise ValueError("status must be 'pass' exactly when there are no violations")
        return self

    @classmethod
    def build(cls, lemma: str, grid: dict[str, Any], instances: int, violations: list[Violation], **extra) -> "LemmaReport":
        ordered = sorted(violations, key=lambda v: v.instance)
        return cls(
            lemma=lemma,
            grid=grid,
            instances=instances,
            violations=ordered,
            status="fail" if ordered else "pass",
            **extra,
        )


class MergedReport(BaseModel):
    reports: dict[str, LemmaReport]
    status: Literal["pass", "fail"]


class ErrorDocument(BaseModel):
    error: str
    message: str


class SolveDocument(BaseModel):
    m: int
    n: int
    method: Literal["exact", "greedy"]
    depth: Optional[int]
    lower_bound: int
    budget: Optional[int] = None
    nodes: int = 0
    protocol: Optional[dict[str, Any]] = None


class SubgameDocument(BaseModel):
    subgame: bool
    witness: Optional[WitnessDocument] = None
