"""
Typed models of every JSON document the CLI prints.

Documents are validated against these models before they are written, and
`schema_document` publishes the matching JSON Schema; the same documents are
committed under schemas/ (regenerate with `charvar-epoly schema --kind <kind>`).
"""

from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, RootModel

from .grpvar import SCHEMA_VERSION

SchemaTag = Literal["charvar-epoly/1"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class StratumModel(_Strict):
    id: str
    description: str
    epoly: str


class EulerModel(_Strict):
    chi_M: int
    chi_M_smooth: int
    chi_M_singular: int
    chi_M_abelian: int | None = None
    chi_M_abelian_claimed: int | None = None
    abelian_discrepancy: bool | None = None
    note: str | None = None


class StrataReportModel(_Strict):
    schema_: SchemaTag = Field(SCHEMA_VERSION, alias="schema")
    group: Literal["SL2", "PGL2", "SL3", "PGL3"]
    r: int = Field(ge=1)
    strata: list[StratumModel]
    aggregates: dict[str, str]
    euler: EulerModel | None = None
    flags: dict[str, bool]


class PolynomialResultModel(_Strict):
    schema_: SchemaTag = Field(SCHEMA_VERSION, alias="schema")
    group: Literal["SL2", "PGL2", "SL3", "PGL3"]
    r: int = Field(ge=1)
    epoly: str


class WitnessModel(_Strict):
    tuple_: list[str] = Field(alias="tuple")
    counted: bool
    recomputed: bool


class DiagnosticModel(_Strict):
    expected: int
    counted: int
    difference: int
    witness: WitnessModel | None = None


class CountReportModel(_Strict):
    schema_: SchemaTag = Field(SCHEMA_VERSION, alias="schema")
    kind: Literal["count"]
    n: Literal[2, 3]
    q: int
    r: int = Field(ge=1)
    predicate: str
    count: int = Field(ge=0)
    poly: str
    expected: int
    matched: bool
    seconds: float = Field(ge=0)
    diagnostic: DiagnosticModel | None = None


class SymbolicCheckModel(_Strict):
    schema_: SchemaTag = Field(SCHEMA_VERSION, alias="schema")
    kind: Literal["symbolic"]
    name: str
    r: int | None = None
    passed: bool
    detail: str | None = None


VerifyEntry = Annotated[Union[CountReportModel, SymbolicCheckModel], Field(discriminator="kind")]


class VerifyReportModel(RootModel[list[VerifyEntry]]):
    pass


_KINDS = {
    "compute": PolynomialResultModel,
    "strata": StrataReportModel,
    "verify": VerifyReportModel,
}


def schema_document(kind: str) -> dict:
    if kind not in _KINDS:
        raise KeyError(f"unknown document kind {kind!r}; expected one of {sorted(_KINDS)}")
    return _KINDS[kind].model_json_schema(by_alias=True)


def validated(kind: str, payload) -> dict | list:
    """Round-trip payload through its model; raises pydantic.ValidationError."""
    model = _KINDS[kind].model_validate(payload)
    return model.model_dump(mode="json", by_alias=True)
