"""Pydantic request/response models for the HTTP service.

The wire format for designs mirrors the design-file format: same keys,
"lambda" spelled out, matrices as [re, im] integer pairs, partition
1-based.  Server-side deep validation happens in designio, so these models
only pin down shapes and primitive types.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field


class DesignDocument(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    nt: int
    lam: int = Field(alias="lambda")
    g: int
    matrices: list[list[list[tuple[int, int]]]]
    partition: list[list[int]]
    meta: dict[str, Any] = Field(default_factory=dict)

    def to_plain(self) -> dict:
        """JSON-ready dict using the on-disk key spelling."""
        doc = self.model_dump(by_alias=True)
        doc["matrices"] = [
            [[list(pair) for pair in row] for row in mat] for mat in doc["matrices"]
        ]
        return doc


class ConstructRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    method: Literal["blockdiag", "tensor", "abba"]
    g: int | None = None
    lam: int = Field(alias="lambda")
    delta_style: Literal["diagonal", "regular"] = "diagonal"
    slot: Literal["scalar", "alamouti"] = "alamouti"


class ConstructResponse(BaseModel):
    design: DesignDocument
    nt: int
    k: int
    rate: str
    max_rate: str


class CheckModel(BaseModel):
    name: str
    passed: bool
    witness: str | None = None
    witnesses: list[str] = Field(default_factory=list)


class ReportResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]


class VerifyRequest(BaseModel):
    design: DesignDocument
    partition: list[list[int]] | None = None  # 1-based, like the file format
    verbose: bool = False


class VerifyResponse(ReportResponse):
    rate: str
    max_rate: str


class RateRow(BaseModel):
    g: int
    max_rate: str
    min_nt: dict[str, int]  # keyed by lambda as a string


class RateTableResponse(BaseModel):
    rows: list[RateRow]


class SimulateRequest(BaseModel):
    design: DesignDocument
    partition: list[list[int]] | None = None  # 1-based
    snr_db: list[float]
    trials: int = Field(default=1000, ge=1)
    seed: int = 0
    points_per_group: int = Field(default=4, ge=2)
    rotation: float | None = None
    nr: int = Field(default=1, ge=1)


class SimulatePoint(BaseModel):
    snr_db: float
    ser: float
    agreement: float
    trials: int


class SimulateResponse(BaseModel):
    rows: list[SimulatePoint]


class GroupCheckResponse(ReportResponse):
    n: int
    a: int
    order: int


class ServiceInfo(BaseModel):
    name: str
    version: str
    endpoints: list[str]
