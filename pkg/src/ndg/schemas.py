"""Pydantic request/response models for the HTTP service.

Every JSON report carries a top-level ``"schema": 1`` version field
(modeled as ``schema_version`` with a serialization alias, since ``schema``
shadows a BaseModel attribute).
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator

__all__ = [
    "SpecPayload",
    "SampleRequest",
    "SampleResponse",
    "EstimateRequest",
    "EstimateResponse",
    "GridModel",
    "WitnessModel",
    "SupportRequest",
    "SupportResponse",
    "McRequest",
    "McResponse",
    "CurveRequest",
    "CurvePointModel",
    "CurveResponse",
    "HealthResponse",
]


class SpecPayload(BaseModel):
    """A distribution spec: either a builtin name (+ params) or inline components."""

    name: str | None = None
    params: dict[str, Any] | None = None
    components: list[dict[str, Any]] | None = None

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "SpecPayload":
        if (self.name is None) == (self.components is None):
            raise ValueError("provide exactly one of 'name' or 'components'")
        if self.components is not None and self.params is not None:
            raise ValueError("'params' applies only to named specs")
        return self


class _Report(BaseModel):
    schema_version: int = Field(default=1, serialization_alias="schema")


class SampleRequest(BaseModel):
    spec: SpecPayload
    n: int = Field(ge=2)
    seed: int = 0


class SampleResponse(_Report):
    n: int
    seed: int
    xs: list[float]
    ys: list[float]
    ties_in_x: bool
    ties_in_y: bool


class EstimateRequest(BaseModel):
    xs: list[float]
    ys: list[float]
    tie_policy: Literal["strict", "midrank"] = "midrank"
    threshold: float = Field(default=0.02, gt=0)
    grid_size: int | None = Field(default=None, ge=2, le=500)


class GridModel(BaseModel):
    xs: list[float]
    ys: list[float]
    d_tau: list[list[float]]  # d_tau[i][j] at (xs[i], ys[j])


class EstimateResponse(_Report):
    n: int
    tie_policy: str
    threshold: float
    tau_hat: float
    rho_hat: float
    sigma2_tau: float
    sigma2_rho: float
    d_tau_min: float
    d_tau_max: float
    d_rho_min: float
    d_rho_max: float
    classification_tau: Literal["degenerate", "nondegenerate"]
    classification_rho: Literal["degenerate", "nondegenerate"]
    grid: GridModel | None = None


class WitnessModel(BaseModel):
    x1: int
    x2: int
    y1: int
    y2: int
    interior: tuple[int, int]


class SupportRequest(BaseModel):
    spec: SpecPayload
    resolution: float = Field(gt=0)
    cell: float = Field(gt=0)
    origin: tuple[float, float] = (0.0, 0.0)


class SupportResponse(_Report):
    resolution: float
    cell: float
    origin: tuple[float, float]
    n_support_points: int
    n_snapped_cells: int
    witness: WitnessModel | None
    bbox: tuple[float, float, float, float]
    occupied_fraction: float | None


class McRequest(BaseModel):
    spec: SpecPayload
    n: int = Field(ge=2)
    reps: int = Field(ge=2)
    seed: int = 0


class McResponse(_Report):
    n: int
    reps: int
    seed: int
    scaled_var_tau: float
    scaled_var_rho: float
    mean_sigma2_tau: float
    mean_sigma2_rho: float


class CurveRequest(BaseModel):
    spec: SpecPayload
    n_list: list[int] = Field(min_length=3)
    reps: int = Field(ge=2)
    seed: int = 0


class CurvePointModel(BaseModel):
    n: int
    scaled_var_tau: float
    scaled_var_rho: float


class CurveResponse(_Report):
    reps: int
    seed: int
    points: list[CurvePointModel]
    slope_tau: float
    slope_rho: float


class HealthResponse(BaseModel):
    status: str
    name: str
    version: str
