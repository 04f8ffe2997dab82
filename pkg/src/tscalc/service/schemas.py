"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator


class ComponentSpec(BaseModel):
    interval: Optional[list[float | str]] = None
    point: Optional[float] = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.interval is None) == (self.point is None):
            raise ValueError("component needs exactly one of 'interval' or 'point'")
        if self.interval is not None and len(self.interval) != 2:
            raise ValueError("interval needs exactly two endpoints")
        return self


class ScaleSpec(BaseModel):
    """Either a builtin family name with parameters or inline components."""

    builtin: Optional[str] = None
    params: dict[str, Any] = Field(default_factory=dict)
    components: Optional[list[ComponentSpec]] = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.builtin is None) == (self.components is None):
            raise ValueError("give exactly one of 'builtin' or 'components'")
        return self


class EvalRequest(BaseModel):
    scale: ScaleSpec
    points: list[float]


class PointReport(BaseModel):
    t: float
    sigma: float
    rho: float
    mu: float
    right: str
    left: str
    label: str
    in_scale: bool


class EvalResponse(BaseModel):
    schema_version: int = Field(default=1, alias="schema")
    results: list[PointReport]

    model_config = {"populate_by_name": True}


class DiffRequest(BaseModel):
    scale: ScaleSpec
    fn: str
    at: float
    tol_limit: Optional[float] = Field(default=None, gt=0)


class DerivativeReport(BaseModel):
    value: float
    converged: bool
    iterations: int
    last_delta: float


class DiffResponse(BaseModel):
    schema_version: int = Field(default=1, alias="schema")
    at: float
    hilger: DerivativeReport
    radon_nikodym: DerivativeReport
    deviation: float
    agree: bool

    model_config = {"populate_by_name": True}


class IntegrateRequest(BaseModel):
    scale: ScaleSpec
    fn: str
    window: list[float]
    tol_quad: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _window(self):
        if len(self.window) != 2:
            raise ValueError("window needs exactly two endpoints")
        return self


class IntegrateResponse(BaseModel):
    schema_version: int = Field(default=1, alias="schema")
    window: list[float]
    decomposition: float
    through_backward_jump: float
    deviation: float

    model_config = {"populate_by_name": True}


class MeasureRequest(BaseModel):
    scale: ScaleSpec
    borel_set: dict


class MeasureResponse(BaseModel):
    schema_version: int = Field(default=1, alias="schema")
    distribution_value: float
    image_value: float
    deviation: float

    model_config = {"populate_by_name": True}


class VerifyRequest(BaseModel):
    suite: str
    scale: Optional[ScaleSpec] = None
    params: dict[str, Any] = Field(default_factory=dict)
    seed: int = 42
    tol_limit: Optional[float] = Field(default=None, gt=0)
    tol_quad: Optional[float] = Field(default=None, gt=0)


class ErrorBody(BaseModel):
    error: str
    message: str
