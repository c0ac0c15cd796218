"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

DEFAULT_DELTA_LIST = (1e-1, 5e-2, 2.5e-2, 1.25e-2)


class ChannelParamsModel(BaseModel):
    a: float
    b: float
    p1: float
    p2: float
    sigma2: float = 1.0


class SearchOptions(BaseModel):
    coarse: int = Field(default=64, ge=2)
    refine_rounds: int = Field(default=8, ge=0)


class RegionRequest(BaseModel):
    params: ChannelParamsModel
    mu_grid: Optional[List[float]] = None
    options: SearchOptions = SearchOptions()


class TimeSharingModel(BaseModel):
    labels: Tuple[str, str, str]
    corner_a: Tuple[float, float, float]
    corner_b: Tuple[float, float, float]
    lam: float


class RegionPointModel(BaseModel):
    mu: float
    r1: float
    r2: float
    r_u1: float
    r_v1: float
    r_u2: float
    r_v2: float
    pv1: float
    pv2: float
    dominant: str
    tight: List[str]
    objective: float
    time_sharing: Optional[TimeSharingModel]


class AllPrivatePointModel(BaseModel):
    mu: float
    q1: float
    q2: float
    r1: float
    r2: float
    objective: float


class ComparisonRowModel(BaseModel):
    mu: float
    all_private: float
    full_hk: float
    gap: float
    agree: bool


class RegionResponse(BaseModel):
    points: List[RegionPointModel]
    all_private: List[AllPrivatePointModel]
    comparison: List[ComparisonRowModel]


class SaturationRequest(BaseModel):
    params: ChannelParamsModel
    mu_grid: Optional[List[float]] = None
    options: SearchOptions = SearchOptions()


class SaturationRowModel(BaseModel):
    mu: float
    p_hat_1: float
    p_hat_2: float
    r_sat_1: float
    r_sat_2: float
    residual: float
    tolerance: float
    ok: bool


class SaturationResponse(BaseModel):
    rows: List[SaturationRowModel]
    all_ok: bool


class LayersRequest(BaseModel):
    params: ChannelParamsModel
    pv1: Optional[float] = None      # defaults to half the budget
    pv2: Optional[float] = None
    delta_list: List[float] = Field(default_factory=lambda: list(DEFAULT_DELTA_LIST))


class LayersRowModel(BaseModel):
    delta: float
    r_u1: float
    r_v1: float
    r_u2: float
    r_v2: float
    dummy_y1: float
    dummy_y2: float
    max_abs_error: float


class LayersResponse(BaseModel):
    rows: List[LayersRowModel]
    closed_form: Dict[str, float]


class ValidateRequest(BaseModel):
    seed: int = 0
    inject_fault: bool = False


class CheckResultModel(BaseModel):
    name: str
    passed: bool
    detail: str


class ValidateResponse(BaseModel):
    results: List[CheckResultModel]
    report: str
    all_passed: bool
