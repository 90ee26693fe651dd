"""Pydantic request/response models for the HTTP surface."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field

# user-facing scheme aliases -> internal kinds
SCHEME_ALIASES = {
    "three-phase": "three-phase-oob",
    "two-reverse": "three-phase-oob-two-reverse",
    "inband": "two-phase-inband",
    "three-phase-oob": "three-phase-oob",
    "three-phase-oob-two-reverse": "three-phase-oob-two-reverse",
    "two-phase-inband": "two-phase-inband",
    "two-phase-inband-mimo": "two-phase-inband",
}


class FeasibilityRequest(BaseModel):
    scheme: str = "three-phase"
    constraint: str = Field("alignment", pattern="^(alignment|neutralization)$")
    K: int = Field(..., ge=2)
    M: int = Field(1, ge=1)
    mode: str = Field("oob", pattern="^(oob|ib)$")
    reciprocal: bool = True
    family: Optional[str] = None
    trials: int = Field(5, ge=1)
    backend: str = Field("fp", pattern="^(fp|qi)$")
    seed: int
    budget_reductions: int = Field(1_000_000, ge=1)
    budget_seconds: float = Field(600.0, gt=0)
    jobs: int = Field(1, ge=1)
    channel: Optional[dict] = None
    dump_system: bool = False


class VerdictModel(BaseModel):
    outcome: str
    backend: str
    method: str
    reductions: int
    prime: Optional[int] = None
    basis_size: Optional[int] = None
    witness: Optional[dict] = None


class FeasibilityResponse(BaseModel):
    scheme: str
    constraint: str
    K: int
    M: int
    mode: str
    reciprocal: bool
    backend: str
    family: Optional[str]
    trials: int
    seed: int
    verdicts: list[VerdictModel]
    consensus: str
    dissent: int
    anomalies: list[str]
    system_text: Optional[str] = None


class ConstructRequest(BaseModel):
    target: str = Field(..., pattern="^(family|sample|inband)$")
    family: Optional[str] = Field(None, pattern="^(all-ones|rank1|sym4)$")
    K: int = Field(3, ge=2)
    M: int = Field(1, ge=1)
    seed: Optional[int] = None
    reciprocal: bool = True
    pin_index: int = Field(0, ge=0)
    channel: Optional[dict] = None


class ConstructResponse(BaseModel):
    solution: dict
    channel: dict
    verified: bool


class SimulateRequest(BaseModel):
    K: int = Field(..., ge=2)
    mode: str = Field("oob", pattern="^(oob|ib)$")
    snr: str = "0:5:40"
    trials: int = Field(50, ge=1)
    seed: int
    restarts: Optional[int] = Field(None, ge=1)
    iterations: Optional[int] = Field(None, ge=0)
    reciprocal: bool = True
    charge_feedback: bool = False
    ts_burst: bool = False
    verbose: bool = False


class SimulateResponse(BaseModel):
    K: int
    mode: str
    trials: int
    seed: int
    snr_db: list[float]
    ia_sum_rate: list[float]
    ts_sum_rate: list[float]
    per_trial: list[Any] = []


class PlanRequest(BaseModel):
    k_min: int = Field(..., ge=2)
    k_max: int = Field(..., ge=2)


class PlanRow(BaseModel):
    K: int
    phases: int
    n_vars: int
    n_eq: int
    dof_if_solvable: float
    conjectured: bool


class PlanResponse(BaseModel):
    rows: list[PlanRow]
