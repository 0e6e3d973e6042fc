from pydantic import BaseModel, Field
from typing import Any, Dict, List, Literal, Optional


class SuiteRequest(BaseModel):
    """Options for one suite run; mirrors the CLI flags."""
    max_degree: Optional[int] = Field(None, ge=1, le=12, description="Nichols degree bound")
    cap: Optional[int] = Field(None, ge=1, description="Symmetrizer size cap (d^n)")
    params: Dict[str, Any] = Field(default_factory=dict, description="Lifting parameters, as in --params")
    tag: Optional[str] = Field(None, description="Module tag such as M1 or Omega25")
    family: Optional[str] = Field(None, description="Lifting family such as 14 or Omega25")
    action: Optional[str] = Field(None, description="Single operation of the suite, e.g. series or iso")
    left: Optional[str] = Field(None, description="First module of a factorization pair")
    right: Optional[str] = Field(None, description="Second module of a factorization pair")
    witness: Optional[Dict[str, Any]] = Field(None, description="Isomorphism witness, as in --witness")
    all_modules: bool = Field(False, description="Every catalog module (yd verify)")


class CheckRecord(BaseModel):
    suite: str
    name: str
    status: Literal["pass", "fail", "evidence"]
    payload: Any = None


class SuiteSummary(BaseModel):
    pass_: int = Field(..., alias="pass")
    fail: int
    evidence: int

    model_config = {"populate_by_name": True}


class SuiteReport(BaseModel):
    suite: str
    records: List[CheckRecord]
    summary: SuiteSummary
    elapsed_ms: float


class HealthResponse(BaseModel):
    status: str
    h_dimension: int
    suites: List[str]
