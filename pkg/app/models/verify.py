"""
Verification request and report models

Endpoint                  Request          Response
------------------------  ---------------  -------------------
GET /verify/suites        -                list[SuiteRead]
POST /verify              VerifyRequest    ReportRead
"""

from enum import Enum

from pydantic import BaseModel, Field

from app.models.grid import GridSpec


class SuiteName(str, Enum):
    NILCOXETER = "nilcoxeter"
    TWO_ALGEBRA = "two-algebra"
    GRID = "grid"
    GRID_NILCOXETER = "grid-nilcoxeter"
    STRANDS_RELATIONS = "strands-relations"
    TOPBOTTOM_RELATIONS = "topbottom-relations"
    BNT = "bnt"
    GRADINGS = "gradings"
    MATCHED = "matched"
    AZED = "azed"
    LOT2 = "lot2"
    R_RELATIONS = "r-relations"
    L_RELATIONS = "l-relations"
    AA = "aa"
    AD = "ad"
    DA = "da"
    DD = "dd"
    CPA = "cpa"
    CPD = "cpd"
    BITENSOR = "bitensor"
    BIGRADING = "bigrading"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    TSV = "tsv"


class VerifyRequest(BaseModel):
    """Parameters of one suite run; unset values fall back to the suite defaults."""

    suite: SuiteName
    n: int | None = Field(default=None, ge=0)
    cut_k: int | None = Field(default=None, ge=0)
    cut_kp: int | None = Field(default=None, ge=0)
    max_m: int | None = Field(default=None, ge=0)
    seed: int | None = None
    grid: GridSpec | None = None


class SuiteRead(BaseModel):
    name: SuiteName
    description: str


class CaseFailureRead(BaseModel):
    case: str
    detail: str
    rendering: str = ""
    replay: str = ""


class ReportRead(BaseModel):
    suite: str
    cases: int
    passed: bool
    failure_count: int = 0
    failures: list[CaseFailureRead] = Field(default_factory=list)
    elapsed_ms: float = 0.0
    params: dict[str, object] = Field(default_factory=dict)
