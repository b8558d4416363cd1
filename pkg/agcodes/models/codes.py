from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pydantic import BaseModel


# ------------------------
# Request / File Models (Pydantic)
# ------------------------
class FieldDescriptor(BaseModel):
    p: int
    tower: List[int] = []


class CodeDescriptor(BaseModel):
    """Everything needed to rebuild a code; the derived fields are filled on output."""
    family: str
    curve: str = "p1"
    gf: FieldDescriptor
    q0: Optional[int] = None
    # canonical coordinates per point; None means every affine point
    points: Optional[List[List[int]]] = None
    divisor: Optional[str] = None
    k: Optional[int] = None
    multipliers: Optional[List[int]] = None
    goppa_poly: Optional[List[int]] = None
    base: Optional[FieldDescriptor] = None

    n: Optional[int] = None
    dimension: Optional[int] = None
    designed_distance: Optional[int] = None
    digest: Optional[str] = None
    generator: Optional[List[str]] = None


class DesignedParamsModel(BaseModel):
    n: int
    k: int
    k_formula: Optional[int] = None
    k_lower: int
    d_star: Optional[int] = None
    singleton_defect: Optional[int] = None
    genus: int
    in_window: bool
    notes: List[str] = []
    exact_distance: Optional[int] = None
    floor_distance: Optional[int] = None


class EncodeRequest(BaseModel):
    code: CodeDescriptor
    message: str


class DecodeRequest(BaseModel):
    code: CodeDescriptor
    word: str
    t: Optional[int] = None


class DecodeResultModel(BaseModel):
    status: str
    error: Optional[str] = None
    codeword: Optional[str] = None
    reason: str = ""
    codewords: Optional[List[str]] = None


# ------------------------
# Bounds
# ------------------------
class TvzGvRow(BaseModel):
    delta: float
    gv: float
    tvz: float


class FloorRequest(BaseModel):
    kind: str
    genus: int
    table: Dict[str, int] = {}
    places: List[str] = ["P", "Q"]
    g: str
    a: Optional[str] = None
    b: Optional[str] = None
    z: Optional[str] = None
    c: Optional[str] = None


class HypothesisModel(BaseModel):
    name: str
    holds: bool
    provenance: str


class FloorReportModel(BaseModel):
    kind: str
    value: Optional[int] = None
    d_gop: Optional[int] = None
    accepted: bool
    hypotheses: List[HypothesisModel] = []
    queries: List[Dict[str, Any]] = []


class OrderRequest(BaseModel):
    q0: int
    m: int
    split: int = 0
    limit: int = 256


class OrderReportModel(BaseModel):
    d_ord: Optional[int] = None
    d_gop: Optional[int] = None
    certified: bool
    n_sequence: List[int] = []


# ------------------------
# Internal Models (Dataclasses)
# ------------------------
@dataclass
class SelftestCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SelftestReport:
    checks: List[SelftestCheck] = field(default_factory=list)
    full: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_pydantic(self) -> "SelftestReportModel":
        return SelftestReportModel(
            passed=self.passed,
            full=self.full,
            checks=[SelftestCheckModel(**c.__dict__) for c in self.checks],
        )


class SelftestCheckModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SelftestReportModel(BaseModel):
    passed: bool
    full: bool = False
    checks: List[SelftestCheckModel] = []
