"""
Pydantic schemas for serialized records and job configuration
"""
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from models.kappa_spec import Preset

SCHEMA_VERSION = 1

Kind = Literal["permutation", "partition"]
CylinderKind = Literal["perm", "part"]
OutputFormat = Literal["json", "csv", "text"]


class GenusTableEntry(BaseModel):
    """One (genus, type) cell of a genus table"""
    g: int = Field(..., ge=0)
    type: List[int]
    count: int = Field(..., ge=0)


class GenusTableDocument(BaseModel):
    """Serialized genus table; also the on-disk cache format"""
    schema_version: int = SCHEMA_VERSION
    n: int = Field(..., ge=1)
    kind: Kind
    checksum: Optional[str] = None
    entries: List[GenusTableEntry]


class MomentRecord(BaseModel):
    """A moment polynomial, or its specialization"""
    schema_version: int = SCHEMA_VERSION
    kind: Kind
    g: int = Field(..., ge=0)
    n: int = Field(..., ge=1)
    poly: str
    spec: Optional[str] = None


class SeriesRecord(BaseModel):
    """Specialized coefficient sequence of W^(g); coeffs[k] multiplies 1/x^(start+k+1)"""
    schema_version: int = SCHEMA_VERSION
    kind: Kind
    g: int = Field(..., ge=0)
    spec: str
    start: int = Field(..., ge=0)
    coeffs: List[str]


class HbarRow(BaseModel):
    """Genus-graded contributions to one moment and their sum at hbar = 1"""
    schema_version: int = SCHEMA_VERSION
    kind: Kind
    spec: str
    n: int = Field(..., ge=0)
    by_genus: List[str]
    total: str


class CylinderRecord(BaseModel):
    """A two-boundary planar moment"""
    schema_version: int = SCHEMA_VERSION
    kind: CylinderKind
    i: int = Field(..., ge=1)
    j: int = Field(..., ge=1)
    poly: str


class CheckResult(BaseModel):
    """Outcome of one verification check"""
    name: str
    passed: bool
    cases: int = 0
    failures: List[str] = []


class VerificationReport(BaseModel):
    """Aggregate verification outcome"""
    schema_version: int = SCHEMA_VERSION
    passed: bool
    checks: List[CheckResult]


class JobConfig(BaseModel):
    """Validated parameters for one CLI run"""
    command: Literal["table", "moments", "cylinder", "series", "verify"]
    kind: Optional[str] = None
    n_values: List[int] = []
    g_values: List[int] = []
    i_values: List[int] = []
    j_values: List[int] = []
    preset: Optional[Preset] = None
    kappa_values: Dict[int, str] = {}
    cutoff: Optional[int] = Field(default=None, ge=1)
    margin: Optional[int] = Field(default=None, ge=0)
    oracle_limit: Optional[int] = Field(default=None, ge=1)
    output_format: OutputFormat = "json"
    cache_dir: Optional[str] = None
    jobs: int = Field(default=1, ge=1)
    checks: List[str] = []
    second_order_zero: bool = False

    @field_validator("n_values", "i_values", "j_values")
    @classmethod
    def positive_values(cls, v: List[int]) -> List[int]:
        if any(x < 1 for x in v):
            raise ValueError("values must be positive")
        return v

    @field_validator("g_values")
    @classmethod
    def nonnegative_genus(cls, v: List[int]) -> List[int]:
        if any(x < 0 for x in v):
            raise ValueError("genus must be nonnegative")
        return v

    @model_validator(mode="after")
    def ranges_present(self) -> "JobConfig":
        needed = {
            "table": ("n_values",),
            "moments": ("n_values", "g_values"),
            "cylinder": ("i_values", "j_values"),
            "series": ("n_values", "g_values"),
        }.get(self.command, ())
        for name in needed:
            if not getattr(self, name):
                raise ValueError(f"{name.replace('_values', '')} range must be nonempty for '{self.command}'")
        if (self.preset == Preset.CUSTOM) != bool(self.kappa_values):
            raise ValueError("explicit cumulant values go together with preset 'custom'")
        return self
