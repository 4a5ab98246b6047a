from typing import Optional, List, Dict, Any
from datetime import datetime
from enum import Enum
from pydantic import BaseModel, Field, field_validator


class ProductCase(str, Enum):
    PARALLEL = "parallel"
    DET1 = "det1"
    DET2_BOTH_SIMPLE = "det2_both_simple"
    DET2_WITH_COMPOSITE = "det2_with_composite"
    DET2_THREADED_FAMILY = "det2_threaded_family"
    MAX_THREAD = "max_thread"
    UNSUPPORTED = "unsupported"


class RenderFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    LATEX = "latex"


class Normalization(str, Enum):
    T0 = "T0"
    TPRIME = "Tprime"


class Suite(str, Enum):
    APPENDIX = "appendix"
    PROPERTIES = "properties"
    ALL = "all"


class FixtureKind(str, Enum):
    PN = "pn"
    EPSILON = "epsilon"
    PRODUCT = "product"


class CheckStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    ERROR = "error"


class Fixture(BaseModel):
    """A worked result transcribed as data"""
    name: str
    kind: FixtureKind
    source: str
    n: Optional[int] = None
    lhs: Optional[List[List[int]]] = None
    oracle: bool = False
    normalization: Normalization = Normalization.T0
    expected: List[Dict[str, Any]]

    @field_validator('name', 'source')
    @classmethod
    def validate_required_strings(cls, v):
        if not v or not v.strip():
            raise ValueError("Required field cannot be empty")
        return v.strip()

    @field_validator('n')
    @classmethod
    def validate_n(cls, v):
        if v is not None and v < 1:
            raise ValueError("n must be at least 1")
        return v

    @field_validator('lhs')
    @classmethod
    def validate_lhs(cls, v):
        if v is not None and (len(v) != 2 or any(len(pair) != 2 for pair in v)):
            raise ValueError("lhs must be two integer pairs")
        return v


class FixtureResult(BaseModel):
    """Outcome of one fixture against one engine"""
    name: str
    engine: str
    status: CheckStatus
    expected: Optional[Dict[str, Any]] = None
    actual: Optional[Dict[str, Any]] = None
    diff: List[str] = Field(default_factory=list)
    error_message: Optional[str] = None
    processing_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASSED


class PropertyResult(BaseModel):
    """Outcome of one randomized or exhaustive property suite"""
    name: str
    status: CheckStatus
    cases: int = 0
    skipped: int = 0
    failures: List[str] = Field(default_factory=list)
    error_message: Optional[str] = None
    processing_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASSED


class VerificationReport(BaseModel):
    """Result for an entire verification run"""
    suite: Suite
    seed: int
    fixtures: List[FixtureResult] = Field(default_factory=list)
    properties: List[PropertyResult] = Field(default_factory=list)
    total_time: float = 0.0
    timestamp: datetime = Field(default_factory=datetime.now)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.fixtures) and all(r.passed for r in self.properties)

    def failed_fixtures(self) -> List[FixtureResult]:
        return [r for r in self.fixtures if not r.passed]

    def failed_properties(self) -> List[PropertyResult]:
        return [r for r in self.properties if not r.passed]

    def get_summary(self) -> str:
        """Get verification summary"""
        fixture_ok = sum(1 for r in self.fixtures if r.passed)
        property_ok = sum(1 for r in self.properties if r.passed)
        return (
            f"Verification {'passed' if self.all_passed else 'FAILED'}:\n"
            f"  Suite: {self.suite.value} (seed {self.seed})\n"
            f"  Fixtures: {fixture_ok}/{len(self.fixtures)} passed\n"
            f"  Properties: {property_ok}/{len(self.properties)} passed\n"
            f"  Time: {self.total_time:.1f}s"
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite.value,
            "seed": self.seed,
            "passed": self.all_passed,
            "total_time": round(self.total_time, 3),
            "timestamp": self.timestamp.isoformat(),
            "fixtures": [
                r.model_dump(mode="json", exclude_none=True, exclude={"processing_time"})
                for r in self.fixtures
            ],
            "properties": [
                r.model_dump(mode="json", exclude_none=True, exclude={"processing_time"})
                for r in self.properties
            ],
        }
