from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.source import LangId


class CorpusRecord(BaseModel):
    id: str
    src_lang: LangId
    tgt_lang: LangId
    source: str
    target: str


class UnitIn(BaseModel):
    id: str = "unit"
    lang: LangId
    text: str


class TestCase(BaseModel):
    __test__ = False

    name: str
    drivers: Dict[LangId, str]
    expected_stdout: str
    timeout_ms: Optional[int] = Field(default=None, gt=0)

    @field_validator("drivers")
    @classmethod
    def _require_driver(cls, value: Dict[LangId, str]) -> Dict[LangId, str]:
        if not value:
            raise ValueError("at least one driver is required")
        return value


class TestSuite(BaseModel):
    __test__ = False

    sample_id: str
    cases: List[TestCase] = Field(min_length=1)


class VerdictValue(str, Enum):
    PASS = "pass"
    WRONG_OUTPUT = "wrong_output"
    COMPILE_ERROR = "compile_error"
    RUNTIME_ERROR = "runtime_error"
    TIMEOUT = "timeout"


class Verdict(BaseModel):
    case: str
    value: VerdictValue
    stdout: str = ""
    stderr: str = ""
    duration_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.value is VerdictValue.PASS


class RunReport(BaseModel):
    verdicts: List[Verdict]
    total_cases: int

    @property
    def overall_pass(self) -> bool:
        return len(self.verdicts) == self.total_cases and all(verdict.passed for verdict in self.verdicts)


class AttackStatus(str, Enum):
    ORIGINAL_FAILURE = "original_failure"
    ADVERSARIAL_FOUND = "adversarial_found"
    ROBUST = "robust"
    NO_VARIANTS = "no_variants"
    ERROR = "error"


class AttackRecordOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    status: AttackStatus
    source: str
    plan: Optional[List[str]] = None
    translation: str
    passed: bool = Field(alias="pass")
    candidates_tried: int


class AttackSummary(BaseModel):
    total: int
    statuses: Dict[str, int]
    candidates_total: int = 0
    skipped_g: int = 0
    translator_failures: int = 0
    rules: Dict[str, int] = Field(default_factory=dict)
    plan_lengths: Dict[str, int] = Field(default_factory=dict)
    pass_at_1: Optional[float] = None
    rp_at_1: Optional[float] = None
    rd_at_1: Optional[float] = None


class EvalReport(BaseModel):
    n: int
    pass_at_1: float
    rp_at_1: Optional[float] = None
    rd_at_1: Optional[float] = None
    em: float
    bleu: float
    code_exec: float
    codebleu: None = None


class AugmentedRecord(BaseModel):
    id: str
    x_prime: str
    y_prime: str
    plan: List[str]
    distance: float


class AugmentReport(BaseModel):
    input_count: int
    augmented_count: int
    skipped: Dict[str, int] = Field(default_factory=dict)


class CurationReport(BaseModel):
    input_count: int
    kept_count: int
    removed: Dict[str, int]


class LengthStats(BaseModel):
    count: int
    average: float
    mode: int
    median: float
    under_128: float
    under_256: float


class VariantRecord(BaseModel):
    id: str
    parent_id: str
    plan: List[str]
    sequence: List[str]
    text: str


class EmbeddingRecord(BaseModel):
    id: str
    group: str
    vector: List[float]


class HealthOut(BaseModel):
    status: str
    toolchains: Dict[str, bool]


class ErrorOut(BaseModel):
    detail: str
    error_code: str


class EmbedIn(BaseModel):
    texts: List[str] = Field(min_length=1)


class EmbedOut(BaseModel):
    vectors: List[List[float]]


class TranslateIn(BaseModel):
    source: str
    src_lang: LangId
    tgt_lang: LangId


class TranslateOut(BaseModel):
    translation: str


class VariantsIn(BaseModel):
    source: str
    lang: LangId
    rules: str = "LEPC"
    seed: int = Field(default=0, ge=0)


class VariantOut(BaseModel):
    text: str
    plan: List[str]


class VariantsOut(BaseModel):
    variants: List[VariantOut]
