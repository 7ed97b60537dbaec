from enum import Enum
from fractions import Fraction
from typing import List, Optional

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, Field, model_validator

from app.models import PythTriple, SequenceRow


class OracleReport(BaseModel):
    """브루트포스 오라클의 스캔 결과"""
    gap: int = Field(description="다리 차이")
    z_max: int = Field(description="빗변 상한 (포함)")
    triples: List[PythTriple] = Field(description="z 오름차순의 원시 세 쌍 목록")
    elapsed: float = Field(description="스캔 소요 시간 (초)")

    @model_validator(mode="after")
    def _check_sorted(self) -> Self:
        for prev, cur in zip(self.triples, self.triples[1:]):
            if prev.z >= cur.z:
                raise ValueError("oracle triples must be strictly ascending by z")
        if any(t.virtual for t in self.triples):
            raise ValueError("oracle triples must all be real")
        return self

    @property
    def hypotenuses(self) -> List[int]:
        return [t.z for t in self.triples]


class CrossCheckReport(BaseModel):
    """오라클 z 집합과 수열 z 집합의 비교 결과"""
    gap: int
    z_max: int
    oracle_count: int = Field(description="오라클이 찾은 빗변 개수")
    sequence_count: int = Field(description="수열에서 얻은 빗변 개수 (중복 제거, 가상 행 제외)")
    missing: List[int] = Field(default_factory=list, description="오라클에는 있고 수열에는 없는 z")
    extra: List[int] = Field(default_factory=list, description="수열에는 있고 오라클에는 없는 z")

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra


class CandidateStatus(str, Enum):
    ACCEPT = "ACCEPT"
    ACCEPT_SUBSEQUENCE = "ACCEPT-SUBSEQUENCE"
    REJECT = "REJECT"


class CandidateVerdict(BaseModel):
    """점화식 계수 후보 A 하나에 대한 판정"""
    A: Fraction
    status: CandidateStatus
    failing_n: Optional[int] = Field(default=None, description="처음으로 조건을 깨뜨린 n")
    value: Optional[Fraction] = Field(default=None, description="그 n에서의 a_n 값")
    reason: Optional[str] = Field(default=None, description="거절 사유")

    @property
    def accepted(self) -> bool:
        return self.status is not CandidateStatus.REJECT


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


# JSON 필드 이름과 CSV 열 순서는 고정 (스크립트 호환성)
OUTPUT_FIELDS = ("k", "p", "q", "r", "s", "x", "y", "z", "d", "virtual")


class OutputRecord(BaseModel):
    """CLI 출력 한 행"""
    k: int
    p: int
    q: int
    r: int
    s: int
    x: int
    y: int
    z: int
    d: int
    virtual: bool

    @classmethod
    def from_row(cls, row: SequenceRow) -> Self:
        return cls(**row.model_dump(include=set(OUTPUT_FIELDS)))
