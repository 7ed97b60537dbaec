from fractions import Fraction
from math import gcd
from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from app.core import quadring
from app.core.quadring import QuadRat
from app.utils.arith import exact_sqrt, gcd3


# --- [Domain Entities] ---
# 모든 엔티티는 불변(frozen)이며 불변식은 생성 시점에 검증된다.

class PellSolution(BaseModel):
    """p² − 2q² = norm_sign · n 의 해. k는 궤도 인덱스 (기본해는 k=1)"""
    model_config = ConfigDict(frozen=True)

    p: int
    q: int
    n: PositiveInt = Field(description="방정식의 우변 크기 N (= gap)")
    norm_sign: Literal[1, -1]
    k: int = 1

    @model_validator(mode="after")
    def _check_invariants(self) -> Self:
        if self.p * self.p - 2 * self.q * self.q != self.norm_sign * self.n:
            raise ValueError(f"({self.p},{self.q}) does not satisfy p^2-2q^2={self.norm_sign * self.n}")
        if quadring.sign(self.element) <= 0:
            raise ValueError(f"({self.p},{self.q}) has p+q*sqrt2 <= 0")
        return self

    @property
    def element(self) -> QuadRat:
        return QuadRat(u=self.p, v=self.q)

    @property
    def norm(self) -> int:
        return self.norm_sign * self.n


class ParamPair(BaseModel):
    """피타고라스 세 쌍의 생성 쌍 (r, s): z = r² + s²"""
    model_config = ConfigDict(frozen=True)

    r: int
    s: int

    @property
    def is_coprime_opposite_parity(self) -> bool:
        return gcd(self.r, self.s) == 1 and (self.r - self.s) % 2 == 1


class PythTriple(BaseModel):
    """다리 차이가 gap인 세 쌍 (x < y). x ≤ 0 이면 가상(virtual) 세 쌍"""
    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    z: PositiveInt
    gap: PositiveInt
    virtual: bool = False

    @model_validator(mode="after")
    def _check_invariants(self) -> Self:
        if self.x * self.x + self.y * self.y != self.z * self.z:
            raise ValueError(f"({self.x},{self.y},{self.z}) is not Pythagorean")
        if self.y - self.x != self.gap or self.gap % 2 == 0:
            raise ValueError(f"legs {self.x},{self.y} do not differ by odd gap {self.gap}")
        if self.virtual != (self.x <= 0):
            raise ValueError("virtual flag must be set exactly when x <= 0")
        return self

    @property
    def gcd(self) -> int:
        return gcd3(self.x, self.y, self.z)


class Companion(BaseModel):
    """d² = 2z² − gap² 을 만족하는 동반값 d와, 그로부터 얻는 작은 다리 m"""
    model_config = ConfigDict(frozen=True)

    d: PositiveInt
    m: int


class RecurrenceSpec(BaseModel):
    """a_{n+1} = A·a_n + B·a_{n−1}, 초기값 (a0, a1), 동반 오프셋 offset (= gap²)"""
    model_config = ConfigDict(frozen=True)

    A: Fraction
    B: Fraction = Fraction(-1)
    a0: int
    a1: int
    offset: PositiveInt

    @model_validator(mode="after")
    def _check_roots(self) -> Self:
        if self.discriminant <= 0:
            raise ValueError(f"A^2+4B must be positive, got {self.discriminant}")
        return self

    @classmethod
    def for_seeds(cls, a0: int, a1: int, gap: int, A: Fraction | int = 6) -> Self:
        return cls(A=Fraction(A), a0=a0, a1=a1, offset=gap * gap)

    @property
    def discriminant(self) -> Fraction:
        return self.A * self.A + 4 * self.B

    @property
    def gap(self) -> int | None:
        return exact_sqrt(self.offset)


class SequenceRow(BaseModel):
    """양방향 궤도의 한 행: 궤도 인덱스, Pell 해, 생성 쌍, 세 쌍, 동반값"""
    model_config = ConfigDict(frozen=True)

    k: int
    p: int
    q: int
    r: int
    s: int
    x: int
    y: int
    z: PositiveInt
    d: PositiveInt
    virtual: bool

    @model_validator(mode="after")
    def _check_representations(self) -> Self:
        if self.z != self.r * self.r + self.s * self.s:
            raise ValueError(f"row k={self.k}: z != r^2+s^2")
        if self.x * self.x + self.y * self.y != self.z * self.z:
            raise ValueError(f"row k={self.k}: legs do not match z")
        gap = self.y - self.x
        if self.d * self.d != 2 * self.z * self.z - gap * gap:
            raise ValueError(f"row k={self.k}: d^2 != 2z^2 - gap^2")
        return self

    @property
    def is_primitive(self) -> bool:
        return not self.virtual and gcd3(self.x, self.y, self.z) == 1

    @property
    def is_degenerate(self) -> bool:
        # (0,1,1) 처럼 다리 하나가 0인 앵커 행
        return self.x * self.y == 0


class ClosedForm(BaseModel):
    """a_n = a·x₊ⁿ + b·x₋ⁿ 의 특성근과 계수 (모두 ℚ(√2) 원소)"""
    model_config = ConfigDict(frozen=True)

    x_plus: QuadRat
    x_minus: QuadRat
    a: QuadRat
    b: QuadRat
