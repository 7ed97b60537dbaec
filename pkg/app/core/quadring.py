"""
ℚ(√2) 정확 연산.

(1±√2)^k, 특성근 3±2√2, 닫힌 형태의 계수 등 모든 값이 여기서 계산된다.
코어 경로에는 부동소수점이 전혀 들어가지 않는다.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from app.core.errors import DomainError
from app.utils.arith import exact_sqrt


def canonicalize(u: int, v: int, den: int) -> tuple[int, int, int]:
    """gcd(u, v, den)로 나누고 den > 0 으로 맞춘다"""
    if den == 0:
        raise DomainError("QuadRat denominator must be non-zero")
    if den < 0:
        u, v, den = -u, -v, -den
    g = math.gcd(math.gcd(u, v), den)
    return u // g, v // g, den // g


@total_ordering
class QuadRat(BaseModel):
    """(u + v√2) / den. 생성 시점에 항상 기약 형태로 정규화되므로 필드 비교가 곧 값 비교다."""

    model_config = ConfigDict(frozen=True)

    u: int
    v: int = 0
    den: int = 1

    def __init__(self, **data: Any) -> None:
        # 검증기 밖에서 검사해야 DomainError 가 그대로 전달된다
        if data.get("den", 1) == 0:
            raise DomainError("QuadRat denominator must be non-zero")
        super().__init__(**data)

    @model_validator(mode="before")
    @classmethod
    def _to_canonical(cls, data: Any) -> Any:
        if isinstance(data, dict):
            u, v, den = canonicalize(data.get("u", 0), data.get("v", 0), data.get("den", 1))
            return {"u": u, "v": v, "den": den}
        return data

    @classmethod
    def of(cls, u: int, v: int = 0, den: int = 1) -> QuadRat:
        return cls(u=u, v=v, den=den)

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def __str__(self) -> str:
        if self.v == 0:
            body = str(self.u)
        elif self.u == 0:
            body = f"{self.v}√2"
        else:
            body = f"{self.u}{self.v:+}√2"
        return body if self.den == 1 else f"({body})/{self.den}"

    # --- 연산자: int / Fraction 은 자동으로 승격 ---

    def __add__(self, other: QuadLike) -> QuadRat:
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other: QuadLike) -> QuadRat:
        return sub(self, _coerce(other))

    def __rsub__(self, other: QuadLike) -> QuadRat:
        return sub(_coerce(other), self)

    def __neg__(self) -> QuadRat:
        return QuadRat(u=-self.u, v=-self.v, den=self.den)

    def __mul__(self, other: QuadLike) -> QuadRat:
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: QuadLike) -> QuadRat:
        return div(self, _coerce(other))

    def __rtruediv__(self, other: QuadLike) -> QuadRat:
        return div(_coerce(other), self)

    def __pow__(self, k: int) -> QuadRat:
        return pow(self, k)

    def __lt__(self, other: QuadLike) -> bool:
        return compare(self, _coerce(other)) < 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (QuadRat, int, Fraction)):
            # 기약 형태라 필드 비교가 곧 값 비교
            rhs = _coerce(other)
            return (self.u, self.v, self.den) == (rhs.u, rhs.v, rhs.den)
        return NotImplemented

    def __hash__(self) -> int:
        # 유리수는 같은 값의 int / Fraction 과 해시가 같아야 한다
        if self.v == 0:
            return hash(Fraction(self.u, self.den))
        return hash((self.u, self.v, self.den))


QuadLike = QuadRat | int | Fraction


def _coerce(x: QuadLike) -> QuadRat:
    if isinstance(x, QuadRat):
        return x
    if isinstance(x, int):
        return QuadRat(u=x)
    if isinstance(x, Fraction):
        return from_fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an element of Q(sqrt 2)")


def from_fraction(q: Fraction) -> QuadRat:
    return QuadRat(u=q.numerator, den=q.denominator)


def add(lhs: QuadRat, rhs: QuadRat) -> QuadRat:
    return QuadRat(
        u=lhs.u * rhs.den + rhs.u * lhs.den,
        v=lhs.v * rhs.den + rhs.v * lhs.den,
        den=lhs.den * rhs.den,
    )


def sub(lhs: QuadRat, rhs: QuadRat) -> QuadRat:
    return add(lhs, -rhs)


def mul(lhs: QuadRat, rhs: QuadRat) -> QuadRat:
    # √2·√2 = 2
    return QuadRat(
        u=lhs.u * rhs.u + 2 * lhs.v * rhs.v,
        v=lhs.u * rhs.v + lhs.v * rhs.u,
        den=lhs.den * rhs.den,
    )


def conj(x: QuadRat) -> QuadRat:
    return QuadRat(u=x.u, v=-x.v, den=x.den)


def norm(x: QuadRat) -> Fraction:
    """x · conj(x) = (u² − 2v²) / den²"""
    return Fraction(x.u * x.u - 2 * x.v * x.v, x.den * x.den)


def inverse(x: QuadRat) -> QuadRat:
    # 1/x = conj(x) / norm(x) = den·(u − v√2) / (u² − 2v²)
    n = x.u * x.u - 2 * x.v * x.v
    if n == 0:
        raise DomainError("cannot invert zero in Q(sqrt 2)")
    return QuadRat(u=x.den * x.u, v=-x.den * x.v, den=n)


def div(lhs: QuadRat, rhs: QuadRat) -> QuadRat:
    return mul(lhs, inverse(rhs))


def pow(x: QuadRat, k: int) -> QuadRat:
    """이진 거듭제곱. 음수 k는 정확한 역원으로 처리"""
    if k < 0:
        x, k = inverse(x), -k
    result = ONE
    base = x
    while k > 0:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def sign(x: QuadRat) -> int:
    """부호 (−1, 0, 1). den > 0 이므로 u + v√2 의 부호만 보면 된다"""
    a, b = x.u, x.v
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # 부호가 섞인 경우: 제곱 비교 (√2가 무리수라 등호는 나오지 않음)
    if a > 0:
        return 1 if a * a > 2 * b * b else -1
    return 1 if 2 * b * b > a * a else -1


def compare(lhs: QuadRat, rhs: QuadRat) -> int:
    """lhs − rhs 의 부호를 −1, 0, 1 로 반환"""
    return sign(sub(lhs, rhs))


def as_fraction(x: QuadRat) -> Fraction:
    if x.v != 0:
        raise DomainError(f"{x} is not rational")
    return Fraction(x.u, x.den)


def field_sqrt(q: Fraction) -> QuadRat | None:
    """√q 가 ℚ(√2) 안에 있으면 반환 (q 또는 q/2 가 유리수 제곱일 때)"""
    if q < 0:
        return None
    rn, rd = exact_sqrt(q.numerator), exact_sqrt(q.denominator)
    if rn is not None and rd is not None:
        return QuadRat(u=rn, den=rd)
    half = q / 2
    tn, td = exact_sqrt(half.numerator), exact_sqrt(half.denominator)
    if tn is not None and td is not None:
        return QuadRat(v=tn, den=td)
    return None


ZERO = QuadRat(u=0)
ONE = QuadRat(u=1)
SQRT2 = QuadRat(u=0, v=1)
# 기본 단위 1+√2 와 그 제곱 3+2√2
UNIT = QuadRat(u=1, v=1)
UNIT_SQUARED = QuadRat(u=3, v=2)
