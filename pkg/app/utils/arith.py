import math

from app.core.errors import DomainError

# 제곱수 판별용 mod 64 잔여 테이블 (isqrt 호출 횟수를 줄이기 위함)
SQUARE_MOD_64 = bytes(1 if any((i * i) % 64 == r for i in range(64)) else 0 for r in range(64))


def exact_sqrt(n: int) -> int | None:
    """n이 완전제곱수면 정수 제곱근, 아니면 None"""
    if n < 0:
        return None
    root = math.isqrt(n)
    return root if root * root == n else None


def gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(math.gcd(a, b), c)


def require_odd_gap(gap: int) -> int:
    if gap <= 0 or gap % 2 == 0:
        raise DomainError(f"gap must be a positive odd integer, got {gap}")
    return gap
