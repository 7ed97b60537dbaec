import logging
import math
from enum import Enum
from typing import List

from app.core import quadring
from app.core.errors import ConsistencyError, DomainError
from app.core.quadring import UNIT, UNIT_SQUARED, QuadRat
from app.models import PellSolution
from app.utils.arith import exact_sqrt, require_odd_gap

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class PellService:
    """p² − 2q² = ±N 의 기본해 탐색과 (1+√2) 궤도 생성"""

    @staticmethod
    def search_bound(n: int) -> int:
        """B·√2 ≥ (1+√2)²·√(2N), 즉 B² ≥ (17+12√2)·N 을 만족하는 최소 정수 B"""
        target = QuadRat(u=17 * n, v=12 * n)
        # 17+12√2 > 33 이므로 isqrt(33N)은 항상 목표보다 작은 곳에서 출발한다
        bound = math.isqrt(33 * n)
        while quadring.compare(QuadRat(u=bound * bound), target) < 0:
            bound += 1
        return bound

    @staticmethod
    def reduce_to_interval(element: QuadRat) -> QuadRat:
        """양수 원소를 (1+√2)로 곱하거나 나눠 [1+√2, (1+√2)²) 구간으로 옮긴다"""
        if quadring.sign(element) <= 0:
            raise DomainError(f"{element} must be positive to be reduced")
        while quadring.compare(element, UNIT) < 0:
            element = quadring.mul(element, UNIT)
        while quadring.compare(element, UNIT_SQUARED) >= 0:
            element = quadring.div(element, UNIT)
        return element

    @staticmethod
    def fundamental_solutions(n: int) -> List[PellSolution]:
        """
        구간 [1+√2, (1+√2)²) 안의 모든 해를 궤도당 하나씩, p+q√2 오름차순으로 반환.
        ±N 두 부호를 하나의 구간에서 함께 찾는다. 해가 없으면 빈 리스트.
        """
        require_odd_gap(n)
        bound = PellService.search_bound(n)

        found: dict[tuple[int, int], PellSolution] = {}
        for q in range(bound + 1):
            for p_squared in (2 * q * q + n, 2 * q * q - n):
                p = exact_sqrt(p_squared)
                if p is None:
                    continue
                # p의 두 부호를 모두 보고, 음수 원소는 −1을 곱해 양수 쪽으로 맞춘다
                for candidate in (QuadRat(u=p, v=q), QuadRat(u=-p, v=q)):
                    if quadring.sign(candidate) < 0:
                        candidate = -candidate
                    reduced = PellService.reduce_to_interval(candidate)
                    key = (reduced.u, reduced.v)
                    if key in found:
                        continue
                    norm = reduced.u * reduced.u - 2 * reduced.v * reduced.v
                    found[key] = PellSolution(
                        p=reduced.u, q=reduced.v, n=n, norm_sign=1 if norm > 0 else -1, k=1
                    )
                    logger.debug(f"N={n}: hit ({p},{q}) -> fundamental {key}")

        return sorted(found.values(), key=lambda sol: sol.element)

    @staticmethod
    def step(sol: PellSolution, direction: Direction) -> PellSolution:
        """(1+√2)를 곱하거나(forward) 나눈다(backward). 노름 부호는 항상 뒤집힌다"""
        p, q = sol.p, sol.q
        if direction is Direction.FORWARD:
            p, q, k = p + 2 * q, p + q, sol.k + 1
        else:
            p, q, k = 2 * q - p, p - q, sol.k - 1
        return PellSolution(p=p, q=q, n=sol.n, norm_sign=-sol.norm_sign, k=k)

    @staticmethod
    def orbit(seed: PellSolution, k_min: int, k_max: int) -> List[PellSolution]:
        """seed를 포함하는 연속 궤도 구간 [k_min, k_max] (k 오름차순)"""
        if not k_min <= seed.k <= k_max:
            raise DomainError(f"orbit range [{k_min},{k_max}] must contain seed index {seed.k}")

        below = []
        current = seed
        while current.k > k_min:
            current = PellService.step(current, Direction.BACKWARD)
            below.append(current)

        above = []
        current = seed
        while current.k < k_max:
            current = PellService.step(current, Direction.FORWARD)
            above.append(current)

        return below[::-1] + [seed] + above

    @staticmethod
    def closed_form_solution(seed: PellSolution, k: int) -> PellSolution:
        """p_k + q_k√2 = (p_seed + q_seed√2)·(1+√2)^(k − seed.k) 를 ℚ(√2)에서 직접 계산"""
        shift = k - seed.k
        element = quadring.mul(seed.element, quadring.pow(UNIT, shift))
        if element.den != 1:
            raise ConsistencyError(f"orbit element {element} is not integral")
        norm_sign = seed.norm_sign if shift % 2 == 0 else -seed.norm_sign
        return PellSolution(p=element.u, q=element.v, n=seed.n, norm_sign=norm_sign, k=k)
