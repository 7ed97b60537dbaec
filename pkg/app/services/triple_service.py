from typing import Optional

from app.core.errors import ConsistencyError, DomainError
from app.models import Companion, ParamPair, PellSolution, PythTriple
from app.utils.arith import exact_sqrt, require_odd_gap


class TripleService:
    """Pell 해 ↔ 생성 쌍 (r, s) ↔ 다리 차이가 고정된 피타고라스 세 쌍 변환"""

    @staticmethod
    def pell_to_params(sol: PellSolution) -> ParamPair:
        # p = r − s, q = s
        return ParamPair(r=sol.p + sol.q, s=sol.q)

    @staticmethod
    def params_to_triple(pair: ParamPair, gap: int) -> PythTriple:
        require_odd_gap(gap)
        r, s = pair.r, pair.s
        z = r * r + s * s
        if z <= 0:
            raise DomainError(f"({r},{s}) generates no hypotenuse")

        even_leg, odd_leg = 2 * r * s, r * r - s * s
        if abs(even_leg - odd_leg) != gap:
            raise DomainError(f"legs {even_leg} and {odd_leg} of ({r},{s}) do not differ by {gap}")

        # 두 다리가 모두 음수면 쌍대 (s, −r) 의 실제 세 쌍과 부호만 다르다
        if even_leg < 0 and odd_leg < 0:
            even_leg, odd_leg = -even_leg, -odd_leg

        x = min(even_leg, odd_leg)
        triple = PythTriple(x=x, y=x + gap, z=z, gap=gap, virtual=x <= 0)

        # r > s > 0 이면 실제 세 쌍이고, 원시성은 "서로소 + 홀짝 다름" 과 동치
        if r > s > 0 and pair.is_coprime_opposite_parity != (triple.gcd == 1):
            raise ConsistencyError(f"primitivity of {triple} disagrees with pair ({r},{s})")
        return triple

    @staticmethod
    def is_primitive_triple(t: PythTriple) -> bool:
        return t.x >= 1 and t.gcd == 1

    @staticmethod
    def companion_square(z: int, gap: int) -> Optional[Companion]:
        """2z² − gap² 이 gap보다 큰 d의 제곱이면 (d, m=(d−gap)/2), 아니면 None"""
        if z < 1:
            raise DomainError(f"z must be positive, got {z}")
        d = exact_sqrt(2 * z * z - gap * gap)
        if d is None or d <= gap:
            return None
        return Companion(d=d, m=(d - gap) // 2)
