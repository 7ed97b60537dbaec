import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from app.core import quadring
from app.core.errors import ConsistencyError, DomainError, UnknownSeedError
from app.core.quadring import SQRT2, QuadRat
from app.models import ClosedForm, PellSolution, RecurrenceSpec, SequenceRow
from app.schemas import CandidateStatus, CandidateVerdict
from app.services.pell_service import Direction, PellService
from app.services.triple_service import TripleService
from app.utils.arith import exact_sqrt, require_odd_gap

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 16


class SequenceService:
    """점화식 계수 예측, 닫힌 형태, 양방향 수열 생성, 두 시드 수열의 이어 붙이기"""

    # --- 계수 예측과 검증 ---

    @staticmethod
    def predict_recurrence(a0: int, a1: int, offset: int) -> List[Fraction]:
        """
        B = −1 로 고정하고 2·(a0²(A²−4) − (A·a0 − 2a1)²)/(A²−4) = offset 을 A에 대해 푼다.
        분모를 정리하면 offset·A² − 8a0a1·A + 8(a0²+a1²) − 4·offset = 0.
        """
        if not a1 > a0 >= 1:
            raise DomainError(f"need a1 > a0 >= 1, got a0={a0}, a1={a1}")
        if offset < 1:
            raise DomainError(f"offset must be positive, got {offset}")

        qa = offset
        qb = -8 * a0 * a1
        qc = 8 * (a0 * a0 + a1 * a1) - 4 * offset
        disc = qb * qb - 4 * qa * qc
        root = exact_sqrt(disc)
        if root is None:
            # 실근이 없거나 유리근이 아님
            return []

        roots = {Fraction(-qb + root, 2 * qa), Fraction(-qb - root, 2 * qa)}
        # A² = 4 이면 특성근이 중근이 되어 닫힌 형태가 성립하지 않는다
        return sorted(A for A in roots if A * A != 4)

    @staticmethod
    def validate_candidate(
        A: Fraction, a0: int, a1: int, offset: int, horizon: int = DEFAULT_HORIZON
    ) -> CandidateVerdict:
        A = Fraction(A)

        def reject(n: int, value: Fraction, reason: str) -> CandidateVerdict:
            logger.debug(f"A={A} rejected at n={n}: {reason}")
            return CandidateVerdict(A=A, status=CandidateStatus.REJECT, failing_n=n, value=value, reason=reason)

        # 1. a₂ 정수성: 점화식과 (가능하면) 닫힌 형태 두 경로로 계산
        a2 = A * a1 - a0
        stage = "recurrence"
        try:
            spec = RecurrenceSpec(A=A, a0=a0, a1=a1, offset=offset)
        except ValidationError:
            return reject(2, a2, "A^2-4 <= 0, no distinct real characteristic roots")

        if quadring.field_sqrt(spec.discriminant) is not None:
            a2_closed = quadring.as_fraction(SequenceService.closed_form_value(spec, 2))
            if a2_closed != a2:
                raise ConsistencyError(f"A={A}: closed form a2={a2_closed} != recurrence a2={a2}")
            stage = "closed form"

        if a2.denominator != 1 or a2 <= 0:
            return reject(2, a2, f"not a positive integer by {stage}")

        # 2. n = 2..horizon 에서 a_n 이 양의 정수이고 2a_n² − offset 이 offset보다 큰 홀수 제곱인지
        terms = SequenceService._terms(spec, 0, horizon)
        for n in range(2, horizon + 1):
            an = terms[n]
            if an.denominator != 1 or an <= 0:
                return reject(n, an, "not a positive integer by recurrence")
            companion = 2 * an * an - offset
            d = exact_sqrt(int(companion))
            if d is None or d % 2 == 0 or d * d <= offset:
                return reject(n, an, f"2*a{n}^2-{offset}={companion} is not an odd square > {offset}")

        return CandidateVerdict(A=A, status=CandidateStatus.ACCEPT)

    # --- 닫힌 형태 ---

    @staticmethod
    def characteristic(spec: RecurrenceSpec) -> ClosedForm:
        """x± = (A ± √D)/2, a = (2a1 − a0·A + a0√D)/(2√D), b = (a0√D − 2a1 + a0·A)/(2√D), D = A² + 4B"""
        sqrt_d = quadring.field_sqrt(spec.discriminant)
        if sqrt_d is None:
            raise DomainError(f"sqrt({spec.discriminant}) is not in Q(sqrt 2)")

        A = quadring.from_fraction(spec.A)
        twice_sqrt_d = sqrt_d * 2
        lead = A * (-spec.a0) + 2 * spec.a1
        return ClosedForm(
            x_plus=(A + sqrt_d) / 2,
            x_minus=(A - sqrt_d) / 2,
            a=(lead + sqrt_d * spec.a0) / twice_sqrt_d,
            b=(sqrt_d * spec.a0 - lead) / twice_sqrt_d,
        )

    @staticmethod
    def closed_form_value(spec: RecurrenceSpec, n: int) -> QuadRat:
        cf = SequenceService.characteristic(spec)
        return cf.a * cf.x_plus**n + cf.b * cf.x_minus**n

    @staticmethod
    def closed_form_term(spec: RecurrenceSpec, n: int) -> Tuple[int, int]:
        """(a_n, d_n). d_n = |√2·(a·x₊ⁿ − b·x₋ⁿ)|, 음수 n은 역원 거듭제곱으로 계산"""
        cf = SequenceService.characteristic(spec)
        plus = cf.a * cf.x_plus**n
        minus = cf.b * cf.x_minus**n

        an = plus + minus
        dn = SQRT2 * (plus - minus)
        for name, value in (("a", an), ("d", dn)):
            if not value.is_rational or value.den != 1:
                raise ConsistencyError(f"closed form {name}_{n}={value} is not an integer for {spec}")

        a_int, d_int = an.u, abs(dn.u)
        if d_int * d_int != 2 * a_int * a_int - spec.offset:
            raise ConsistencyError(f"d_{n}^2 != 2a_{n}^2 - {spec.offset} for {spec}")
        return a_int, d_int

    # --- 점화식 ---

    @staticmethod
    def _terms(spec: RecurrenceSpec, n_from: int, n_to: int) -> Dict[int, Fraction]:
        """정방향 a_{n+1} = A·a_n + B·a_{n−1}, 역방향 a_{n−1} = (a_{n+1} − A·a_n)/B"""
        values: Dict[int, Fraction] = {0: Fraction(spec.a0), 1: Fraction(spec.a1)}
        for n in range(2, n_to + 1):
            values[n] = spec.A * values[n - 1] + spec.B * values[n - 2]
        for n in range(-1, n_from - 1, -1):
            values[n] = (values[n + 2] - spec.A * values[n + 1]) / spec.B
        return values

    @staticmethod
    def iterate(spec: RecurrenceSpec, n_from: int, n_to: int) -> List[int]:
        if n_from > n_to:
            raise DomainError(f"empty index range [{n_from},{n_to}]")
        values = SequenceService._terms(spec, n_from, n_to)
        terms = []
        for n in range(n_from, n_to + 1):
            if values[n].denominator != 1:
                raise ConsistencyError(f"a_{n}={values[n]} is not an integer for {spec}")
            terms.append(int(values[n]))
        return terms

    @staticmethod
    def terms_up_to(spec: RecurrenceSpec, z_max: int, limit: int = 10_000) -> List[Fraction]:
        """n ≥ 1 의 항을 z_max 이하인 동안 모은다 (A > 2 이면 단조 증가)"""
        collected = []
        prev, cur = Fraction(spec.a0), Fraction(spec.a1)
        for _ in range(limit):
            if cur > z_max or cur <= prev:
                break
            collected.append(cur)
            prev, cur = cur, spec.A * cur + spec.B * prev
        return collected

    # --- Pell 궤도 기반 행 생성 ---

    @staticmethod
    def to_row(sol: PellSolution, gap: int) -> SequenceRow:
        pair = TripleService.pell_to_params(sol)
        triple = TripleService.params_to_triple(pair, gap)
        return SequenceRow(
            k=sol.k,
            p=sol.p,
            q=sol.q,
            r=pair.r,
            s=pair.s,
            x=triple.x,
            y=triple.y,
            z=triple.z,
            # d = 2x + gap (가상 행은 부호만 다름)
            d=abs(triple.x + triple.y),
            virtual=triple.virtual,
        )

    @staticmethod
    def stitched_sequence(gap: int, k_min: int, k_max: int, seed_index: int = 0) -> List[SequenceRow]:
        """
        기본해 하나의 궤도를 양방향으로 늘린 행 목록 (k 오름차순).
        gap 7, seed_index 0 이면 양수 k는 a1=13 수열, 음수 k는 a1=17 수열을 재현한다.
        """
        require_odd_gap(gap)
        if k_min > k_max:
            raise DomainError(f"empty index range [{k_min},{k_max}]")
        solutions = PellService.fundamental_solutions(gap)
        if not solutions:
            return []
        if not 0 <= seed_index < len(solutions):
            raise UnknownSeedError(f"gap {gap} has {len(solutions)} seeds, no index {seed_index}")

        seed = solutions[seed_index]
        orbit = PellService.orbit(seed, min(k_min, seed.k), max(k_max, seed.k))
        return [SequenceService.to_row(sol, gap) for sol in orbit if k_min <= sol.k <= k_max]

    @staticmethod
    def resolve_seed(gap: int, selector: Optional[str]) -> int:
        """시드 선택자는 각 기본해의 k=1 빗변(a1)으로 부른다. 없으면 첫 번째 기본해"""
        solutions = PellService.fundamental_solutions(gap)
        if not solutions:
            raise UnknownSeedError(f"gap {gap} has no fundamental solutions")
        if selector is None:
            return 0
        names = [SequenceService.to_row(sol, gap).z for sol in solutions]
        try:
            wanted = int(selector)
        except ValueError:
            wanted = None
        if wanted not in names:
            raise UnknownSeedError(f"unknown seed {selector!r} for gap {gap}; choose from {names}")
        return names.index(wanted)

    @staticmethod
    def hypotenuses_up_to(gap: int, z_max: int) -> List[int]:
        """
        모든 기본해 궤도를 양방향으로 걸으며 z ≤ z_max 인 실제 원시 빗변을 모은다.
        궤도 위의 z는 k에 대해 단봉(unimodal)이라, z_max를 넘고 증가 중이면 그 방향은 끝이다.
        """
        found = set()
        for seed in PellService.fundamental_solutions(gap):
            for direction, start in (
                (Direction.FORWARD, seed),
                (Direction.BACKWARD, PellService.step(seed, Direction.BACKWARD)),
            ):
                opposite = Direction.BACKWARD if direction is Direction.FORWARD else Direction.FORWARD
                prev_z = SequenceService.to_row(PellService.step(start, opposite), gap).z
                current = start
                while True:
                    row = SequenceService.to_row(current, gap)
                    if row.z > z_max and row.z >= prev_z:
                        break
                    if row.z <= z_max and row.is_primitive:
                        found.add(row.z)
                    prev_z = row.z
                    current = PellService.step(current, direction)
        return sorted(found)
