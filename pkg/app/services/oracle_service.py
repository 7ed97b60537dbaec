import asyncio
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from app.core.config import get_settings
from app.core.errors import DomainError
from app.models import PythTriple, RecurrenceSpec
from app.schemas import CandidateStatus, CandidateVerdict, CrossCheckReport, OracleReport
from app.services.sequence_service import SequenceService
from app.utils.arith import SQUARE_MOD_64, exact_sqrt, require_odd_gap

logger = logging.getLogger(__name__)

Hit = Tuple[int, int, int]


def scan_chunk(gap: int, m_start: int, m_stop: int) -> List[Hit]:
    """
    m ∈ [m_start, m_stop) 에서 m² + (m+gap)² 이 완전제곱이고 gcd(m, gap) = 1 인 m 을 찾는다.
    Pell/수열 코드와 경로를 공유하지 않는 독립 검증용 스캔 (프로세스 풀에서 실행되므로 모듈 함수).
    """
    hits: List[Hit] = []
    total = m_start * m_start + (m_start + gap) * (m_start + gap)
    # total(m+1) − total(m) = 4m + 2 + 2·gap
    delta = 4 * m_start + 2 + 2 * gap
    for m in range(m_start, m_stop):
        if SQUARE_MOD_64[total & 63]:
            z = exact_sqrt(total)
            if z is not None and math.gcd(m, gap) == 1:
                hits.append((m, m + gap, z))
        total += delta
        delta += 4
    return hits


class OracleService:
    """브루트포스 오라클: 빗변 상한까지 다리 차이가 gap인 원시 세 쌍을 모두 찾는다"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = self._check_workers(get_settings().oracle_workers if workers is None else workers)

    @staticmethod
    def _check_workers(workers: int) -> int:
        if workers < 1:
            raise DomainError(f"workers must be at least 1, got {workers}")
        return workers

    @staticmethod
    def max_leg(gap: int, z_max: int) -> int:
        """m² + (m+gap)² ≤ z_max² 인 최대 m (없으면 0)"""
        limit = z_max * z_max
        disc = 2 * limit - gap * gap
        if disc < 0:
            return 0
        m = max((math.isqrt(disc) - gap) // 2, 0)
        while m >= 1 and m * m + (m + gap) ** 2 > limit:
            m -= 1
        while (m + 1) ** 2 + (m + 1 + gap) ** 2 <= limit:
            m += 1
        return m

    @staticmethod
    def split_range(m_max: int, chunks: int) -> List[Tuple[int, int]]:
        """[1, m_max] 를 chunks 개의 반열린 구간으로 나눈다 (빈 구간 제외)"""
        if chunks < 1:
            raise DomainError(f"chunks must be at least 1, got {chunks}")
        if m_max <= 0:
            return []
        size = -(-m_max // chunks)
        return [(lo, min(lo + size, m_max + 1)) for lo in range(1, m_max + 1, size)]

    async def enumerate(self, gap: int, z_max: int, workers: Optional[int] = None) -> OracleReport:
        """
            [Orchestrator]
            m 범위를 청크로 나눠 (워커가 2개 이상이면 프로세스 풀에서) 병렬 스캔하고,
            결과는 z로 정렬해 합치므로 워커 수와 무관하게 항상 같은 출력이 나온다.
        """
        require_odd_gap(gap)
        if z_max < 1:
            raise DomainError(f"z_max must be positive, got {z_max}")
        workers = self.workers if workers is None else self._check_workers(workers)
        start_time = time.time()

        # 1. [CHUNKING] 작은 다리 m 의 범위를 워커 수만큼 분할
        m_max = self.max_leg(gap, z_max)
        ranges = self.split_range(m_max, workers)
        logger.info(f"🔥 오라클 스캔 시작: gap={gap}, z_max={z_max}, m<={m_max} / {len(ranges)}개 청크")

        # 2. [SCAN] 워커 1개면 현재 프로세스에서 바로 실행
        hits: List[Hit] = []
        if workers == 1 or len(ranges) <= 1:
            for lo, hi in ranges:
                hits.extend(scan_chunk(gap, lo, hi))
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=workers) as pool:
                tasks = [loop.run_in_executor(pool, scan_chunk, gap, lo, hi) for lo, hi in ranges]
                completed = 0
                # 끝나는 순서대로 받되, 병합 순서는 아래 정렬이 결정한다
                for task in asyncio.as_completed(tasks):
                    hits.extend(await task)
                    completed += 1
                    percent = (completed / len(tasks)) * 100
                    logger.info(f"🚀 스캔 진행률: {percent:.1f}% ({completed}/{len(tasks)} 청크)")

        # 3. [MERGE] z 오름차순 정렬
        hits.sort(key=lambda hit: hit[2])
        triples = [PythTriple(x=x, y=y, z=z, gap=gap) for x, y, z in hits]

        elapsed = time.time() - start_time
        logger.info(f"🎉 오라클 스캔 완료: {len(triples)}개 원시 세 쌍 ({elapsed:.2f}s)")
        return OracleReport(gap=gap, z_max=z_max, triples=triples, elapsed=elapsed)

    async def cross_check(self, gap: int, z_max: int, workers: Optional[int] = None) -> CrossCheckReport:
        """오라클 z 집합과, 모든 기본해 궤도(양방향)에서 얻은 z 집합을 원소 단위로 비교"""
        report = await self.enumerate(gap, z_max, workers)
        oracle_z = set(report.hypotenuses)
        sequence_z = set(SequenceService.hypotenuses_up_to(gap, z_max))

        result = CrossCheckReport(
            gap=gap,
            z_max=z_max,
            oracle_count=len(oracle_z),
            sequence_count=len(sequence_z),
            missing=sorted(oracle_z - sequence_z),
            extra=sorted(sequence_z - oracle_z),
        )
        if result.equal:
            logger.info(f"✅ gap={gap}, z<={z_max}: 두 집합 일치 ({result.oracle_count}개)")
        else:
            logger.warning(f"❌ gap={gap}: missing={result.missing[:10]} extra={result.extra[:10]}")
        return result

    async def classify_candidates(
        self,
        a0: int,
        a1: int,
        offset: int,
        z_max: Optional[int] = None,
        horizon: Optional[int] = None,
    ) -> List[CandidateVerdict]:
        """
        예측된 A 후보들을 판정한다.
        정수성 검증을 통과한 후보는 항들이 모두 오라클 빗변인지 확인하고,
        가장 작은 A는 ACCEPT, 그 항 집합의 진부분집합만 만드는 더 큰 A는 ACCEPT-SUBSEQUENCE.
        """
        settings = get_settings()
        z_max = z_max or settings.candidate_z_max
        horizon = horizon or settings.validation_horizon

        gap = exact_sqrt(offset)
        if gap is None:
            raise DomainError(f"offset {offset} is not a perfect square")
        require_odd_gap(gap)

        verdicts = [
            SequenceService.validate_candidate(A, a0, a1, offset, horizon)
            for A in SequenceService.predict_recurrence(a0, a1, offset)
        ]
        if not any(v.accepted for v in verdicts):
            return verdicts

        oracle_z = set((await self.enumerate(gap, z_max)).hypotenuses)

        accepted_terms: Optional[set] = None
        for i, verdict in enumerate(verdicts):
            if not verdict.accepted:
                continue
            spec = RecurrenceSpec(A=verdict.A, a0=a0, a1=a1, offset=offset)
            terms = SequenceService.terms_up_to(spec, z_max)
            outside = [(n, t) for n, t in enumerate(terms, start=1) if t not in oracle_z]
            if outside:
                n, term = outside[0]
                verdicts[i] = verdict.model_copy(update={
                    "status": CandidateStatus.REJECT,
                    "failing_n": n,
                    "value": term,
                    "reason": f"not a primitive hypotenuse with gap {gap}",
                })
                continue

            term_set = set(terms)
            if accepted_terms is None:
                accepted_terms = term_set
            elif term_set < accepted_terms:
                verdicts[i] = verdict.model_copy(update={"status": CandidateStatus.ACCEPT_SUBSEQUENCE})

        return verdicts
