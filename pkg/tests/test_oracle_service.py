import asyncio

import pytest

from app.core.config import get_settings
from app.core.errors import DomainError
from app.schemas import CandidateStatus
from app.services.oracle_service import OracleService, scan_chunk
from app.services.triple_service import TripleService


def enumerate_triples(gap, z_max, workers=1):
    report = asyncio.run(OracleService(workers).enumerate(gap, z_max))
    return [(t.x, t.y, t.z) for t in report.triples]


def test_max_leg():
    assert OracleService.max_leg(7, 13) == 5
    assert OracleService.max_leg(7, 12) == 4
    assert OracleService.max_leg(7, 5) == 0
    assert OracleService.max_leg(1, 1) == 0


@pytest.mark.parametrize("m_max, chunks", [(10, 3), (10, 10), (3, 16), (100, 1), (0, 4)])
def test_split_range_covers_everything_once(m_max, chunks):
    ranges = OracleService.split_range(m_max, chunks)
    covered = [m for lo, hi in ranges for m in range(lo, hi)]
    assert covered == list(range(1, m_max + 1))
    assert len(ranges) <= chunks


def test_scan_chunk_is_additive():
    whole = scan_chunk(7, 1, 5000)
    parts = scan_chunk(7, 1, 1234) + scan_chunk(7, 1234, 3000) + scan_chunk(7, 3000, 5000)
    assert parts == whole
    assert whole[:2] == [(5, 12, 13), (8, 15, 17)]


def test_enumerate_small():
    assert enumerate_triples(7, 100) == [(5, 12, 13), (8, 15, 17), (48, 55, 73), (65, 72, 97)]
    assert enumerate_triples(1, 30) == [(3, 4, 5), (20, 21, 29)]


def test_enumerate_skips_non_primitive():
    # (21, 28, 35) 는 다리 차이가 7이지만 원시가 아니다
    assert all(z != 35 for _, _, z in enumerate_triples(7, 100))


def test_enumerate_empty_gap():
    assert enumerate_triples(3, 10_000) == []


@pytest.mark.parametrize("gap, z_max", [(8, 100), (7, 0)])
def test_enumerate_bad_input(gap, z_max):
    with pytest.raises(DomainError):
        asyncio.run(OracleService(1).enumerate(gap, z_max))


@pytest.mark.parametrize("workers", [4, 16])
def test_enumerate_is_independent_of_workers(workers):
    assert enumerate_triples(7, 100_000, workers) == enumerate_triples(7, 100_000, 1)


def test_oracle_triples_are_primitive_with_companion():
    report = asyncio.run(OracleService(1).enumerate(7, 100_000))
    assert report.hypotenuses == sorted(report.hypotenuses)
    for t in report.triples:
        assert TripleService.is_primitive_triple(t)
        companion = TripleService.companion_square(t.z, 7)
        assert companion is not None
        assert companion.m == t.x
        assert companion.d == t.x + t.y


def test_workers_default_from_settings(monkeypatch):
    monkeypatch.setenv("TRIPLEGAP_ORACLE_WORKERS", "3")
    get_settings.cache_clear()
    assert OracleService().workers == 3
    assert OracleService(5).workers == 5


@pytest.mark.parametrize("gap, z_max, count", [(7, 100_000, 11), (1, 1_000_000, 7), (3, 100_000, 0)])
def test_cross_check_equal(gap, z_max, count):
    report = asyncio.run(OracleService(1).cross_check(gap, z_max))
    assert report.equal
    assert report.oracle_count == report.sequence_count == count


@pytest.mark.slow
def test_cross_check_ten_million():
    report = asyncio.run(OracleService(4).cross_check(7, 10**7))
    assert report.equal
    assert report.oracle_count == 16


def statuses(verdicts):
    return [(v.A, v.status) for v in verdicts]


def test_classify_gap7_candidates():
    verdicts = asyncio.run(OracleService(1).classify_candidates(5, 13, 49))
    assert [v.status for v in verdicts] == [CandidateStatus.REJECT, CandidateStatus.ACCEPT]
    assert verdicts[0].value * 49 == 2693


def test_classify_cimmino_candidates():
    verdicts = asyncio.run(OracleService(1).classify_candidates(1, 5, 1))
    assert [v.status for v in verdicts] == [CandidateStatus.ACCEPT, CandidateStatus.ACCEPT_SUBSEQUENCE]
    assert [v.A for v in verdicts] == [6, 34]


def test_classify_second_seed_candidates():
    verdicts = asyncio.run(OracleService(1).classify_candidates(5, 17, 49, z_max=10_000))
    assert statuses(verdicts)[0][1] is CandidateStatus.ACCEPT
    assert statuses(verdicts)[1][1] is CandidateStatus.REJECT


@pytest.mark.parametrize("offset", [50, 4])
def test_classify_bad_offset(offset):
    with pytest.raises(DomainError):
        asyncio.run(OracleService(1).classify_candidates(5, 13, offset))


@pytest.mark.parametrize("workers", [0, -1])
def test_workers_must_be_positive(workers):
    with pytest.raises(DomainError):
        OracleService(workers)
    with pytest.raises(DomainError):
        asyncio.run(OracleService(1).enumerate(7, 100, workers=workers))
    with pytest.raises(DomainError):
        OracleService.split_range(100, workers)
