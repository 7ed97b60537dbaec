class TripleGapError(Exception):
    """패키지 공통 예외의 최상위 타입"""


class DomainError(TripleGapError, ValueError):
    """입력값이 연산의 전제 조건을 만족하지 않을 때 (짝수 gap, 0의 역원 등)"""


class UnknownSeedError(DomainError):
    """해당 gap에서 시드 선택자를 찾을 수 없을 때"""


class ConsistencyError(TripleGapError, ArithmeticError):
    """점화식과 닫힌 형태가 서로 어긋나는 등 내부 검증 실패"""
