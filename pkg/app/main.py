import argparse
import asyncio
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.core.config import get_settings
from app.core.errors import DomainError
from app.models import RecurrenceSpec
from app.schemas import CandidateStatus, OutputFormat
from app.services.oracle_service import OracleService
from app.services.output_service import OutputService
from app.services.pell_service import PellService
from app.services.sequence_service import SequenceService
from app.services.triple_service import TripleService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

STITCHED = "stitched"


def _rows_for(gap: int, seed: Optional[str], k_from: int, k_to: int):
    # "stitched" 는 첫 번째 기본해 궤도를 음수 k까지 늘린 것
    if seed == STITCHED:
        SequenceService.resolve_seed(gap, None)
        return SequenceService.stitched_sequence(gap, k_from, k_to, 0)
    index = SequenceService.resolve_seed(gap, seed)
    return SequenceService.stitched_sequence(gap, k_from, k_to, index)


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise DomainError(f"--count must be positive, got {args.count}")
    if args.seed == STITCHED:
        rows = _rows_for(args.gap, STITCHED, -args.count, args.count)
    else:
        rows = _rows_for(args.gap, args.seed, 1, args.count)
    # (0,1,1) 같은 다리 0 앵커 행은 목록에서 뺀다
    rows = [row for row in rows if not row.is_degenerate]
    OutputService.emit(OutputService.to_records(rows), OutputFormat(args.format), sys.stdout)
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    rows = _rows_for(args.gap, args.seed, args.k_from, args.k_to)
    OutputService.emit(OutputService.to_records(rows), OutputFormat(args.format), sys.stdout)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = asyncio.run(OracleService(args.workers).cross_check(args.gap, args.z_max))
    if report.equal:
        print(f"EQUAL ({report.oracle_count} triples)")
        return EXIT_OK

    print(f"MISMATCH (oracle {report.oracle_count}, sequences {report.sequence_count})")
    print(f"missing: {' '.join(map(str, report.missing))}")
    print(f"extra: {' '.join(map(str, report.extra))}")
    return EXIT_FAILED


def cmd_pell(args: argparse.Namespace) -> int:
    solutions = PellService.fundamental_solutions(args.n)
    if not solutions:
        print("no solutions")
        return EXIT_OK

    for sol in solutions:
        triple = TripleService.params_to_triple(TripleService.pell_to_params(sol), args.n)
        print(f"({sol.p},{sol.q}) norm {sol.norm:+d} -> ({triple.x},{triple.y},{triple.z})")
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    service = OracleService()
    verdicts = asyncio.run(
        service.classify_candidates(args.a0, args.a1, args.offset, z_max=args.z_max, horizon=args.horizon)
    )
    if not verdicts:
        print("no candidates")
        return EXIT_FAILED

    for verdict in verdicts:
        line = f"{verdict.A} {verdict.status.value}"
        if verdict.status is CandidateStatus.REJECT:
            line += f" (a{verdict.failing_n}={verdict.value}) {verdict.reason}"
        print(line)

        if args.show_closed_form:
            try:
                spec = RecurrenceSpec(A=verdict.A, a0=args.a0, a1=args.a1, offset=args.offset)
                cf = SequenceService.characteristic(spec)
            except (ValidationError, DomainError) as e:
                print(f"  closed form unavailable: {e}")
                continue
            print(f"  x+ = {cf.x_plus}, x- = {cf.x_minus}, a = {cf.a}, b = {cf.b}")

    # 후보가 모두 거절되면 예측 실패로 본다
    return EXIT_OK if any(v.accepted for v in verdicts) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triplegap",
        description="다리 차이가 고정된 원시 피타고라스 세 쌍: Pell 기본해, 수열, 브루트포스 교차 검증",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    formats = [f.value for f in OutputFormat]

    p = sub.add_parser("enumerate", help="시드 수열의 세 쌍을 k=1부터 출력")
    p.add_argument("--gap", type=int, default=7)
    p.add_argument("--seed", default=None, help="k=1 빗변으로 고르는 시드 (예: 13, 17) 또는 stitched")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--format", choices=formats, default=OutputFormat.JSON.value)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("verify", help="z ≤ z-max 에서 오라클과 수열의 빗변 집합을 비교")
    p.add_argument("--gap", type=int, default=7)
    p.add_argument("--z-max", dest="z_max", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("pell", help="p² − 2q² = ±N 의 기본해와 대응하는 세 쌍")
    p.add_argument("n", type=int)
    p.set_defaults(handler=cmd_pell)

    p = sub.add_parser("predict", help="(a0, a1, offset) 에서 점화식 계수 A 후보를 예측하고 판정")
    p.add_argument("a0", type=int)
    p.add_argument("a1", type=int)
    p.add_argument("offset", type=int)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--z-max", dest="z_max", type=int, default=None)
    p.add_argument("--show-closed-form", action="store_true")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("table", help="k 구간의 양방향 궤도 표 (가상 행 포함)")
    p.add_argument("--gap", type=int, default=7)
    p.add_argument("--seed", default=None)
    p.add_argument("--from", dest="k_from", type=int, default=-3)
    p.add_argument("--to", dest="k_to", type=int, default=3)
    p.add_argument("--format", choices=formats, default=OutputFormat.TABLE.value)
    p.set_defaults(handler=cmd_table)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    try:
        settings = get_settings()
    except ValidationError as e:
        # 잘못된 TRIPLEGAP_* 값
        print(f"error: invalid settings: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=settings.log_level.upper(),
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse 사용법 오류는 2, --help 는 0
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        return args.handler(args)
    except DomainError as e:
        logger.error(f"❌ {args.command} 실패: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
