import csv
import io
import json
from typing import Iterable, Iterator, List, TextIO

from app.models import SequenceRow
from app.schemas import OUTPUT_FIELDS, OutputFormat, OutputRecord


class OutputService:
    """SequenceRow → json-lines / csv / 정렬된 표 출력"""

    @staticmethod
    def to_records(rows: Iterable[SequenceRow]) -> List[OutputRecord]:
        return [OutputRecord.from_row(row) for row in rows]

    @staticmethod
    def _cell(value) -> str:
        # 로케일 무관, 정수는 자릿수 그대로, bool은 소문자
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    @staticmethod
    def json_lines(records: Iterable[OutputRecord]) -> Iterator[str]:
        for record in records:
            yield json.dumps(record.model_dump(), ensure_ascii=False) + "\n"

    @staticmethod
    def csv_lines(records: Iterable[OutputRecord]) -> Iterator[str]:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(OUTPUT_FIELDS)
        yield buffer.getvalue()
        for record in records:
            buffer.seek(0)
            buffer.truncate()
            writer.writerow([OutputService._cell(getattr(record, name)) for name in OUTPUT_FIELDS])
            yield buffer.getvalue()

    @staticmethod
    def table_lines(records: Iterable[OutputRecord]) -> Iterator[str]:
        # 열 너비를 맞춰야 하므로 표 형식만 전체를 모은 뒤 출력
        cells = [list(OUTPUT_FIELDS)]
        cells += [[OutputService._cell(getattr(r, name)) for name in OUTPUT_FIELDS] for r in records]
        widths = [max(len(row[i]) for row in cells) for i in range(len(OUTPUT_FIELDS))]
        for row in cells:
            yield "  ".join(cell.rjust(width) for cell, width in zip(row, widths)) + "\n"

    @staticmethod
    def emit(records: Iterable[OutputRecord], fmt: OutputFormat, stream: TextIO) -> None:
        writer = {
            OutputFormat.JSON: OutputService.json_lines,
            OutputFormat.CSV: OutputService.csv_lines,
            OutputFormat.TABLE: OutputService.table_lines,
        }[fmt]
        for line in writer(records):
            stream.write(line)
            stream.flush()

    @staticmethod
    def parse_json_lines(text: str) -> List[OutputRecord]:
        return [OutputRecord.model_validate(json.loads(line)) for line in text.splitlines() if line.strip()]
