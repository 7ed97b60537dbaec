import os
from pathlib import Path

import pytest

from app.core.config import get_settings

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    # 테스트마다 .env / 환경변수 영향을 끊고 설정 캐시를 비운다
    for name in list(os.environ):
        if name.startswith("TRIPLEGAP_"):
            monkeypatch.delenv(name)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def golden():
    def read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text(encoding="utf-8")
    return read
