import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

ENV_PREFIX = "TRIPLEGAP_"


class Settings(BaseModel):
    oracle_workers: int = Field(default=1, ge=1, description="오라클 스캔 워커(청크) 개수")
    validation_horizon: int = Field(default=16, ge=2, description="후보 A 검증 시 확인할 최대 n")
    candidate_z_max: int = Field(default=100_000, ge=1, description="후보 분류용 오라클 상한 z")
    log_level: str = Field(default="INFO", description="로그 레벨")


@lru_cache
def get_settings() -> Settings:
    # .env 또는 환경변수에서 값을 읽고, 없으면 기본값 사용
    overrides = {}
    for name in Settings.model_fields:
        value = os.getenv(ENV_PREFIX + name.upper())
        if value is not None:
            overrides[name] = value
    return Settings.model_validate(overrides)
