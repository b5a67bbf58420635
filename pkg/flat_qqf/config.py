import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    log_level: str = "WARNING"
    max_workers: Optional[int] = None
    sample_range: int = 3
    sample_cap: int = 20000


def _int_env(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}")
        return default


def get_settings() -> Settings:
    """Read settings from the environment (a .env file is loaded at import)."""
    return Settings(
        log_level=os.getenv("FLAT_QQF_LOG_LEVEL", "WARNING").upper(),
        max_workers=_int_env("FLAT_QQF_MAX_WORKERS", None),
        sample_range=_int_env("FLAT_QQF_SAMPLE_RANGE", 3),
        sample_cap=_int_env("FLAT_QQF_SAMPLE_CAP", 20000),
    )


@lru_cache(maxsize=1)
def get_executor() -> ThreadPoolExecutor:
    """Shared pool for independent per-pair computations; tasks never submit further work."""
    settings = get_settings()
    return ThreadPoolExecutor(max_workers=settings.max_workers, thread_name_prefix="flat_qqf")
