import os
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

from .errors import InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 250_000
DEFAULT_PRODUCT_CACHE_SIZE = 200_000
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


@dataclass(frozen=True)
class Settings:
    """Настройки процесса, прочитанные из окружения (.env)"""
    budget: int = DEFAULT_BUDGET
    log_level: str = "INFO"
    log_file: Optional[str] = "iwahori.log"
    cache_dir: Optional[str] = None
    product_cache_size: int = DEFAULT_PRODUCT_CACHE_SIZE
    progress: bool = False


def _int_var(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise InvalidInputError(f"Environment variable {name} must be an integer, got {raw!r}") from e
    if value < 0:
        raise InvalidInputError(f"Environment variable {name} must be non-negative, got {value}")
    return value


def _bool_var(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Загружает .env и собирает Settings.

    Returns:
        Settings: настройки, закэшированные на время жизни процесса

    Raises:
        InvalidInputError: если числовая переменная окружения некорректна
    """
    if not load_dotenv():
        logger.warning("No .env file found or it's empty")

    log_file = os.getenv("IWAHORI_LOG_FILE", "iwahori.log")
    settings = Settings(
        budget=_int_var("IWAHORI_BUDGET", DEFAULT_BUDGET),
        log_level=os.getenv("IWAHORI_LOG_LEVEL", "INFO").upper(),
        log_file=log_file or None,
        cache_dir=os.getenv("IWAHORI_CACHE_DIR") or None,
        product_cache_size=_int_var("IWAHORI_PRODUCT_CACHE_SIZE", DEFAULT_PRODUCT_CACHE_SIZE),
        progress=_bool_var("IWAHORI_PROGRESS"),
    )
    logger.debug(f"Loaded settings: {settings}")
    return settings


def setup_logging(settings: Settings) -> None:
    """Настройка логирования: stderr плюс файл лога"""
    handlers = [logging.StreamHandler()]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file, encoding='utf-8'))
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
