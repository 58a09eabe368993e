import logging
import os
import sys
from dataclasses import dataclass
from typing import Mapping, Optional

from dotenv import load_dotenv

from checker.contribution import FULL_CONTRIBUTION_LIMIT
from checker.oracle import BRUTE_FORCE_LIMIT
from core.errors import ConfigError
from decomposition.graph import CANDIDATE_CAP

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


@dataclass(frozen=True)
class Settings:
    candidate_cap: int = CANDIDATE_CAP
    log_level: str = "WARNING"
    log_file: Optional[str] = None
    full_contribution_limit: int = FULL_CONTRIBUTION_LIMIT
    brute_force_limit: int = BRUTE_FORCE_LIMIT


def _positive_int(environ: Mapping[str, str], name: str, default: int) -> int:
    raw = environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    """Read settings from the environment, after loading a .env file when one exists."""
    if environ is None:
        load_dotenv()
        environ = os.environ
    level = environ.get("SOMAS_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"SOMAS_LOG_LEVEL must be a logging level name, got {level!r}")
    return Settings(
        candidate_cap=_positive_int(environ, "SOMAS_CANDIDATE_CAP", CANDIDATE_CAP),
        log_level=level,
        log_file=environ.get("SOMAS_LOG_FILE") or None,
        full_contribution_limit=_positive_int(environ, "SOMAS_FULL_CONTRIBUTION_LIMIT", FULL_CONTRIBUTION_LIMIT),
        brute_force_limit=_positive_int(environ, "SOMAS_BRUTE_FORCE_LIMIT", BRUTE_FORCE_LIMIT),
    )


def setup_logging(settings: Settings) -> None:
    """Configure logging. Logs go to stderr; stdout carries command results."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
