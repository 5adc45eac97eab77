"""
Runtime configuration read from the environment (and a local .env file).

    WILDCERT_SEED        integer seed for the property suites (default 42)
    WILDCERT_PROFILE     small | full (default small)
    WILDCERT_LOG_LEVEL   logging level name (default WARNING)
    WILDCERT_REPORT_DIR  optional directory for JSON copies of reports
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, field_validator

from algebra.errors import PreconditionError

# Configure logging
logger = logging.getLogger(__name__)


PROFILES = ("small", "full")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    seed: int = 42
    profile: str = "small"
    log_level: str = "WARNING"
    report_dir: Optional[str] = None

    @field_validator("profile")
    @classmethod
    def known_profile(cls, value: str) -> str:
        if value not in PROFILES:
            raise ValueError(f"profile must be one of {', '.join(PROFILES)}")
        return value

    @field_validator("log_level")
    @classmethod
    def known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return value

    @field_validator("report_dir")
    @classmethod
    def blank_is_none(cls, value: Optional[str]) -> Optional[str]:
        return value or None


def load_settings(**overrides) -> Settings:
    """
    Build Settings from WILDCERT_* variables; non-None overrides (CLI flags) win.

    Raises:
        PreconditionError: a value does not validate
    """
    load_dotenv()
    values = {
        "seed": os.getenv("WILDCERT_SEED", "42"),
        "profile": os.getenv("WILDCERT_PROFILE", "small"),
        "log_level": os.getenv("WILDCERT_LOG_LEVEL", "WARNING"),
        "report_dir": os.getenv("WILDCERT_REPORT_DIR"),
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return Settings.model_validate(values)
    except ValidationError as e:
        raise PreconditionError(f"invalid configuration: {e.errors()[0]['msg']}") from None
