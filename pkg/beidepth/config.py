"""
Runtime settings read from ``BEIDEPTH_*`` environment variables.

Command-line flags override the environment through ``Settings._replace``.
"""

from __future__ import annotations

import logging
import os
from typing import TYPE_CHECKING, NamedTuple

if TYPE_CHECKING:
    from collections.abc import Mapping

logger = logging.getLogger(__name__)

ENV_ORACLE_VAR_LIMIT = "BEIDEPTH_ORACLE_VAR_LIMIT"
ENV_SWEEP_BUDGET = "BEIDEPTH_SWEEP_BUDGET"
ENV_ORACLE_MAX_N = "BEIDEPTH_SWEEP_ORACLE_MAX_N"
ENV_LOG_LEVEL = "BEIDEPTH_LOG_LEVEL"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(NamedTuple):
    #: Largest polynomial ring (2n variables) the oracle accepts.
    oracle_var_limit: int = 16

    #: Wall-clock cap of a sweep in seconds; ``None`` means unbounded.
    sweep_budget: float | None = None

    #: Largest vertex count a sweep runs the oracle on.
    oracle_max_n: int = 6

    log_level: str = "WARNING"


DEFAULT_SETTINGS = Settings()


def _positive_int(environ: Mapping[str, str], name: str, default: int) -> int:
    raw = environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def _budget(environ: Mapping[str, str]) -> float | None:
    raw = environ.get(ENV_SWEEP_BUDGET)
    if raw is None or not raw.strip():
        return None
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{ENV_SWEEP_BUDGET} must be a number of seconds, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{ENV_SWEEP_BUDGET} must be positive, got {value}")
    return value


def load_settings(environ: Mapping[str, str] | None = None) -> Settings:
    """Build :class:`Settings` from `environ` (``os.environ`` by default).

    >>> from beidepth.config import load_settings
    >>> load_settings({"BEIDEPTH_ORACLE_VAR_LIMIT": "12"}).oracle_var_limit
    12
    """
    if environ is None:
        environ = os.environ
    level = environ.get(ENV_LOG_LEVEL, DEFAULT_SETTINGS.log_level).upper()
    if level not in _LOG_LEVELS:
        raise ValueError(f"{ENV_LOG_LEVEL} must be one of {', '.join(_LOG_LEVELS)}")
    settings = Settings(
        oracle_var_limit=_positive_int(
            environ, ENV_ORACLE_VAR_LIMIT, DEFAULT_SETTINGS.oracle_var_limit
        ),
        sweep_budget=_budget(environ),
        oracle_max_n=_positive_int(
            environ, ENV_ORACLE_MAX_N, DEFAULT_SETTINGS.oracle_max_n
        ),
        log_level=level,
    )
    logger.debug("loaded %r", settings)
    return settings


__all__ = [
    "DEFAULT_SETTINGS",
    "ENV_LOG_LEVEL",
    "ENV_ORACLE_MAX_N",
    "ENV_ORACLE_VAR_LIMIT",
    "ENV_SWEEP_BUDGET",
    "Settings",
    "load_settings",
]
