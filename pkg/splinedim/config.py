import os
from dataclasses import dataclass

from dotenv import load_dotenv

from .errors import ConfigError

load_dotenv()

ORDERINGS = ("input", "lex", "search")
FORMATS = ("text", "csv", "json")
LOG_LEVELS = ("debug", "info", "warning", "error", "critical")


def _opt(name: str, default: str = "") -> str:
    return os.getenv(name, default)


def _int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        v = int(raw.strip())
    except ValueError:
        raise ConfigError(f"ENV {name} must be an integer, got {raw!r}")
    if v < minimum:
        raise ConfigError(f"ENV {name} must be >= {minimum}, got {v}")
    return v


def _bool(name: str, default: bool = False) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    v = raw.strip().lower()
    if v in {"1", "true", "yes", "y", "on"}:
        return True
    if v in {"0", "false", "no", "n", "off", ""}:
        return False
    return True


def _choice(name: str, default: str, allowed) -> str:
    v = _opt(name, default).strip().lower()
    if v not in allowed:
        raise ConfigError(f"ENV {name} must be one of {', '.join(allowed)}, got {v!r}")
    return v


@dataclass(frozen=True)
class Config:
    # logging
    log_level: str
    log_json: bool

    # bounds
    ordering: str
    search_budget: int
    search_seed: int

    # runtime
    workers: int
    output_format: str


def load_config() -> Config:
    return Config(
        log_level=_choice("LOG_LEVEL", "info", LOG_LEVELS).upper(),
        log_json=_bool("LOG_JSON", default=True),

        ordering=_choice("SPLINEDIM_ORDERING", "lex", ORDERINGS),
        search_budget=_int("SPLINEDIM_SEARCH_BUDGET", 720, minimum=1),
        search_seed=_int("SPLINEDIM_SEARCH_SEED", 0),

        workers=_int("SPLINEDIM_WORKERS", 1, minimum=1),
        output_format=_choice("SPLINEDIM_FORMAT", "text", FORMATS),
    )
