import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction

from .errors import InvalidArgumentError

_RESERVED = (
    "msg", "args", "levelname", "levelno", "pathname", "filename", "module",
    "exc_info", "exc_text", "stack_info", "lineno", "funcName", "created",
    "msecs", "relativeCreated", "thread", "threadName", "processName",
    "process", "name", "taskName",
)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, set, frozenset)):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def _extras(record: logging.LogRecord) -> dict:
    out = {}
    for k, v in record.__dict__.items():
        if k in _RESERVED or k.startswith("_"):
            continue
        out[k] = _jsonable(v)
    return out


class JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
        }
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        payload.update(_extras(record))
        return json.dumps(payload, ensure_ascii=False, default=str)


class PlainFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        extra = " ".join(f"{k}={v}" for k, v in _extras(record).items())
        line = f"{record.levelname:<7} {record.name}: {record.getMessage()}"
        if extra:
            line = f"{line} {extra}"
        if record.exc_info:
            line = f"{line}\n{self.formatException(record.exc_info)}"
        return line


def setup_logging(level: str, json_output: bool = True) -> None:
    root = logging.getLogger()
    name = str(level).upper()
    if not isinstance(logging.getLevelName(name), int):
        raise InvalidArgumentError(f"unknown log level {level!r}")
    root.setLevel(name)

    # stdout carries tables
    h = logging.StreamHandler(sys.stderr)
    h.setFormatter(JsonFormatter() if json_output else PlainFormatter())

    root.handlers.clear()
    root.addHandler(h)
