import os
import sys
from datetime import datetime

from .errors import ConfigError

__all__ = (
    "DEFAULT_SEED",
    "get_int_from_env",
    "time_now",
    "log",
    "format_error",
    "parse_int",
)

DEFAULT_SEED = 0x0D0DA203


def parse_int(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise ConfigError(f"Not an integer: {text!r}") from None


def get_int_from_env(key, default=None):
    if (value := os.getenv(key)) is None:
        if default is None:
            raise ConfigError("Missing environment variable " + key)
        return default
    return parse_int(value)


def time_now() -> datetime:
    return datetime.now().astimezone()


def log(msg):
    print(f"[{time_now()}] {msg}", file=sys.stderr)


def format_error(task_name, error):
    return f"Error during task `{task_name}`: `{type(error).__name__}`\n{error}"
