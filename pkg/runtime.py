"""
runtime.py
--------------------------------
Shared plumbing for the diagram compiler:
- Config: defaults plus optional key=value overrides from a dotenv-style file
- Notifier: timestamped status lines on stderr (stdout is kept for results)
- Error types mapped to CLI exit codes:
    ParseError       -> 1
    ValidationError  -> 2
    AssertionError   -> 3 (internal invariant broken)
"""

import os
import sys
from datetime import datetime

from dotenv import dotenv_values


# ============================================================
# 1️⃣ Errors
# ============================================================
class ParseError(ValueError):
    """Syntax or lexical problem in an input document (1-based position)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"line {self.line}, column {self.column}: {self.message}"


class ValidationError(ValueError):
    """Well-formed input that violates a structural requirement."""


class ConfigError(ValidationError):
    pass


EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


# ============================================================
# 2️⃣ Configuration
# ============================================================
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off", ""}


class Config:
    FORMATS = ("text", "json", "dot")

    def __init__(self):
        self.DEFAULT_FORMAT = "text"
        self.SEARCH_BOUND = 2
        self.VERBOSE = False
        self.QUIET = False
        self.BATCH_WORKERS = 4
        self.TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M:%S"

        self.source = None
        self.ignored_keys: list[str] = []

    @classmethod
    def load(cls, path: str | None = None) -> "Config":
        """Defaults overridden by a key=value file; os.environ is never consulted."""
        cfg = cls()
        path = path or ".env"
        if os.path.isfile(path):
            cfg.source = path
            cfg._apply(dotenv_values(path))
        elif path != ".env":
            raise ConfigError(f"config file {path} not found")
        return cfg

    def _apply(self, values: dict):
        for key, raw in values.items():
            raw = (raw or "").strip()
            if key == "DEFAULT_FORMAT":
                if raw not in self.FORMATS:
                    raise ConfigError(f"DEFAULT_FORMAT must be one of {', '.join(self.FORMATS)}, got {raw!r}")
                self.DEFAULT_FORMAT = raw
            elif key in ("SEARCH_BOUND", "BATCH_WORKERS"):
                try:
                    value = int(raw)
                except ValueError:
                    raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
                if value < 1:
                    raise ConfigError(f"{key} must be positive, got {value}")
                setattr(self, key, value)
            elif key in ("VERBOSE", "QUIET"):
                lowered = raw.lower()
                if lowered not in _TRUE | _FALSE:
                    raise ConfigError(f"{key} must be a boolean, got {raw!r}")
                setattr(self, key, lowered in _TRUE)
            elif key == "TIMESTAMP_FORMAT":
                self.TIMESTAMP_FORMAT = raw
            else:
                self.ignored_keys.append(key)


# ============================================================
# 3️⃣ Notifier
# ============================================================
class Notifier:
    def __init__(self, cfg: Config, stream=None):
        self.cfg = cfg
        self.stream = stream
        self.sent: list[str] = []

    def _emit(self, message: str):
        timestamp = datetime.now().strftime(self.cfg.TIMESTAMP_FORMAT)
        print(f"[{timestamp}] {message}", file=self.stream or sys.stderr)

    def send(self, message: str):
        self.sent.append(message)
        if not self.cfg.QUIET:
            self._emit(message)

    def debug(self, message: str):
        if self.cfg.VERBOSE:
            self._emit(f"[DEBUG] {message}")

    def error(self, message: str):
        self._emit(f"[ERROR] {message}")
