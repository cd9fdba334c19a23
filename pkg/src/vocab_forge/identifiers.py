"""Statement identifiers and vocabulary version numbers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import VocabForgeError

STATEMENT_ID_RE = re.compile(r"[A-Za-z]+(?:-[A-Za-z]+)*")
_VERSION_RE = re.compile(r"(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)")


def is_statement_id(value) -> bool:
    return isinstance(value, str) and STATEMENT_ID_RE.fullmatch(value) is not None


@dataclass(frozen=True, order=True)
class Version:
    """A ``major.minor`` version, ordered numerically."""

    major: int
    minor: int

    def __post_init__(self):
        if self.major < 0 or self.minor < 0:
            raise ValueError("version components must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "Version":
        m = _VERSION_RE.fullmatch(text) if isinstance(text, str) else None
        if m is None:
            raise VocabForgeError(f"malformed version {text!r}", code="MALFORMED_VERSION")
        return cls(int(m.group(1)), int(m.group(2)))

    @classmethod
    def is_valid(cls, text: str) -> bool:
        return isinstance(text, str) and _VERSION_RE.fullmatch(text) is not None

    def __str__(self):
        return f"{self.major}.{self.minor}"
