"""Findings shared by vocabulary validation and metadata linting."""

from __future__ import annotations

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"
INFO = "info"

_SEVERITY_RANK = {ERROR: 0, WARNING: 1, INFO: 2}


@dataclass(frozen=True)
class Finding:
    severity: str
    code: str
    message: str
    subject: str = ""
    source: str = ""

    def sort_key(self):
        return (self.source, _SEVERITY_RANK[self.severity], self.subject, self.code, self.message)

    def as_dict(self):
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "subject": self.subject,
            "source": self.source,
        }

    def __str__(self):
        where = f"{self.source}: " if self.source else ""
        subject = f" <{self.subject}>" if self.subject else ""
        return f"{where}{self.severity.upper()} {self.code}{subject}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def errors(self):
        return [f for f in self.findings if f.severity == ERROR]

    @property
    def warnings(self):
        return [f for f in self.findings if f.severity == WARNING]

    @property
    def publishable(self):
        return not self.errors

    def codes(self, severity=None):
        return [f.code for f in self.findings if severity is None or f.severity == severity]
