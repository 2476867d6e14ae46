"""Domain errors shared by every layer of the registry.

Each error exposes a stable machine-readable ``code`` (the class name),
which the HTTP layer puts on the wire and the CLI prints before exiting
with status 1.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all registry failures that callers can act on."""

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    @property
    def code(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}" if self.detail else self.code


class MalformedFile(DomainError):
    """A store file could not be parsed. Carries path and line number."""

    def __init__(self, path, line: int | None, reason: str):
        self.path = str(path)
        self.line = line
        self.reason = reason
        where = self.path if line is None else f"{self.path}:{line}"
        super().__init__(f"{where}: {reason}")


class IoFailure(DomainError):
    pass


class DanglingReference(DomainError):
    pass


class DuplicateStudentId(DomainError):
    pass


class UnknownStudent(DomainError):
    pass


class UnknownGroup(DomainError):
    pass


class EntryNotInCurriculum(DomainError):
    pass


class ImmutableField(DomainError):
    pass


class RangeViolation(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class UnknownOption(DomainError):
    pass


class AmbiguousCurriculumEntry(DomainError):
    pass


class UnknownCurriculumEntry(DomainError):
    pass


class MissingDateOnPass(DomainError):
    pass


class PreconditionViolated(DomainError):
    """A movement event was rejected; ``kind`` names the offending event."""

    def __init__(self, kind: str, detail: str, seq: int | None = None):
        self.kind = kind
        self.seq = seq
        prefix = f"{kind}" if seq is None else f"{kind} (seq {seq})"
        super().__init__(f"{prefix}: {detail}")
