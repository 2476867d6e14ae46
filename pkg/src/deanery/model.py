"""Domain records: students, groups, curricula and the registry value.

The registry is an immutable snapshot; every mutating operation returns
a new value and leaves the old one intact, so readers can keep querying
a snapshot while a single writer applies changes.

The registry stores delivery *dates*, never grades: a curriculum entry
is either delivered on some date or still owed.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from datetime import date
from decimal import Decimal, InvalidOperation, ROUND_HALF_UP
from enum import Enum
from typing import TYPE_CHECKING, Any, Mapping

from .errors import (
    EntryNotInCurriculum,
    ImmutableField,
    RangeViolation,
    UnknownGroup,
    UnknownStudent,
)
from .semesters import DEFAULT_CALENDAR, AcademicCalendar

if TYPE_CHECKING:  # events live in deanery.contingent; avoid the import cycle
    from .contingent import MovementEvent


class Funding(str, Enum):
    BUDGET = "budget"
    CONTRACT = "contract"


class Sex(str, Enum):
    MALE = "male"
    FEMALE = "female"


class ControlKind(str, Enum):
    EXAM = "exam"
    CREDIT = "credit"
    DIFFERENTIATED_CREDIT = "differentiated_credit"
    COURSEWORK = "coursework"
    PRACTICE = "practice"


#: Default numeric codes used in plan files. The mapping is data: every
#: plan file header carries its own table, so a store may renumber.
DEFAULT_CONTROL_CODES: dict[int, ControlKind] = {
    1: ControlKind.EXAM,
    2: ControlKind.CREDIT,
    3: ControlKind.DIFFERENTIATED_CREDIT,
    4: ControlKind.PRACTICE,
    6: ControlKind.COURSEWORK,
}

TWO_PLACES = Decimal("0.01")
MEAN_SCORE_MIN = Decimal("0")
MEAN_SCORE_MAX = Decimal("5")


def normalize_mean_score(value: Any) -> Decimal:
    """Coerce to a two-decimal score in [0, 5]; RangeViolation otherwise."""
    try:
        score = Decimal(str(value))
    except (InvalidOperation, ValueError) as exc:
        raise RangeViolation(f"mean_score is not a number: {value!r}") from exc
    if not MEAN_SCORE_MIN <= score <= MEAN_SCORE_MAX:
        raise RangeViolation(f"mean_score {score} outside [0, 5]")
    return score.quantize(TWO_PLACES, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class PersonName:
    surname: str
    given_name: str
    patronymic: str = ""

    def __post_init__(self):
        if not self.surname or not self.given_name:
            raise ValueError("surname and given name must be non-empty")

    def full(self) -> str:
        parts = [self.surname, self.given_name, self.patronymic]
        return " ".join(p for p in parts if p)

    def short(self) -> str:
        """Surname plus initials, the form exam sheets print."""
        initials = "".join(f"{p[0]}." for p in (self.given_name, self.patronymic) if p)
        return f"{self.surname} {initials}" if initials else self.surname

    def sort_key(self) -> tuple[str, str, str]:
        return (self.surname, self.given_name, self.patronymic)


@dataclass(frozen=True)
class Active:
    kind = "active"


@dataclass(frozen=True)
class AcademicLeave:
    since: date
    until: date
    kind = "leave"

    def __post_init__(self):
        if self.since >= self.until:
            raise ValueError(f"leave must end after it starts ({self.since} >= {self.until})")


@dataclass(frozen=True)
class Expelled:
    date: date
    reason: str
    kind = "expelled"


StudentStatus = Active | AcademicLeave | Expelled

ACTIVE = Active()


@dataclass(frozen=True)
class CurriculumEntry:
    """One requirement of a group's plan: a discipline closed by an exam,
    credit, coursework or practice report in a given semester."""

    id: str
    ordinal: int
    discipline: str
    semester: int
    control: ControlKind

    def __post_init__(self):
        if not self.discipline:
            raise ValueError("discipline must be non-empty")
        if self.semester < 1:
            raise ValueError(f"semester must be >= 1, got {self.semester}")
        if self.ordinal < 1:
            raise ValueError(f"ordinal must be >= 1, got {self.ordinal}")


def entry_id(group_id: str, ordinal: int) -> str:
    return f"{group_id}:{ordinal}"


def _check_group_id(value: str) -> None:
    if not value:
        raise ValueError("group id must be non-empty")
    if any(ch in value for ch in "/\\\t\n\r") or value.startswith("."):
        raise ValueError(f"group id not usable as a file name: {value!r}")


@dataclass(frozen=True)
class Group:
    id: str
    course: int = 1
    direction: str = ""
    curriculum: tuple[CurriculumEntry, ...] = ()

    def __post_init__(self):
        _check_group_id(self.id)
        if self.course < 1:
            raise ValueError(f"course must be >= 1, got {self.course}")
        keys = [(e.semester, e.ordinal) for e in self.curriculum]
        if keys != sorted(set(keys)) or len(set(e.ordinal for e in self.curriculum)) != len(keys):
            raise ValueError(f"curriculum of {self.id} must have strictly increasing "
                             "(semester, ordinal) keys")
        for e in self.curriculum:
            expected = entry_id(self.id, e.ordinal)
            if e.id != expected:
                raise ValueError(f"entry id {e.id!r} must be {expected!r}")

    def entry(self, eid: str) -> CurriculumEntry | None:
        for e in self.curriculum:
            if e.id == eid:
                return e
        return None

    def semesters(self) -> list[int]:
        return sorted({e.semester for e in self.curriculum})

    @property
    def max_semester(self) -> int:
        return max((e.semester for e in self.curriculum), default=0)


@dataclass(frozen=True)
class StudentRecord:
    id: str
    name: PersonName
    card_number: str
    group: str
    course: int
    funding: Funding
    sex: Sex
    mean_score: Decimal
    enrollment_year: int
    status: StudentStatus = ACTIVE
    deliveries: Mapping[str, date] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise ValueError("student id must be non-empty")
        if self.course < 1:
            raise ValueError(f"course must be >= 1, got {self.course}")
        object.__setattr__(self, "mean_score", normalize_mean_score(self.mean_score))
        object.__setattr__(self, "deliveries", dict(self.deliveries))

    @property
    def is_active(self) -> bool:
        return isinstance(self.status, Active)


@dataclass(frozen=True)
class Registry:
    """Full in-memory state: groups, students, the movement log and the
    calendar the debt rules run against."""

    calendar: AcademicCalendar = DEFAULT_CALENDAR
    groups: Mapping[str, Group] = field(default_factory=dict)
    students: Mapping[str, StudentRecord] = field(default_factory=dict)
    log: tuple["MovementEvent", ...] = ()
    control_codes: Mapping[int, ControlKind] = field(
        default_factory=lambda: dict(DEFAULT_CONTROL_CODES))

    def __post_init__(self):
        object.__setattr__(self, "groups", dict(self.groups))
        object.__setattr__(self, "students", dict(self.students))
        object.__setattr__(self, "log", tuple(self.log))
        codes = dict(self.control_codes)
        if sorted(codes.values(), key=lambda k: k.value) != sorted(ControlKind, key=lambda k: k.value):
            raise ValueError("control code table must map distinct codes to all five control kinds")
        object.__setattr__(self, "control_codes", codes)

    def student(self, student_id: str) -> StudentRecord:
        try:
            return self.students[student_id]
        except KeyError:
            raise UnknownStudent(student_id) from None

    def group(self, group_id: str) -> Group:
        try:
            return self.groups[group_id]
        except KeyError:
            raise UnknownGroup(group_id) from None

    def group_members(self, group_id: str) -> list[StudentRecord]:
        members = [s for s in self.students.values() if s.group == group_id]
        members.sort(key=lambda s: (*s.name.sort_key(), s.id))
        return members

    def code_for(self, kind: ControlKind) -> int:
        for code, k in sorted(self.control_codes.items()):
            if k is kind:
                return code
        raise KeyError(kind)  # unreachable: the table is validated total

    @property
    def last_seq(self) -> int:
        return self.log[-1].seq if self.log else 0

    def with_student(self, record: StudentRecord) -> "Registry":
        students = dict(self.students)
        students[record.id] = record
        return dataclasses.replace(self, students=students)

    def with_event(self, event: "MovementEvent") -> "Registry":
        return dataclasses.replace(self, log=self.log + (event,))


def set_delivery(registry: Registry, student_id: str, eid: str,
                 delivered: date | None) -> Registry:
    """Record or clear the delivery date of one curriculum entry.

    Passing a date inserts or overwrites (last write wins); ``None``
    clears the cell. Everything else about the student is untouched.
    """
    record = registry.student(student_id)
    group = registry.groups.get(record.group)
    if group is None or group.entry(eid) is None:
        raise EntryNotInCurriculum(f"{eid} is not in the curriculum of group {record.group}")
    deliveries = dict(record.deliveries)
    if delivered is None:
        deliveries.pop(eid, None)
    else:
        deliveries[eid] = delivered
    return registry.with_student(dataclasses.replace(record, deliveries=deliveries))


_EDITABLE_FIELDS = {"name", "card_number", "mean_score", "sex"}
_NAME_FIELDS = {"surname", "given_name", "patronymic"}


def edit_personal(registry: Registry, student_id: str, patch: Mapping[str, Any]) -> Registry:
    """Apply a partial update to the editable personal fields.

    Only name parts, the student card number, the mean score and sex can
    be edited here; group, course, funding and status change exclusively
    through movement events.
    """
    record = registry.student(student_id)
    for key in patch:
        if key not in _EDITABLE_FIELDS:
            raise ImmutableField(f"{key} cannot be edited on a student record")

    changes: dict[str, Any] = {}
    if "name" in patch:
        name_patch = patch["name"]
        if isinstance(name_patch, PersonName):
            changes["name"] = name_patch
        else:
            for key in name_patch:
                if key not in _NAME_FIELDS:
                    raise ImmutableField(f"name.{key} is not a name field")
            merged = {
                "surname": name_patch.get("surname", record.name.surname),
                "given_name": name_patch.get("given_name", record.name.given_name),
                "patronymic": name_patch.get("patronymic", record.name.patronymic),
            }
            try:
                changes["name"] = PersonName(**merged)
            except ValueError as exc:
                raise RangeViolation(str(exc)) from exc
    if "card_number" in patch:
        changes["card_number"] = str(patch["card_number"])
    if "mean_score" in patch:
        changes["mean_score"] = normalize_mean_score(patch["mean_score"])
    if "sex" in patch:
        value = patch["sex"]
        try:
            changes["sex"] = value if isinstance(value, Sex) else Sex(str(value))
        except ValueError as exc:
            raise RangeViolation(f"sex must be male or female, got {value!r}") from exc

    if not changes:
        return registry
    return registry.with_student(dataclasses.replace(record, **changes))


def status_counts(registry: Registry) -> dict[str, int]:
    """How many students sit in each of the three statuses."""
    counts = {"active": 0, "leave": 0, "expelled": 0}
    for record in registry.students.values():
        counts[record.status.kind] += 1
    return counts
