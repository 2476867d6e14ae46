"""Progress monitoring: academic debts, the pivot table, the mastery
table and the debt time series.

An entry is owed (a debt) once its semester has finished, per the
calendar and the student's enrollment anchor, and no delivery date at or
before the as-of date exists. Students on academic leave stop advancing
through semesters at the day their leave begins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, timedelta
from decimal import Decimal, ROUND_HALF_UP
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .model import (
    AcademicLeave,
    Active,
    ControlKind,
    CurriculumEntry,
    Expelled,
    Funding,
    Group,
    Registry,
    Sex,
    StudentRecord,
)


@dataclass(frozen=True)
class StudentFilter:
    """Conjunction of row filters. ``status`` picks one of the three
    disjoint populations; the default view is the active contingent."""

    status: str = "active"  # "active" | "leave" | "expelled"
    course: int | None = None
    direction: str | None = None
    group: str | None = None
    funding: Funding | None = None
    sex: Sex | None = None

    def __post_init__(self):
        if self.status not in ("active", "leave", "expelled"):
            raise ValueError(f"unknown status filter {self.status!r}")

    def matches(self, record: StudentRecord, registry: Registry) -> bool:
        if record.status.kind != self.status:
            return False
        if self.course is not None and record.course != self.course:
            return False
        if self.group is not None and record.group != self.group:
            return False
        if self.funding is not None and record.funding != self.funding:
            return False
        if self.sex is not None and record.sex != self.sex:
            return False
        if self.direction is not None:
            group = registry.groups.get(record.group)
            if group is None or group.direction != self.direction:
                return False
        return True


ALL_ACTIVE = StudentFilter()


@dataclass(frozen=True)
class DebtSummary:
    per_semester: Mapping[int, int]
    total: int
    last_delivery: date | None


def _progress_clock(record: StudentRecord, as_of: date) -> date:
    # Leave pauses semester progression at the day it starts.
    if isinstance(record.status, AcademicLeave):
        return min(as_of, record.status.since)
    return as_of


def _semester_completed(registry: Registry, record: StudentRecord,
                        semester: int, clock: date) -> bool:
    return registry.calendar.semester_end(record.enrollment_year, semester) <= clock


def debts_of(registry: Registry, student_id: str, as_of: date) -> DebtSummary:
    """Per-semester and total debt counts plus the last delivery date,
    evaluated as of an arbitrary (possibly past) date."""
    record = registry.student(student_id)
    group = registry.groups.get(record.group)
    curriculum = group.curriculum if group else ()
    clock = _progress_clock(record, as_of)

    per_semester: dict[int, int] = {e.semester: 0 for e in curriculum}
    last_delivery: date | None = None
    for entry in curriculum:
        delivered = record.deliveries.get(entry.id)
        if delivered is not None and delivered <= as_of:
            if last_delivery is None or delivered > last_delivery:
                last_delivery = delivered
        if not _semester_completed(registry, record, entry.semester, clock):
            continue
        if delivered is None or delivered > as_of:
            per_semester[entry.semester] += 1
    return DebtSummary(per_semester=per_semester,
                       total=sum(per_semester.values()),
                       last_delivery=last_delivery)


@dataclass(frozen=True)
class DebtPivotRow:
    student: str
    display_name: str
    group: str
    course: int
    mean_score: Decimal
    total_debts: int
    last_delivery: date | None
    per_semester: Mapping[int, int]
    funding: Funding
    sex: Sex


def _frozen_debts_at_expulsion(registry: Registry, record: StudentRecord) -> int:
    # The expel event stores the count; older snapshot-only stores may
    # lack the event, in which case recompute at the expulsion date.
    for event in reversed(registry.log):
        if event.kind == "expel" and event.student == record.id:
            if event.debts_at_expulsion is not None:
                return event.debts_at_expulsion
    assert isinstance(record.status, Expelled)
    return debts_of(registry, record.id, record.status.date).total


def _pivot_row(registry: Registry, record: StudentRecord, as_of: date) -> DebtPivotRow:
    if isinstance(record.status, Expelled):
        total = _frozen_debts_at_expulsion(registry, record)
        per_semester: Mapping[int, int] = {}
        last = debts_of(registry, record.id, as_of).last_delivery
    else:
        summary = debts_of(registry, record.id, as_of)
        total, per_semester, last = summary.total, summary.per_semester, summary.last_delivery
    return DebtPivotRow(
        student=record.id,
        display_name=record.name.full(),
        group=record.group,
        course=record.course,
        mean_score=record.mean_score,
        total_debts=total,
        last_delivery=last,
        per_semester=per_semester,
        funding=record.funding,
        sex=record.sex,
    )


def _sort_value(row: DebtPivotRow, column: str):
    if column in ("name", "display_name"):
        return row.display_name
    if column in ("student", "id"):
        return row.student
    if column == "group":
        return row.group
    if column == "course":
        return row.course
    if column == "mean_score":
        return row.mean_score
    if column == "total_debts":
        return row.total_debts
    if column == "last_delivery":
        return row.last_delivery or date.min
    if column == "funding":
        return row.funding.value
    if column == "sex":
        return row.sex.value
    if column.startswith("s") and column[1:].isdigit():
        return row.per_semester.get(int(column[1:]), 0)
    raise ValueError(f"unknown pivot column {column!r}")


def pivot(registry: Registry, flt: StudentFilter = ALL_ACTIVE,
          as_of: date | None = None, sort: str = "name",
          descending: bool = False) -> list[DebtPivotRow]:
    """Debt pivot rows for the students matching the filter.

    Sorting is stable for any column; ties always fall back to surname,
    given name, patronymic, then student id, whatever the direction.
    """
    as_of = as_of or date.today()
    rows = [
        _pivot_row(registry, record, as_of)
        for record in registry.students.values()
        if flt.matches(record, registry)
    ]
    rows.sort(key=lambda row: (*registry.student(row.student).name.sort_key(), row.student))
    if sort not in ("name", "display_name") or descending:
        rows.sort(key=lambda row: _sort_value(row, sort), reverse=descending)
    return rows


class MasteryColor(str, Enum):
    RED = "red"
    YELLOW = "yellow"
    GREEN = "green"


def classify_mastery(not_passed: int, total: int) -> MasteryColor:
    """Red above 30% not passed (strictly), green at zero, else yellow."""
    if not_passed == 0:
        return MasteryColor.GREEN
    if 10 * not_passed > 3 * total:
        return MasteryColor.RED
    return MasteryColor.YELLOW


def percent_not_passed(not_passed: int, total: int) -> Decimal:
    """Share of the group still owing the entry, in percent, one decimal,
    half-up (1 of 15 gives 6.7)."""
    return (Decimal(100 * not_passed) / Decimal(total)).quantize(
        Decimal("0.1"), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class MasteryRow:
    group: str
    semester: int
    discipline: str
    control: ControlKind
    not_passed: int
    total: int
    color: MasteryColor

    @property
    def discipline_label(self) -> str:
        return f"{self.discipline} ({self.control.value.replace('_', ' ')})"

    @property
    def percent(self) -> Decimal:
        return percent_not_passed(self.not_passed, self.total)


def mastery_table(registry: Registry, as_of: date | None = None) -> list[MasteryRow]:
    """Per-entry statistics of how many active students still owe it.

    Only semesters already finished (for at least one active member of
    the group) produce rows; students on leave or expelled are out of
    both the numerator and the denominator. Worst entries come first.
    """
    as_of = as_of or date.today()
    rows: list[MasteryRow] = []
    for group_id in sorted(registry.groups):
        group = registry.groups[group_id]
        members = [s for s in registry.group_members(group_id) if s.is_active]
        if not members:
            continue
        for entry in group.curriculum:
            owing = 0
            reached = 0
            for record in members:
                clock = _progress_clock(record, as_of)
                if not _semester_completed(registry, record, entry.semester, clock):
                    continue
                reached += 1
                delivered = record.deliveries.get(entry.id)
                if delivered is None or delivered > as_of:
                    owing += 1
            if reached == 0:
                continue
            total = len(members)
            rows.append(MasteryRow(
                group=group_id,
                semester=entry.semester,
                discipline=entry.discipline,
                control=entry.control,
                not_passed=owing,
                total=total,
                color=classify_mastery(owing, total),
            ))
    rows.sort(key=lambda row: (-Fraction(row.not_passed, row.total),
                               row.discipline_label, row.group, row.semester))
    return rows


@dataclass(frozen=True)
class DebtSeriesPoint:
    date: date
    total_debts: int


def debt_series(registry: Registry, flt: StudentFilter = ALL_ACTIVE,
                start: date | None = None, end: date | None = None,
                step_days: int = 7) -> list[DebtSeriesPoint]:
    """Total debts of the filtered students sampled over a date range."""
    if start is None or end is None:
        raise ValueError("debt_series needs an explicit date range")
    if start > end:
        raise ValueError(f"series range is empty ({start} > {end})")
    if step_days < 1:
        raise ValueError("step must be at least one day")
    matching = [s.id for s in registry.students.values() if flt.matches(s, registry)]
    points = []
    current = start
    while current <= end:
        total = sum(debts_of(registry, sid, current).total for sid in matching)
        points.append(DebtSeriesPoint(date=current, total_debts=total))
        current += timedelta(days=step_days)
    return points
