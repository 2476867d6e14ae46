"""Automatic search for stale records.

Three rule families, all driven by the calendar: students whose
academic leave should already have ended, active students whose program
is over but who were never signed out, and active students lagging
behind the course the calendar says they should be in. The audit only
reports; operators repair through movement events.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import date
from enum import Enum

from .model import AcademicLeave, Active, Registry, StudentRecord
from .semesters import AcademicCalendar


class AuditRule(str, Enum):
    OVERDUE_LEAVE_EXIT = "overdue_leave_exit"
    OVERDUE_GRADUATION = "overdue_graduation"
    OVERDUE_COURSE_ADVANCE = "overdue_course_advance"


_RULE_ORDER = {rule: index for index, rule in enumerate(AuditRule)}


@dataclass(frozen=True)
class AuditFinding:
    rule: AuditRule
    student: str
    detail: str
    due_date: date
    severity: str = "error"


def expected_course(calendar: AcademicCalendar, enrollment_year: int,
                    as_of: date, max_course: int) -> int:
    """Course the calendar puts a student in, capped at the final one."""
    course = 1
    while course + 1 <= max_course and calendar.course_start(enrollment_year, course + 1) < as_of:
        course += 1
    return course


def _check_student(registry: Registry, record: StudentRecord, as_of: date,
                   calendar: AcademicCalendar) -> AuditFinding | None:
    if isinstance(record.status, AcademicLeave):
        if record.status.until < as_of:
            return AuditFinding(
                rule=AuditRule.OVERDUE_LEAVE_EXIT,
                student=record.id,
                detail=f"academic leave of {record.name.full()} ended "
                       f"{record.status.until.isoformat()} and was never closed",
                due_date=record.status.until,
            )
        return None

    if not isinstance(record.status, Active):
        return None

    group = registry.groups.get(record.group)
    if group is None or not group.curriculum:
        return None

    program_end = calendar.semester_end(record.enrollment_year, group.max_semester)
    if program_end < as_of:
        return AuditFinding(
            rule=AuditRule.OVERDUE_GRADUATION,
            student=record.id,
            detail=f"{record.name.full()} finished the program on "
                   f"{program_end.isoformat()} but is still listed as active",
            due_date=program_end,
        )

    max_course = calendar.courses_in(group.max_semester)
    target = expected_course(calendar, record.enrollment_year, as_of, max_course)
    if target > record.course:
        due = calendar.course_start(record.enrollment_year, record.course + 1)
        return AuditFinding(
            rule=AuditRule.OVERDUE_COURSE_ADVANCE,
            student=record.id,
            detail=f"{record.name.full()} should be in course {target} "
                   f"but is recorded in course {record.course}",
            due_date=due,
        )
    return None


def run_audit(registry: Registry, as_of: date | None = None,
              calendar: AcademicCalendar | None = None) -> list[AuditFinding]:
    """Evaluate all three rules over every student; deterministic order
    (rule, then surname)."""
    as_of = as_of or date.today()
    calendar = calendar or registry.calendar
    findings = []
    for record in registry.students.values():
        finding = _check_student(registry, record, as_of, calendar)
        if finding is not None:
            findings.append(finding)
    findings.sort(key=lambda f: (_RULE_ORDER[f.rule],
                                 *registry.student(f.student).name.sort_key(),
                                 f.student))
    return findings


FINDINGS_HEADER = ["rule", "student", "due_date", "severity", "detail"]


def findings_csv(findings: list[AuditFinding]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FINDINGS_HEADER)
    for finding in findings:
        writer.writerow([finding.rule.value, finding.student,
                         finding.due_date.isoformat(), finding.severity, finding.detail])
    return buffer.getvalue()
