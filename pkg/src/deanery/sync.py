"""Exchange with the teacher workplace: exam sheets and result import.

The teacher application sends back one file per discipline: a header
line naming the group, discipline, semester, control code, rating
option and sheet date (plus optional document fields), then one line
per student with the collected points. Empty point fields mean the
student never showed up. The registry turns passing records into
delivery dates; fails and no-shows keep the debt.
"""

from __future__ import annotations

import csv
import dataclasses
import io
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Mapping

from .errors import (
    AmbiguousCurriculumEntry,
    MalformedFile,
    MissingDateOnPass,
    UnknownCurriculumEntry,
    UnknownStudent,
)
from .model import ControlKind, CurriculumEntry, Registry, set_delivery
from .rating import (
    DEFAULT_SCALE,
    Grade,
    GradeScale,
    RatingRecord,
    final_rating,
    option_by_name,
    passed,
    to_grade,
    validate_record,
)

EXCHANGE_IN = "exchange/in"
EXCHANGE_OUT = "exchange/out"


@dataclass(frozen=True)
class ExchangeLine:
    student: str
    record_book: str
    semester_points: int | None
    exam_points: int | None
    bonus_points: int
    date: date | None

    def rating_record(self, entry: str = "") -> RatingRecord:
        return RatingRecord(student=self.student, entry=entry,
                            semester_points=self.semester_points,
                            exam_points=self.exam_points,
                            bonus_points=self.bonus_points, date=self.date)


@dataclass(frozen=True)
class TeacherExchangeRecord:
    group: str
    discipline: str
    semester: int
    control: ControlKind
    option: str
    sheet_date: date | None
    lines: tuple[ExchangeLine, ...]
    # document fields printed on the sheet head; may be empty
    institute: str = ""
    specialty_code: str = ""
    department: str = ""
    teacher: str = ""


def _opt_int(cell: str, what: str) -> int | None:
    if cell == "":
        return None
    try:
        return int(cell)
    except ValueError as exc:
        raise ValueError(f"bad {what} {cell!r}") from exc


def parse_exchange(text: str, control_codes: Mapping[int, ControlKind],
                   path: str | Path = "<exchange>") -> TeacherExchangeRecord:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if not rows:
        raise MalformedFile(path, 1, "empty exchange file")
    head = rows[0]
    if len(head) < 6:
        raise MalformedFile(path, 1, "exchange header needs at least 6 fields")
    head = head + [""] * (10 - len(head))
    try:
        code = int(head[3])
        if code not in control_codes:
            raise ValueError(f"control code {code} not in the store table")
        record = TeacherExchangeRecord(
            group=head[0], discipline=head[1], semester=int(head[2]),
            control=control_codes[code], option=head[4],
            sheet_date=date.fromisoformat(head[5]) if head[5] else None,
            lines=(), institute=head[6], specialty_code=head[7],
            department=head[8], teacher=head[9])
    except ValueError as exc:
        raise MalformedFile(path, 1, str(exc)) from exc

    lines = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 6:
            raise MalformedFile(path, lineno, f"expected 6 fields, got {len(row)}")
        try:
            lines.append(ExchangeLine(
                student=row[0], record_book=row[1],
                semester_points=_opt_int(row[2], "semester points"),
                exam_points=_opt_int(row[3], "exam points"),
                bonus_points=_opt_int(row[4], "bonus points") or 0,
                date=date.fromisoformat(row[5]) if row[5] else None))
        except ValueError as exc:
            raise MalformedFile(path, lineno, str(exc)) from exc
    return dataclasses.replace(record, lines=tuple(lines))


def format_exchange(record: TeacherExchangeRecord, registry: Registry) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    code = registry.code_for(record.control)
    writer.writerow([record.group, record.discipline, str(record.semester), str(code),
                     record.option,
                     record.sheet_date.isoformat() if record.sheet_date else "",
                     record.institute, record.specialty_code, record.department,
                     record.teacher])
    for line in record.lines:
        writer.writerow([
            line.student, line.record_book,
            "" if line.semester_points is None else str(line.semester_points),
            "" if line.exam_points is None else str(line.exam_points),
            str(line.bonus_points),
            line.date.isoformat() if line.date else ""])
    return buffer.getvalue()


# --- exam sheets -------------------------------------------------------------

NO_SHOW = "no_show"
SUMMARY_KEYS = ("excellent", "good", "satisfactory", "fail", NO_SHOW)

_GRADE_KEY = {Grade.EXCELLENT: "excellent", Grade.GOOD: "good",
              Grade.SATISFACTORY: "satisfactory", Grade.FAIL: "fail"}


@dataclass(frozen=True)
class SheetRow:
    ordinal: int
    short_name: str
    record_book: str
    semester_points: int | None
    final_rating: int | None
    grade: Grade | None  # None means no-show
    date: date | None


@dataclass(frozen=True)
class SheetHeader:
    institute: str
    specialty_code: str
    semester: int
    group: str
    department: str
    discipline: str
    control: ControlKind
    date: date | None
    teacher: str


@dataclass(frozen=True)
class ExamSheet:
    header: SheetHeader
    rows: tuple[SheetRow, ...]
    summary: Mapping[str, int]


def build_sheet(registry: Registry, record: TeacherExchangeRecord,
                scale: GradeScale = DEFAULT_SCALE) -> ExamSheet:
    """Turn an exchange record into the printable sheet: one row per
    student in record-book order, grades recomputed from the points, and
    a tally of grades and no-shows."""
    option = option_by_name(record.option)
    prepared = []
    for line in record.lines:
        student = registry.student(line.student)
        if student.group != record.group:
            raise UnknownStudent(
                f"student {line.student} belongs to {student.group}, not {record.group}")
        rating = line.rating_record()
        validate_record(rating, option)
        final = final_rating(rating, option)
        record_book = line.record_book or student.card_number
        if final is None:
            row = (record_book, line.student, student.name.short(), None, None, None, None)
        else:
            row = (record_book, line.student, student.name.short(),
                   line.semester_points, final, to_grade(final, scale), line.date)
        prepared.append(row)

    prepared.sort(key=lambda r: (r[0], r[1]))
    rows = tuple(
        SheetRow(ordinal=index, short_name=short, record_book=book,
                 semester_points=sem, final_rating=final, grade=grade, date=when)
        for index, (book, _, short, sem, final, grade, when) in enumerate(prepared, start=1))

    summary = {key: 0 for key in SUMMARY_KEYS}
    for row in rows:
        summary[NO_SHOW if row.grade is None else _GRADE_KEY[row.grade]] += 1

    header = SheetHeader(
        institute=record.institute, specialty_code=record.specialty_code,
        semester=record.semester, group=record.group, department=record.department,
        discipline=record.discipline, control=record.control,
        date=record.sheet_date, teacher=record.teacher)
    return ExamSheet(header=header, rows=rows, summary=summary)


# --- result import ------------------------------------------------------------

def resolve_entry(registry: Registry, record: TeacherExchangeRecord) -> CurriculumEntry:
    group = registry.group(record.group)
    matches = [e for e in group.curriculum
               if (e.discipline, e.semester, e.control)
               == (record.discipline, record.semester, record.control)]
    if not matches:
        raise UnknownCurriculumEntry(
            f"group {record.group} has no {record.control.value} for "
            f"{record.discipline!r} in semester {record.semester}")
    if len(matches) > 1:
        raise AmbiguousCurriculumEntry(
            f"group {record.group} has {len(matches)} matching entries for "
            f"{record.discipline!r} in semester {record.semester}")
    return matches[0]


def import_results(registry: Registry, record: TeacherExchangeRecord,
                   scale: GradeScale = DEFAULT_SCALE) -> Registry:
    """Record a delivery date for every passing line; fails and no-shows
    leave the debt in place. Importing the same file twice is a no-op."""
    entry = resolve_entry(registry, record)
    option = option_by_name(record.option)
    updated = registry
    for line in record.lines:
        rating = line.rating_record(entry.id)
        validate_record(rating, option)
        if not passed(rating, option, scale):
            registry.student(line.student)  # surface unknown ids even on skips
            continue
        if line.date is None:
            raise MissingDateOnPass(
                f"student {line.student} passed {record.discipline!r} "
                "but the record has no date")
        updated = set_delivery(updated, line.student, entry.id, line.date)
    return updated


# --- roster export -------------------------------------------------------------

def export_group_for_teacher(registry: Registry, group_id: str, semester: int) -> str:
    """Roster the teacher workplace starts from: the semester's entries
    and the group's active students, with empty point fields."""
    group = registry.group(group_id)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["roster", group_id, str(semester)])
    entries = [e for e in group.curriculum if e.semester == semester]
    if not entries:
        return buffer.getvalue()  # nothing to examine this semester
    for entry in entries:
        writer.writerow(["entry", str(entry.ordinal), entry.discipline,
                         str(entry.semester), str(registry.code_for(entry.control)),
                         "option1"])
    members = [s for s in registry.group_members(group_id) if s.is_active]
    members.sort(key=lambda s: (s.card_number, s.id))
    for student in members:
        writer.writerow(["student", student.id, student.card_number,
                         student.name.surname, student.name.given_name,
                         student.name.patronymic])
    return buffer.getvalue()


def roster_records(text: str, registry: Registry,
                   path: str | Path = "<roster>") -> list[TeacherExchangeRecord]:
    """Expand a roster back into one blank exchange record per entry (all
    lines no-show), the shape the teacher returns after filling points."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][:1] != ["roster"] or len(rows[0]) != 3:
        raise MalformedFile(path, 1, "missing roster header")
    try:
        group_id, semester = rows[0][1], int(rows[0][2])
    except ValueError as exc:
        raise MalformedFile(path, 1, str(exc)) from exc
    entries: list[list[str]] = []
    students: list[list[str]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if row[:1] == ["entry"] and len(row) == 6:
            entries.append(row)
        elif row[:1] == ["student"] and len(row) == 6:
            students.append(row)
        else:
            raise MalformedFile(path, lineno, f"unreadable roster line {row!r}")
    records = []
    codes = dict(registry.control_codes)
    for row in entries:
        try:
            control = codes[int(row[4])]
        except (KeyError, ValueError) as exc:
            raise MalformedFile(path, None, f"bad control code {row[4]!r}") from exc
        lines = tuple(
            ExchangeLine(student=s[1], record_book=s[2], semester_points=None,
                         exam_points=None, bonus_points=0, date=None)
            for s in students)
        records.append(TeacherExchangeRecord(
            group=group_id, discipline=row[2], semester=int(row[3]),
            control=control, option=row[5], sheet_date=None, lines=lines))
    return records
