"""Academic-year arithmetic.

A course year splits into semesters (two by default: autumn starting
September 1 and spring starting February 9). Theory runs a fixed number
of weeks and is followed by an examination session; a semester counts as
finished once the session is over. All boundaries are data, loaded from
a plain ``key = value`` calendar file, so institutions can move them
without code changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .errors import MalformedFile

DEFAULT_SEMESTER_STARTS: tuple[tuple[int, int], ...] = ((9, 1), (2, 9))

# Enrollments dated June..December anchor to that year's autumn intake;
# earlier dates are mid-year joiners of the academic year already running.
_INTAKE_CUTOFF_MONTH = 6

CALENDAR_FILE = "calendar.cfg"


@dataclass(frozen=True)
class AcademicCalendar:
    """Institution-wide semester timing.

    ``semester_starts`` holds one (month, day) entry per semester of a
    course year; the first entry is the autumn boundary that also opens
    the academic year. Entries whose month-day precedes the autumn
    boundary fall in the next calendar year.
    """

    weeks_theory: int = 17
    weeks_exams: Decimal = Decimal("3.5")
    semester_starts: tuple[tuple[int, int], ...] = DEFAULT_SEMESTER_STARTS

    def __post_init__(self):
        if self.weeks_theory <= 0:
            raise ValueError("weeks_theory must be positive")
        if self.weeks_exams < 0:
            raise ValueError("weeks_exams must be non-negative")
        if not self.semester_starts:
            raise ValueError("semester_starts must not be empty")
        for month, day in self.semester_starts:
            date(2001, month, day)  # raises ValueError on a bad boundary
        if len(set(self.semester_starts)) != len(self.semester_starts):
            raise ValueError("semester_starts must be distinct")

    @property
    def semesters_per_course(self) -> int:
        return len(self.semester_starts)

    @property
    def semester_length_days(self) -> int:
        return int((Decimal(self.weeks_theory) + self.weeks_exams) * 7)

    def semester_start(self, enrollment_year: int, semester: int) -> date:
        """First day of the given semester for a student whose first
        autumn was ``enrollment_year``. Semesters count from 1."""
        if semester < 1:
            raise ValueError(f"semester must be >= 1, got {semester}")
        per = self.semesters_per_course
        offset, index = divmod(semester - 1, per)
        month, day = self.semester_starts[index]
        year = enrollment_year + offset
        if (month, day) < self.semester_starts[0]:
            year += 1
        return date(year, month, day)

    def semester_end(self, enrollment_year: int, semester: int) -> date:
        """Last day of the examination session closing the semester."""
        start = self.semester_start(enrollment_year, semester)
        return start + timedelta(days=self.semester_length_days)

    def course_start(self, enrollment_year: int, course: int) -> date:
        first_semester = (course - 1) * self.semesters_per_course + 1
        return self.semester_start(enrollment_year, first_semester)

    def courses_in(self, max_semester: int) -> int:
        """Number of course years a curriculum reaching ``max_semester`` spans."""
        per = self.semesters_per_course
        return (max_semester + per - 1) // per

    def academic_year_of(self, d: date) -> int:
        """Calendar year of the autumn boundary opening the academic year
        that contains ``d``."""
        return d.year if (d.month, d.day) >= self.semester_starts[0] else d.year - 1

    def enrollment_year_for(self, enrolled: date) -> int:
        """Academic year of a student's first semester, from the date an
        enrollment was recorded."""
        if enrolled.month >= _INTAKE_CUTOFF_MONTH:
            return enrolled.year
        return enrolled.year - 1


DEFAULT_CALENDAR = AcademicCalendar()


def _parse_month_day(text: str) -> tuple[int, int]:
    month_s, _, day_s = text.partition("-")
    return int(month_s), int(day_s)


def parse_calendar(text: str, path: str | Path = CALENDAR_FILE) -> AcademicCalendar:
    weeks_theory = DEFAULT_CALENDAR.weeks_theory
    weeks_exams = DEFAULT_CALENDAR.weeks_exams
    starts = DEFAULT_CALENDAR.semester_starts
    declared_per_course: int | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key:
            raise MalformedFile(path, lineno, f"expected 'key = value', got {raw!r}")
        try:
            if key == "weeks_theory":
                weeks_theory = int(value)
            elif key == "weeks_exams":
                weeks_exams = Decimal(value)
            elif key == "semester_starts":
                starts = tuple(_parse_month_day(p.strip()) for p in value.split(",") if p.strip())
            elif key == "semesters_per_course":
                declared_per_course = int(value)
            else:
                raise MalformedFile(path, lineno, f"unknown calendar key {key!r}")
        except (ValueError, InvalidOperation) as exc:
            raise MalformedFile(path, lineno, f"bad value for {key}: {value!r} ({exc})") from exc

    try:
        calendar = AcademicCalendar(weeks_theory=weeks_theory, weeks_exams=weeks_exams,
                                    semester_starts=starts)
    except ValueError as exc:
        raise MalformedFile(path, None, str(exc)) from exc
    if declared_per_course is not None and declared_per_course != calendar.semesters_per_course:
        raise MalformedFile(path, None,
                            f"semesters_per_course = {declared_per_course} does not match "
                            f"{calendar.semesters_per_course} semester_starts entries")
    return calendar


def format_calendar(calendar: AcademicCalendar) -> str:
    starts = ",".join(f"{m:02d}-{d:02d}" for m, d in calendar.semester_starts)
    lines = [
        f"semesters_per_course = {calendar.semesters_per_course}",
        f"weeks_theory = {calendar.weeks_theory}",
        f"weeks_exams = {calendar.weeks_exams}",
        f"semester_starts = {starts}",
    ]
    return "\n".join(lines) + "\n"


def load_calendar(path: Path) -> AcademicCalendar:
    if not path.exists():
        return DEFAULT_CALENDAR
    return parse_calendar(path.read_text(encoding="utf-8"), path)
