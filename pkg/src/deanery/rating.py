"""The modular-rating system: point distribution options, the 100-point
scale and its conversion to the four traditional grades.

Flawless work over a semester is worth 100 points, split between points
collected during the semester and points awarded at the closing exam or
credit. Two distribution presets exist; which one a discipline uses is
chosen per exchange file and defaults to option 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from enum import Enum

from .errors import OutOfRange, RangeViolation, UnknownOption


class Grade(Enum):
    """Traditional four-point grades, valued by their numeric labels."""

    FAIL = 2
    SATISFACTORY = 3
    GOOD = 4
    EXCELLENT = 5


@dataclass(frozen=True)
class RatingOption:
    """One column of the point-distribution table."""

    name: str
    max_semester_points: int
    max_exam_points: int
    bonus_threshold: int
    max_bonus_points: int
    admission_points: int

    def __post_init__(self):
        values = (self.max_semester_points, self.max_exam_points, self.bonus_threshold,
                  self.max_bonus_points, self.admission_points)
        if any(v < 0 for v in values):
            raise ValueError("rating option parameters must be non-negative")
        if self.max_semester_points + self.max_exam_points != 100:
            raise ValueError("semester and exam maxima must sum to 100")
        if not self.admission_points <= self.bonus_threshold <= self.max_semester_points:
            raise ValueError("admission <= bonus threshold <= semester maximum must hold")


OPTION_1 = RatingOption("option1", max_semester_points=60, max_exam_points=40,
                        bonus_threshold=50, max_bonus_points=30, admission_points=35)
OPTION_2 = RatingOption("option2", max_semester_points=80, max_exam_points=20,
                        bonus_threshold=70, max_bonus_points=20, admission_points=45)

OPTIONS: dict[str, RatingOption] = {OPTION_1.name: OPTION_1, OPTION_2.name: OPTION_2}


def option_by_name(name: str) -> RatingOption:
    try:
        return OPTIONS[name]
    except KeyError:
        raise UnknownOption(f"no rating option named {name!r}") from None


@dataclass(frozen=True)
class GradeScale:
    """Bands converting a 0..100 total into a grade. Each band runs from
    its inclusive lower bound to the next band's bound (the last to 100)."""

    thresholds: tuple[tuple[int, Grade], ...] = (
        (0, Grade.FAIL),
        (55, Grade.SATISFACTORY),
        (70, Grade.GOOD),
        (85, Grade.EXCELLENT),
    )

    def __post_init__(self):
        bounds = [b for b, _ in self.thresholds]
        if not bounds or bounds[0] != 0:
            raise ValueError("the first band must start at 0")
        if bounds != sorted(set(bounds)) or any(b > 100 for b in bounds):
            raise ValueError("band bounds must be strictly increasing and <= 100")


DEFAULT_SCALE = GradeScale()


@dataclass(frozen=True)
class RatingRecord:
    """One student's points for one curriculum entry. ``None`` semester or
    exam points mean the student never showed up."""

    student: str
    entry: str = ""
    semester_points: int | None = None
    exam_points: int | None = None
    bonus_points: int = 0
    date: date | None = None


def validate_record(record: RatingRecord, option: RatingOption) -> None:
    """Check the record's points against the option's maxima."""
    checks = (
        ("semester_points", record.semester_points, option.max_semester_points),
        ("exam_points", record.exam_points, option.max_exam_points),
        ("bonus_points", record.bonus_points, option.max_bonus_points),
    )
    for name, value, maximum in checks:
        if value is not None and not 0 <= value <= maximum:
            raise RangeViolation(
                f"{name} = {value} outside [0, {maximum}] for {option.name} "
                f"(student {record.student})")


def final_rating(record: RatingRecord, option: RatingOption) -> int | None:
    """Total rating on the 100-point scale, or ``None`` for a no-show.

    Bonus points count only once the semester points reach the option's
    bonus threshold; the total never exceeds 100.
    """
    if record.semester_points is None or record.exam_points is None:
        return None
    bonus = record.bonus_points if record.semester_points >= option.bonus_threshold else 0
    return min(100, record.semester_points + record.exam_points + bonus)


def to_grade(final: int, scale: GradeScale = DEFAULT_SCALE) -> Grade:
    """Grade band containing ``final``; OutOfRange outside [0, 100]."""
    if not 0 <= final <= 100:
        raise OutOfRange(f"final rating {final} outside [0, 100]")
    grade = scale.thresholds[0][1]
    for bound, band in scale.thresholds:
        if final >= bound:
            grade = band
    return grade


def is_admitted(semester_points: int, option: RatingOption) -> bool:
    """Whether the semester points are enough to sit the exam."""
    if not 0 <= semester_points <= option.max_semester_points:
        raise OutOfRange(f"semester points {semester_points} outside "
                         f"[0, {option.max_semester_points}]")
    return semester_points >= option.admission_points


def passed(record: RatingRecord, option: RatingOption,
           scale: GradeScale = DEFAULT_SCALE) -> bool:
    """True when the record earns any grade above a fail. A pass is what
    turns into a delivery date in the registry."""
    final = final_rating(record, option)
    return final is not None and to_grade(final, scale) is not Grade.FAIL
