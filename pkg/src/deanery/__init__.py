"""Teaching-department registry.

Students, their per-discipline delivery dates and their movement through
the institution, with academic-debt analytics, modular-rating grading,
exam-sheet exchange and data-consistency audits on top.
"""

from .errors import DomainError
from .model import (
    AcademicLeave,
    Active,
    ControlKind,
    CurriculumEntry,
    Expelled,
    Funding,
    Group,
    PersonName,
    Registry,
    Sex,
    StudentRecord,
    edit_personal,
    set_delivery,
)
from .monitor import StudentFilter, debt_series, debts_of, mastery_table, pivot
from .rating import (
    OPTION_1,
    OPTION_2,
    Grade,
    GradeScale,
    RatingOption,
    RatingRecord,
    final_rating,
    is_admitted,
    passed,
    to_grade,
)
from .semesters import AcademicCalendar
from .store import load_registry, save_registry

__version__ = "0.1.0"

__all__ = [
    "AcademicCalendar",
    "AcademicLeave",
    "Active",
    "ControlKind",
    "CurriculumEntry",
    "DomainError",
    "Expelled",
    "Funding",
    "Grade",
    "GradeScale",
    "Group",
    "OPTION_1",
    "OPTION_2",
    "PersonName",
    "RatingOption",
    "RatingRecord",
    "Registry",
    "Sex",
    "StudentFilter",
    "StudentRecord",
    "debt_series",
    "debts_of",
    "edit_personal",
    "final_rating",
    "is_admitted",
    "load_registry",
    "mastery_table",
    "passed",
    "pivot",
    "save_registry",
    "set_delivery",
    "to_grade",
    "__version__",
]
