"""Plain-text persistence, one file per group.

Layout under the data root:

    groups.csv            group id, course, training direction
    students/<GROUP>.csv  one student per row, one date column per plan entry
    plans/<GROUP>.csv     ordinal, discipline, semester, control code
    calendar.cfg          semester timing, ``key = value`` lines
    report.log            movement events, tab-separated, append-only

Saving is canonical: groups sort by id, students by name then id, and
every file is replaced atomically, so equal registries serialize to
byte-identical trees.
"""

from __future__ import annotations

import csv
import io
import os
import re
from datetime import date
from pathlib import Path

from . import contingent
from .errors import (
    DanglingReference,
    DuplicateStudentId,
    IoFailure,
    MalformedFile,
)
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
    StudentStatus,
    entry_id,
    normalize_mean_score,
)
from .semesters import CALENDAR_FILE, format_calendar, load_calendar

STUDENTS_DIR = "students"
PLANS_DIR = "plans"
GROUPS_FILE = "groups.csv"

STUDENT_BASE_COLUMNS = [
    "id", "surname", "given_name", "patronymic", "course", "funding", "sex",
    "card_number", "mean_score", "enrollment_year", "status", "status_info",
]

_CONTROL_HEADER_RE = re.compile(r"^control(?:\((?P<table>[^)]*)\))?$")


def atomic_write_text(path: Path, text: str) -> None:
    """Write-then-rename so readers never observe a half-written file."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(text, encoding="utf-8", newline="\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def _csv_text(rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


def _read_csv(path: Path) -> list[list[str]]:
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            return list(csv.reader(handle))
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


# --- status cell ------------------------------------------------------------

def encode_status(status: StudentStatus) -> tuple[str, str]:
    if isinstance(status, Active):
        return "active", ""
    if isinstance(status, AcademicLeave):
        return "leave", f"{status.since.isoformat()}..{status.until.isoformat()}"
    return "expelled", f"{status.date.isoformat()};{status.reason}"


def decode_status(tag: str, info: str, path: Path, lineno: int) -> StudentStatus:
    try:
        if tag == "active":
            return Active()
        if tag == "leave":
            since, sep, until = info.partition("..")
            if not sep:
                raise ValueError(f"leave needs 'since..until', got {info!r}")
            return AcademicLeave(since=date.fromisoformat(since),
                                 until=date.fromisoformat(until))
        if tag == "expelled":
            when, sep, reason = info.partition(";")
            if not sep:
                raise ValueError(f"expelled needs 'date;reason', got {info!r}")
            return Expelled(date=date.fromisoformat(when), reason=reason)
    except ValueError as exc:
        raise MalformedFile(path, lineno, str(exc)) from exc
    raise MalformedFile(path, lineno, f"unknown status tag {tag!r}")


# --- plan files -------------------------------------------------------------

def _format_code_table(codes: dict[int, ControlKind]) -> str:
    return ";".join(f"{code}={kind.value}" for code, kind in sorted(codes.items()))


def _parse_code_table(text: str, path: Path) -> dict[int, ControlKind]:
    codes: dict[int, ControlKind] = {}
    for item in text.split(";"):
        code_s, sep, kind_s = item.partition("=")
        try:
            if not sep:
                raise ValueError(f"expected code=kind, got {item!r}")
            codes[int(code_s)] = ControlKind(kind_s)
        except ValueError as exc:
            raise MalformedFile(path, 1, f"bad control code table entry {item!r}") from exc
    return codes


def format_plan(group: Group, codes: dict[int, ControlKind]) -> str:
    reverse = {kind: code for code, kind in codes.items()}
    rows = [["ordinal", "discipline", "semester", f"control({_format_code_table(codes)})"]]
    for entry in group.curriculum:
        rows.append([str(entry.ordinal), entry.discipline, str(entry.semester),
                     str(reverse[entry.control])])
    return _csv_text(rows)


def parse_plan(path: Path, group_id: str) -> tuple[tuple[CurriculumEntry, ...],
                                                   dict[int, ControlKind] | None]:
    rows = _read_csv(path)
    if not rows:
        raise MalformedFile(path, 1, "empty plan file")
    header = rows[0]
    if len(header) != 4 or header[:3] != ["ordinal", "discipline", "semester"]:
        raise MalformedFile(path, 1, f"unexpected plan header {header!r}")
    match = _CONTROL_HEADER_RE.match(header[3])
    if not match:
        raise MalformedFile(path, 1, f"unexpected control column {header[3]!r}")
    codes = _parse_code_table(match.group("table"), path) if match.group("table") else None
    table = codes if codes is not None else _default_codes()
    entries = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise MalformedFile(path, lineno, f"expected 4 columns, got {len(row)}")
        try:
            ordinal, semester, code = int(row[0]), int(row[2]), int(row[3])
        except ValueError as exc:
            raise MalformedFile(path, lineno, str(exc)) from exc
        if code not in table:
            raise MalformedFile(path, lineno, f"control code {code} not in the table")
        try:
            entries.append(CurriculumEntry(id=entry_id(group_id, ordinal), ordinal=ordinal,
                                           discipline=row[1], semester=semester,
                                           control=table[code]))
        except ValueError as exc:
            raise MalformedFile(path, lineno, str(exc)) from exc
    return tuple(entries), codes


def _default_codes() -> dict[int, ControlKind]:
    from .model import DEFAULT_CONTROL_CODES

    return dict(DEFAULT_CONTROL_CODES)


# --- student files ----------------------------------------------------------

def format_students(records: list[StudentRecord], group: Group) -> str:
    header = STUDENT_BASE_COLUMNS + [str(e.ordinal) for e in group.curriculum]
    rows = [header]
    ordered = sorted(records, key=lambda r: (*r.name.sort_key(), r.id))
    for record in ordered:
        tag, info = encode_status(record.status)
        row = [record.id, record.name.surname, record.name.given_name,
               record.name.patronymic, str(record.course), record.funding.value,
               record.sex.value, record.card_number, str(record.mean_score),
               str(record.enrollment_year), tag, info]
        for entry in group.curriculum:
            delivered = record.deliveries.get(entry.id)
            row.append(delivered.isoformat() if delivered else "")
        rows.append(row)
    return _csv_text(rows)


def parse_students(path: Path, group: Group) -> list[StudentRecord]:
    rows = _read_csv(path)
    if not rows:
        raise MalformedFile(path, 1, "empty students file (a header is required)")
    header = rows[0]
    if header[:len(STUDENT_BASE_COLUMNS)] != STUDENT_BASE_COLUMNS:
        raise MalformedFile(path, 1, f"unexpected student columns {header!r}")
    entry_headers = header[len(STUDENT_BASE_COLUMNS):]
    plan_ordinals = [str(e.ordinal) for e in group.curriculum]
    if entry_headers != plan_ordinals:
        raise DanglingReference(
            f"{path}: delivery columns {entry_headers} do not match the plan of "
            f"group {group.id} ({plan_ordinals})")

    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise MalformedFile(path, lineno,
                                f"expected {len(header)} columns, got {len(row)}")
        base = row[:len(STUDENT_BASE_COLUMNS)]
        (sid, surname, given, patronymic, course_s, funding_s, sex_s,
         card, mean_s, year_s, tag, info) = base
        try:
            record = StudentRecord(
                id=sid,
                name=PersonName(surname, given, patronymic),
                card_number=card,
                group=group.id,
                course=int(course_s),
                funding=Funding(funding_s),
                sex=Sex(sex_s),
                mean_score=normalize_mean_score(mean_s),
                enrollment_year=int(year_s),
                status=decode_status(tag, info, path, lineno),
                deliveries={
                    entry.id: date.fromisoformat(cell)
                    for entry, cell in zip(group.curriculum, row[len(STUDENT_BASE_COLUMNS):])
                    if cell
                },
            )
        except MalformedFile:
            raise
        except ValueError as exc:
            raise MalformedFile(path, lineno, str(exc)) from exc
        records.append(record)
    return records


# --- groups index -----------------------------------------------------------

def format_groups(groups: list[Group]) -> str:
    rows = [["group", "course", "direction"]]
    for group in sorted(groups, key=lambda g: g.id):
        rows.append([group.id, str(group.course), group.direction])
    return _csv_text(rows)


def parse_groups(path: Path) -> dict[str, tuple[int, str]]:
    rows = _read_csv(path)
    if not rows or rows[0] != ["group", "course", "direction"]:
        raise MalformedFile(path, 1, "missing groups.csv header")
    meta = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise MalformedFile(path, lineno, f"expected 3 columns, got {len(row)}")
        try:
            meta[row[0]] = (int(row[1]), row[2])
        except ValueError as exc:
            raise MalformedFile(path, lineno, str(exc)) from exc
    return meta


# --- whole-store operations --------------------------------------------------

def load_registry(root: Path | str) -> Registry:
    """Read the whole store into an immutable registry, validating
    referential integrity along the way."""
    root = Path(root)
    students_dir = root / STUDENTS_DIR
    plans_dir = root / PLANS_DIR
    for required in (root, students_dir, plans_dir):
        if not required.is_dir():
            raise MalformedFile(required, None, "missing store directory")

    calendar = load_calendar(root / CALENDAR_FILE)

    groups_meta = {}
    if (root / GROUPS_FILE).exists():
        groups_meta = parse_groups(root / GROUPS_FILE)

    plans: dict[str, tuple[CurriculumEntry, ...]] = {}
    tables: dict[str, dict[int, ControlKind]] = {}
    for path in sorted(plans_dir.glob("*.csv")):
        group_id = path.stem
        entries, codes = parse_plan(path, group_id)
        plans[group_id] = entries
        if codes is not None:
            tables[group_id] = codes
    distinct_tables = {tuple(sorted(t.items())) for t in tables.values()}
    if len(distinct_tables) > 1:
        raise MalformedFile(plans_dir, None, "plan files disagree on the control code table")
    control_codes = dict(next(iter(distinct_tables))) if distinct_tables else _default_codes()

    group_ids = sorted(set(groups_meta) | set(plans)
                       | {p.stem for p in students_dir.glob("*.csv")})
    groups = {}
    for gid in group_ids:
        course, direction = groups_meta.get(gid, (1, ""))
        try:
            groups[gid] = Group(id=gid, course=course, direction=direction,
                                curriculum=plans.get(gid, ()))
        except ValueError as exc:
            raise MalformedFile(plans_dir / f"{gid}.csv", None, str(exc)) from exc

    students: dict[str, StudentRecord] = {}
    for gid in group_ids:
        path = students_dir / f"{gid}.csv"
        if not path.exists():
            continue
        for record in parse_students(path, groups[gid]):
            if record.id in students:
                raise DuplicateStudentId(
                    f"student id {record.id} appears in groups "
                    f"{students[record.id].group} and {gid}")
            students[record.id] = record

    log: tuple = ()
    log_path = root / contingent.LOG_FILE
    if log_path.exists():
        try:
            log = contingent.parse_log(log_path.read_text(encoding="utf-8"), log_path)
        except OSError as exc:
            raise IoFailure(f"{log_path}: {exc}") from exc
        for event in log:
            if event.kind is contingent.EventKind.ENROLL:
                continue
            if event.student not in students:
                raise DanglingReference(
                    f"{log_path}: event seq {event.seq} references unknown "
                    f"student {event.student}")

    return Registry(calendar=calendar, groups=groups, students=students,
                    log=log, control_codes=control_codes)


def save_registry(registry: Registry, root: Path | str) -> None:
    """Serialize the registry canonically, replacing the store in place."""
    root = Path(root)
    students_dir = root / STUDENTS_DIR
    plans_dir = root / PLANS_DIR
    try:
        students_dir.mkdir(parents=True, exist_ok=True)
        plans_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"{root}: {exc}") from exc

    atomic_write_text(root / CALENDAR_FILE, format_calendar(registry.calendar))

    codes = dict(registry.control_codes)
    members: dict[str, list[StudentRecord]] = {gid: [] for gid in registry.groups}
    for record in registry.students.values():
        members.setdefault(record.group, []).append(record)

    for gid in sorted(registry.groups):
        group = registry.groups[gid]
        atomic_write_text(plans_dir / f"{gid}.csv", format_plan(group, codes))
        atomic_write_text(students_dir / f"{gid}.csv",
                          format_students(members.get(gid, []), group))

    def _prune(directory: Path) -> None:
        for path in directory.glob("*.csv"):
            if path.stem not in registry.groups:
                try:
                    path.unlink()
                except OSError as exc:
                    raise IoFailure(f"{path}: {exc}") from exc

    _prune(students_dir)
    _prune(plans_dir)

    groups_path = root / GROUPS_FILE
    if registry.groups:
        atomic_write_text(groups_path, format_groups(list(registry.groups.values())))
    elif groups_path.exists():
        groups_path.unlink()

    log_path = root / contingent.LOG_FILE
    if registry.log:
        atomic_write_text(log_path, contingent.format_log(registry.log))
    elif log_path.exists():
        log_path.unlink()
