"""Movement of the contingent: enrollment, expulsion, transfers, leave
and course advancement, recorded in an append-only log.

Every change to a student's status, group or course goes through an
event. The log is the authority for movement analytics; replaying it
over the initial state reproduces the current registry exactly.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from datetime import date
from decimal import Decimal
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

from .errors import MalformedFile, PreconditionViolated, UnknownGroup, UnknownStudent
from .model import (
    AcademicLeave,
    Active,
    Expelled,
    Funding,
    PersonName,
    Registry,
    Sex,
    StudentRecord,
    normalize_mean_score,
)
from .monitor import debts_of


class EventKind(str, Enum):
    ENROLL = "enroll"
    EXPEL = "expel"
    TRANSFER = "transfer"
    LEAVE_START = "leave_start"
    LEAVE_END = "leave_end"
    COURSE_ADVANCE = "course_advance"


def _clean(text: str, what: str) -> str:
    if "\t" in text or "\n" in text or "\r" in text:
        raise ValueError(f"{what} must not contain tabs or line breaks: {text!r}")
    return text


@dataclass(frozen=True)
class MovementEvent:
    """One line of the movement log. Payload fields are kind-specific;
    unused ones stay ``None``."""

    seq: int
    timestamp: date
    kind: EventKind
    student: str
    actor: str = ""
    # enroll payload
    group: str | None = None
    name: PersonName | None = None
    card_number: str | None = None
    funding: Funding | None = None
    sex: Sex | None = None
    mean_score: Decimal | None = None
    # expel payload
    reason: str | None = None
    debts_at_expulsion: int | None = None
    # transfer payload
    from_group: str | None = None
    to_group: str | None = None
    # leave_start payload
    until: date | None = None

    def __post_init__(self):
        if self.seq < 1:
            raise ValueError(f"event seq must be >= 1, got {self.seq}")
        _clean(self.student, "student id")
        _clean(self.actor, "actor")
        for value, what in ((self.group, "group"), (self.card_number, "card number"),
                            (self.reason, "reason"), (self.from_group, "from_group"),
                            (self.to_group, "to_group")):
            if value is not None:
                _clean(value, what)
        if self.name is not None:
            for part in (self.name.surname, self.name.given_name, self.name.patronymic):
                _clean(part, "name")


def enroll(seq: int, timestamp: date, student: str, group: str, name: PersonName,
           card_number: str, funding: Funding, sex: Sex, mean_score="0",
           actor: str = "") -> MovementEvent:
    return MovementEvent(seq=seq, timestamp=timestamp, kind=EventKind.ENROLL,
                         student=student, actor=actor, group=group, name=name,
                         card_number=card_number, funding=funding, sex=sex,
                         mean_score=normalize_mean_score(mean_score))


def expel(seq: int, timestamp: date, student: str, reason: str,
          actor: str = "") -> MovementEvent:
    return MovementEvent(seq=seq, timestamp=timestamp, kind=EventKind.EXPEL,
                         student=student, actor=actor, reason=reason)


def transfer(seq: int, timestamp: date, student: str, from_group: str, to_group: str,
             actor: str = "") -> MovementEvent:
    return MovementEvent(seq=seq, timestamp=timestamp, kind=EventKind.TRANSFER,
                         student=student, actor=actor, from_group=from_group,
                         to_group=to_group)


def leave_start(seq: int, timestamp: date, student: str, until: date,
                actor: str = "") -> MovementEvent:
    return MovementEvent(seq=seq, timestamp=timestamp, kind=EventKind.LEAVE_START,
                         student=student, actor=actor, until=until)


def leave_end(seq: int, timestamp: date, student: str, actor: str = "") -> MovementEvent:
    return MovementEvent(seq=seq, timestamp=timestamp, kind=EventKind.LEAVE_END,
                         student=student, actor=actor)


def course_advance(seq: int, timestamp: date, student: str, actor: str = "") -> MovementEvent:
    return MovementEvent(seq=seq, timestamp=timestamp, kind=EventKind.COURSE_ADVANCE,
                         student=student, actor=actor)


def _require(condition: bool, kind: EventKind, detail: str, seq: int) -> None:
    if not condition:
        raise PreconditionViolated(kind.value, detail, seq=seq)


def _remap_deliveries(record: StudentRecord, registry: Registry,
                      target_group_id: str, seq: int) -> dict[str, date]:
    """Match delivered entries into the target curriculum by discipline,
    semester and control kind; reject the transfer if any would be lost."""
    source = registry.group(record.group)
    target = registry.group(target_group_id)
    by_key = {(e.discipline, e.semester, e.control): e for e in target.curriculum}
    remapped: dict[str, date] = {}
    for eid, delivered in record.deliveries.items():
        entry = source.entry(eid)
        match = by_key.get((entry.discipline, entry.semester, entry.control)) if entry else None
        _require(match is not None, EventKind.TRANSFER,
                 f"target group {target_group_id} has no match for delivered entry {eid}", seq)
        remapped[match.id] = delivered
    return remapped


def apply_event(registry: Registry, event: MovementEvent) -> Registry:
    """Validate and apply one event, returning the new registry with the
    event appended (enriched with the frozen debt count for expulsions)."""
    _require(event.seq == registry.last_seq + 1, event.kind,
             f"expected seq {registry.last_seq + 1}, got {event.seq}", event.seq)
    if registry.log:
        _require(event.timestamp >= registry.log[-1].timestamp, event.kind,
                 f"timestamp {event.timestamp} precedes the log tail", event.seq)

    kind = event.kind
    if kind is EventKind.ENROLL:
        _require(event.student not in registry.students, kind,
                 f"student id {event.student} already used", event.seq)
        for required, what in ((event.group, "group"), (event.name, "name"),
                               (event.funding, "funding"), (event.sex, "sex")):
            _require(required is not None, kind, f"enroll needs a {what}", event.seq)
        group = registry.group(event.group)
        record = StudentRecord(
            id=event.student,
            name=event.name,
            card_number=event.card_number or "",
            group=group.id,
            course=group.course,
            funding=event.funding,
            sex=event.sex,
            mean_score=event.mean_score if event.mean_score is not None else Decimal("0"),
            enrollment_year=registry.calendar.enrollment_year_for(event.timestamp),
            status=Active(),
        )
        return registry.with_student(record).with_event(event)

    record = registry.student(event.student)

    if kind is EventKind.EXPEL:
        _require(isinstance(record.status, (Active, AcademicLeave)), kind,
                 f"student {record.id} is already expelled", event.seq)
        _require(event.reason is not None and event.reason != "", kind,
                 "expel needs a reason", event.seq)
        frozen = debts_of(registry, record.id, event.timestamp).total
        enriched = dataclasses.replace(event, debts_at_expulsion=frozen)
        updated = dataclasses.replace(
            record, status=Expelled(date=event.timestamp, reason=event.reason))
        return registry.with_student(updated).with_event(enriched)

    if kind is EventKind.TRANSFER:
        _require(isinstance(record.status, Active), kind,
                 f"student {record.id} is not active", event.seq)
        _require(event.from_group == record.group, kind,
                 f"student {record.id} is in {record.group}, not {event.from_group}", event.seq)
        if event.to_group not in registry.groups:
            raise UnknownGroup(event.to_group or "")
        _require(event.to_group != record.group, kind,
                 "transfer target equals the current group", event.seq)
        deliveries = _remap_deliveries(record, registry, event.to_group, event.seq)
        updated = dataclasses.replace(record, group=event.to_group, deliveries=deliveries)
        return registry.with_student(updated).with_event(event)

    if kind is EventKind.LEAVE_START:
        _require(isinstance(record.status, Active), kind,
                 f"student {record.id} is not active", event.seq)
        _require(event.until is not None and event.until > event.timestamp, kind,
                 "leave must end after it starts", event.seq)
        updated = dataclasses.replace(
            record, status=AcademicLeave(since=event.timestamp, until=event.until))
        return registry.with_student(updated).with_event(event)

    if kind is EventKind.LEAVE_END:
        _require(isinstance(record.status, AcademicLeave), kind,
                 f"student {record.id} is not on academic leave", event.seq)
        # Semesters do not advance during leave: push the enrollment
        # anchor forward by the academic years the leave consumed.
        calendar = registry.calendar
        shift = max(0, calendar.academic_year_of(event.timestamp)
                    - calendar.academic_year_of(record.status.since))
        updated = dataclasses.replace(
            record, status=Active(), enrollment_year=record.enrollment_year + shift)
        return registry.with_student(updated).with_event(event)

    if kind is EventKind.COURSE_ADVANCE:
        _require(isinstance(record.status, Active), kind,
                 f"student {record.id} is not active", event.seq)
        group = registry.groups.get(record.group)
        if group is not None and group.curriculum:
            limit = registry.calendar.courses_in(group.max_semester)
            _require(record.course + 1 <= limit, kind,
                     f"student {record.id} is already in the final course", event.seq)
        updated = dataclasses.replace(record, course=record.course + 1)
        return registry.with_student(updated).with_event(event)

    raise PreconditionViolated(str(kind), "unhandled event kind", seq=event.seq)


def replay(events: Iterable[MovementEvent], base: Registry) -> Registry:
    """Fold events over a base registry; the first invalid event aborts
    the whole replay (the base is never mutated)."""
    registry = base
    for event in events:
        registry = apply_event(registry, event)
    return registry


def empty_base(registry: Registry) -> Registry:
    """The registry's group and calendar scaffold with no students and an
    empty log, suitable as a replay base."""
    return dataclasses.replace(registry, students={}, log=())


# --- monthly movement report ---------------------------------------------

REPORT_KINDS = ("arrived", "left", "transferred")
_EVENT_TO_REPORT = {EventKind.ENROLL: "arrived", EventKind.EXPEL: "left",
                    EventKind.TRANSFER: "transferred"}


def _cell_keys():
    for funding in Funding:
        for sex in Sex:
            yield funding.value, sex.value


@dataclass(frozen=True)
class MovementReport:
    """Arrived / left / transferred counts for one month, broken down by
    funding form and sex, with opening and closing headcounts."""

    year: int
    month: int
    cells: Mapping[tuple[str, str, str], int]
    opening: Mapping[tuple[str, str], int]
    closing: Mapping[tuple[str, str], int]

    @property
    def period(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def total(self, kind: str) -> int:
        return sum(v for (k, _, _), v in self.cells.items() if k == kind)

    @property
    def opening_total(self) -> int:
        return sum(self.opening.values())

    @property
    def closing_total(self) -> int:
        return sum(self.closing.values())


def _headcount(registry: Registry) -> dict[tuple[str, str], int]:
    counts = {key: 0 for key in _cell_keys()}
    for record in registry.students.values():
        if not isinstance(record.status, Expelled):
            counts[(record.funding.value, record.sex.value)] += 1
    return counts


def movement_report(log: Iterable[MovementEvent], registry: Registry,
                    year: int, month: int) -> MovementReport:
    """Tally one month of the log: arrivals, departures and transfers per
    funding form and sex, plus opening and closing headcounts.

    ``registry`` is the state the log tail produced (the current
    registry); headcounts for the period are reconstructed from it by
    undoing the enrollments and expulsions recorded after the month, so
    the report works for journals that extend a loaded snapshot as well
    as for logs replayed from scratch.
    """
    month_start = date(year, month, 1)
    month_end = date(year + (month == 12), month % 12 + 1, 1)

    events = list(log)
    for previous, current in zip(events, events[1:]):
        if current.timestamp < previous.timestamp:
            raise ValueError("movement log timestamps must be non-decreasing")

    def cell_of(event: MovementEvent) -> tuple[str, str]:
        if event.kind is EventKind.ENROLL:
            return event.funding.value, event.sex.value
        record = registry.student(event.student)
        return record.funding.value, record.sex.value

    cells = {(kind, f, s): 0 for kind in REPORT_KINDS for f, s in _cell_keys()}
    for event in events:
        if not month_start <= event.timestamp < month_end:
            continue
        report_kind = _EVENT_TO_REPORT.get(event.kind)
        if report_kind is not None:
            cells[(report_kind, *cell_of(event))] += 1

    closing = _headcount(registry)
    for event in events:
        if event.timestamp < month_end:
            continue
        if event.kind is EventKind.ENROLL:
            closing[cell_of(event)] -= 1
        elif event.kind is EventKind.EXPEL:
            closing[cell_of(event)] += 1

    opening = {
        key: closing[key] - cells[("arrived", *key)] + cells[("left", *key)]
        for key in closing
    }
    return MovementReport(year=year, month=month, cells=cells,
                          opening=opening, closing=closing)


# --- log file and report serialization ------------------------------------

LOG_FILE = "report.log"

_PAYLOAD_ARITY = {EventKind.ENROLL: 8, EventKind.EXPEL: 2, EventKind.TRANSFER: 2,
                  EventKind.LEAVE_START: 1, EventKind.LEAVE_END: 0,
                  EventKind.COURSE_ADVANCE: 0}


def format_event(event: MovementEvent) -> str:
    payload: list[str]
    if event.kind is EventKind.ENROLL:
        payload = [event.group, event.name.surname, event.name.given_name,
                   event.name.patronymic, event.card_number or "",
                   event.funding.value, event.sex.value, str(event.mean_score)]
    elif event.kind is EventKind.EXPEL:
        payload = [event.reason,
                   "" if event.debts_at_expulsion is None else str(event.debts_at_expulsion)]
    elif event.kind is EventKind.TRANSFER:
        payload = [event.from_group, event.to_group]
    elif event.kind is EventKind.LEAVE_START:
        payload = [event.until.isoformat()]
    else:
        payload = []
    fields = [str(event.seq), event.timestamp.isoformat(), event.kind.value,
              event.student, *payload, event.actor]
    return "\t".join(fields)


def parse_event(line: str, path: str | Path = LOG_FILE,
                lineno: int | None = None) -> MovementEvent:
    fields = line.rstrip("\n").split("\t")
    if len(fields) < 5:
        raise MalformedFile(path, lineno, f"event line has {len(fields)} fields")
    try:
        seq = int(fields[0])
        timestamp = date.fromisoformat(fields[1])
        kind = EventKind(fields[2])
    except ValueError as exc:
        raise MalformedFile(path, lineno, f"bad event head: {exc}") from exc
    student, payload, actor = fields[3], fields[4:-1], fields[-1]
    if len(payload) != _PAYLOAD_ARITY[kind]:
        raise MalformedFile(path, lineno,
                            f"{kind.value} event expects {_PAYLOAD_ARITY[kind]} payload "
                            f"fields, got {len(payload)}")
    try:
        if kind is EventKind.ENROLL:
            return MovementEvent(
                seq=seq, timestamp=timestamp, kind=kind, student=student, actor=actor,
                group=payload[0],
                name=PersonName(payload[1], payload[2], payload[3]),
                card_number=payload[4], funding=Funding(payload[5]), sex=Sex(payload[6]),
                mean_score=normalize_mean_score(payload[7]))
        if kind is EventKind.EXPEL:
            debts = int(payload[1]) if payload[1] else None
            return MovementEvent(seq=seq, timestamp=timestamp, kind=kind, student=student,
                                 actor=actor, reason=payload[0], debts_at_expulsion=debts)
        if kind is EventKind.TRANSFER:
            return MovementEvent(seq=seq, timestamp=timestamp, kind=kind, student=student,
                                 actor=actor, from_group=payload[0], to_group=payload[1])
        if kind is EventKind.LEAVE_START:
            return MovementEvent(seq=seq, timestamp=timestamp, kind=kind, student=student,
                                 actor=actor, until=date.fromisoformat(payload[0]))
        return MovementEvent(seq=seq, timestamp=timestamp, kind=kind,
                             student=student, actor=actor)
    except Exception as exc:
        raise MalformedFile(path, lineno, f"bad {kind.value} payload: {exc}") from exc


def format_log(events: Iterable[MovementEvent]) -> str:
    lines = [format_event(e) for e in events]
    return "\n".join(lines) + "\n" if lines else ""


def parse_log(text: str, path: str | Path = LOG_FILE) -> tuple[MovementEvent, ...]:
    events = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        events.append(parse_event(line, path, lineno))
    for prev, cur in zip(events, events[1:]):
        if cur.seq != prev.seq + 1:
            raise MalformedFile(path, None,
                                f"event seq must be contiguous, {prev.seq} followed by {cur.seq}")
    return tuple(events)


REPORT_HEADER = ["period", "kind", "funding", "sex", "count"]
_REPORT_ROW_KINDS = ("opening", *REPORT_KINDS, "closing")


def format_report_csv(report: MovementReport) -> str:
    import csv
    import io

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for kind in _REPORT_ROW_KINDS:
        for funding, sex in _cell_keys():
            if kind == "opening":
                count = report.opening[(funding, sex)]
            elif kind == "closing":
                count = report.closing[(funding, sex)]
            else:
                count = report.cells[(kind, funding, sex)]
            writer.writerow([report.period, kind, funding, sex, count])
    writer.writerow([report.period, "total", "all", "all", report.closing_total])
    return buffer.getvalue()


def parse_report_csv(text: str, path: str | Path = "<report>") -> MovementReport:
    import csv
    import io

    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != REPORT_HEADER:
        raise MalformedFile(path, 1, "missing movement report header")
    period = None
    cells = {}
    opening = {}
    closing = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 5:
            raise MalformedFile(path, lineno, f"expected 5 columns, got {len(row)}")
        period, kind, funding, sex, count = row
        if kind == "total":
            continue
        try:
            value = int(count)
        except ValueError as exc:
            raise MalformedFile(path, lineno, f"bad count {count!r}") from exc
        if kind == "opening":
            opening[(funding, sex)] = value
        elif kind == "closing":
            closing[(funding, sex)] = value
        elif kind in REPORT_KINDS:
            cells[(kind, funding, sex)] = value
        else:
            raise MalformedFile(path, lineno, f"unknown report row kind {kind!r}")
    if period is None:
        raise MalformedFile(path, None, "report has no data rows")
    year, _, month = period.partition("-")
    return MovementReport(year=int(year), month=int(month), cells=cells,
                          opening=opening, closing=closing)


def export_report(report: MovementReport, path: Path) -> None:
    from .store import atomic_write_text

    atomic_write_text(path, format_report_csv(report))
