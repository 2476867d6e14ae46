"""Canonical document form of every value the API serves.

One dict builder per payload, with a stable field order, so the HTTP
layer, the golden tests and any script comparing outputs all see the
same bytes for the same registry state.
"""

from __future__ import annotations

from datetime import date

from .audit import AuditFinding
from .contingent import MovementEvent, MovementReport
from .labels import NO_SHOW_WORD, RU, GRADE_WORDS, mastery_label, percent_label
from .model import AcademicLeave, Expelled, Registry, StudentRecord
from .monitor import DebtPivotRow, DebtSeriesPoint, MasteryRow
from .sync import ExamSheet


def date_str(d: date | None) -> str | None:
    return d.isoformat() if d else None


def status_doc(record: StudentRecord) -> dict:
    status = record.status
    doc: dict = {"kind": status.kind}
    if isinstance(status, AcademicLeave):
        doc["since"] = status.since.isoformat()
        doc["until"] = status.until.isoformat()
    elif isinstance(status, Expelled):
        doc["date"] = status.date.isoformat()
        doc["reason"] = status.reason
    return doc


def student_doc(record: StudentRecord, as_of: date | None = None) -> dict:
    deliveries = {
        eid: delivered.isoformat()
        for eid, delivered in sorted(record.deliveries.items())
        if as_of is None or delivered <= as_of
    }
    return {
        "id": record.id,
        "name": {
            "surname": record.name.surname,
            "given_name": record.name.given_name,
            "patronymic": record.name.patronymic,
        },
        "card_number": record.card_number,
        "group": record.group,
        "course": record.course,
        "funding": record.funding.value,
        "sex": record.sex.value,
        "mean_score": str(record.mean_score),
        "enrollment_year": record.enrollment_year,
        "status": status_doc(record),
        "deliveries": deliveries,
    }


def pivot_row_doc(row: DebtPivotRow) -> dict:
    return {
        "student": row.student,
        "name": row.display_name,
        "group": row.group,
        "course": row.course,
        "mean_score": str(row.mean_score),
        "total_debts": row.total_debts,
        "last_delivery": date_str(row.last_delivery),
        "per_semester": {str(s): row.per_semester[s] for s in sorted(row.per_semester)},
        "funding": row.funding.value,
        "sex": row.sex.value,
    }


def mastery_row_doc(row: MasteryRow) -> dict:
    return {
        "group": row.group,
        "semester": row.semester,
        "discipline": row.discipline,
        "control": row.control.value,
        "label": mastery_label(row, RU),
        "not_passed": row.not_passed,
        "total": row.total,
        "percent": float(row.percent),
        "percent_label": percent_label(row.not_passed, row.total, RU),
        "color": row.color.value,
    }


def series_point_doc(point: DebtSeriesPoint) -> dict:
    return {"date": point.date.isoformat(), "total_debts": point.total_debts}


def event_doc(event: MovementEvent) -> dict:
    doc: dict = {
        "seq": event.seq,
        "date": event.timestamp.isoformat(),
        "kind": event.kind.value,
        "student": event.student,
    }
    if event.group is not None:
        doc["group"] = event.group
    if event.name is not None:
        doc["name"] = {"surname": event.name.surname, "given_name": event.name.given_name,
                       "patronymic": event.name.patronymic}
        doc["card_number"] = event.card_number or ""
        doc["funding"] = event.funding.value
        doc["sex"] = event.sex.value
        doc["mean_score"] = str(event.mean_score)
    if event.reason is not None:
        doc["reason"] = event.reason
    if event.debts_at_expulsion is not None:
        doc["debts_at_expulsion"] = event.debts_at_expulsion
    if event.from_group is not None:
        doc["from_group"] = event.from_group
        doc["to_group"] = event.to_group
    if event.until is not None:
        doc["until"] = event.until.isoformat()
    doc["actor"] = event.actor
    return doc


def report_doc(report: MovementReport) -> dict:
    def cell_block(getter) -> dict:
        return {
            funding: {sex: getter(funding, sex) for sex in ("male", "female")}
            for funding in ("budget", "contract")
        }

    doc: dict = {"period": report.period,
                 "opening": cell_block(lambda f, s: report.opening[(f, s)])}
    for kind in ("arrived", "left", "transferred"):
        doc[kind] = cell_block(lambda f, s, k=kind: report.cells[(k, f, s)])
    doc["closing"] = cell_block(lambda f, s: report.closing[(f, s)])
    doc["totals"] = {
        "opening": report.opening_total,
        "arrived": report.total("arrived"),
        "left": report.total("left"),
        "transferred": report.total("transferred"),
        "closing": report.closing_total,
    }
    return doc


def finding_doc(finding: AuditFinding) -> dict:
    return {
        "rule": finding.rule.value,
        "student": finding.student,
        "due_date": finding.due_date.isoformat(),
        "severity": finding.severity,
        "detail": finding.detail,
    }


def sheet_doc(sheet: ExamSheet) -> dict:
    header = sheet.header
    return {
        "header": {
            "institute": header.institute,
            "specialty_code": header.specialty_code,
            "semester": header.semester,
            "group": header.group,
            "department": header.department,
            "discipline": header.discipline,
            "control": header.control.value,
            "date": date_str(header.date),
            "teacher": header.teacher,
        },
        "rows": [
            {
                "ordinal": row.ordinal,
                "short_name": row.short_name,
                "record_book": row.record_book,
                "semester_points": row.semester_points,
                "final_rating": row.final_rating,
                "grade": GRADE_WORDS[RU][row.grade] if row.grade else NO_SHOW_WORD[RU],
                "date": date_str(row.date),
            }
            for row in sheet.rows
        ],
        "summary": {key: sheet.summary[key] for key in
                    ("excellent", "good", "satisfactory", "fail", "no_show")},
    }


def registry_doc(registry: Registry) -> dict:
    """Summary block used by the service root endpoint."""
    from .model import status_counts

    return {
        "groups": sorted(registry.groups),
        "students": len(registry.students),
        "statuses": status_counts(registry),
        "events": len(registry.log),
    }
