"""Display vocabulary and localized formatting.

Canonical field names and enum values are English everywhere in the API
and the store; the Russian strings here exist for rendered documents and
exports that mirror the original paperwork (headed sheet columns, the
б/к and м/ж shorthand, decimal commas, DD.MM.YYYY dates).
"""

from __future__ import annotations

from datetime import date
from decimal import Decimal

from .model import ControlKind, Funding, Sex
from .monitor import DebtPivotRow, MasteryRow, percent_not_passed
from .rating import Grade

RU = "ru"
EN = "en"
LOCALES = (RU, EN)

GRADE_WORDS = {
    RU: {Grade.FAIL: "неуд", Grade.SATISFACTORY: "удовл",
         Grade.GOOD: "хорошо", Grade.EXCELLENT: "отлично"},
    EN: {Grade.FAIL: "fail", Grade.SATISFACTORY: "satisfactory",
         Grade.GOOD: "good", Grade.EXCELLENT: "excellent"},
}

NO_SHOW_WORD = {RU: "неявка", EN: "no-show"}

CONTROL_WORDS = {
    RU: {ControlKind.EXAM: "экзамен", ControlKind.CREDIT: "зачет",
         ControlKind.DIFFERENTIATED_CREDIT: "дифференцированный зачет",
         ControlKind.COURSEWORK: "курсовая работа",
         ControlKind.PRACTICE: "практика"},
    EN: {ControlKind.EXAM: "exam", ControlKind.CREDIT: "credit",
         ControlKind.DIFFERENTIATED_CREDIT: "differentiated credit",
         ControlKind.COURSEWORK: "coursework", ControlKind.PRACTICE: "practice"},
}

FUNDING_LETTER = {Funding.BUDGET: "б", Funding.CONTRACT: "к"}
SEX_LETTER = {Sex.MALE: "м", Sex.FEMALE: "ж"}


def fmt_date(d: date | None, locale: str = RU) -> str:
    if d is None:
        return ""
    return d.strftime("%d.%m.%Y") if locale == RU else d.isoformat()


def fmt_score(score: Decimal, locale: str = RU) -> str:
    if locale == EN:
        return str(score)
    text = str(score.normalize()) if score == score.to_integral_value() else str(score)
    return text.replace(".", ",")


def percent_label(not_passed: int, total: int, locale: str = RU) -> str:
    """One-decimal percentage, trimming a zero fraction (40%, 6,7%)."""
    value = percent_not_passed(not_passed, total)
    if value == value.to_integral_value():
        text = str(value.quantize(Decimal("1")))
    else:
        text = str(value)
        if locale == RU:
            text = text.replace(".", ",")
    return f"{text}%"


PIVOT_HEADERS = {
    RU: ["ФИО", "группа", "курс", "Ср. балл", "Итого", "посл. сдача"],
    EN: ["name", "group", "course", "mean_score", "total_debts", "last_delivery"],
}
PIVOT_TAIL = {RU: ["б/к", "м/ж"], EN: ["funding", "sex"]}


def semester_header(semester: int, locale: str = RU) -> str:
    return f"{semester} семестр" if locale == RU else f"semester_{semester}"


def pivot_csv_rows(rows: list[DebtPivotRow], semesters: list[int],
                   locale: str = RU) -> list[list[str]]:
    header = (PIVOT_HEADERS[locale]
              + [semester_header(s, locale) for s in semesters]
              + PIVOT_TAIL[locale])
    out = [header]
    for row in rows:
        cells = [
            row.display_name, row.group, str(row.course),
            fmt_score(row.mean_score, locale), str(row.total_debts),
            fmt_date(row.last_delivery, locale),
        ]
        for s in semesters:
            count = row.per_semester.get(s)
            cells.append("" if count is None else str(count))
        if locale == RU:
            cells += [FUNDING_LETTER[row.funding], SEX_LETTER[row.sex]]
        else:
            cells += [row.funding.value, row.sex.value]
        out.append(cells)
    return out


MASTERY_HEADERS = {
    RU: ["Группа", "Семестр", "Дисциплина", "%", "Не сдано", "Всего"],
    EN: ["group", "semester", "discipline", "percent", "not_passed", "total"],
}


def mastery_label(row: MasteryRow, locale: str = RU) -> str:
    return f"{row.discipline} ({CONTROL_WORDS[locale][row.control]})"


def mastery_csv_rows(rows: list[MasteryRow], locale: str = RU) -> list[list[str]]:
    out = [list(MASTERY_HEADERS[locale])]
    for row in rows:
        out.append([row.group, str(row.semester), mastery_label(row, locale),
                    percent_label(row.not_passed, row.total, locale),
                    str(row.not_passed), str(row.total)])
    return out


SERIES_HEADERS = {RU: ["Дата", "Долги"], EN: ["date", "total_debts"]}


def series_csv_rows(points, locale: str = RU) -> list[list[str]]:
    out = [list(SERIES_HEADERS[locale])]
    for point in points:
        out.append([fmt_date(point.date, locale), str(point.total_debts)])
    return out


SHEET_TITLE = {RU: "ВЕДОМОСТЬ УЧЕТА ТЕКУЩЕЙ УСПЕВАЕМОСТИ",
               EN: "CURRENT PERFORMANCE RECORD SHEET"}
SHEET_COLUMNS = {
    RU: ["№", "Фамилия И.О.", "№ зач. книжки", "Рейтинг семестра",
         "Итог. рейтинг", "Оценка", "Дата", "Подпись"],
    EN: ["#", "short name", "record book", "semester rating",
         "final rating", "grade", "date", "signature"],
}
SHEET_SUMMARY_WORDS = {
    RU: {"excellent": "Отлично", "good": "Хорошо", "satisfactory": "Удовлетв",
         "fail": "Неудовлетв", "no_show": "Неявка"},
    EN: {"excellent": "Excellent", "good": "Good", "satisfactory": "Satisfactory",
         "fail": "Fail", "no_show": "No-show"},
}


def sheet_grade_word(grade: Grade | None, locale: str = RU) -> str:
    return NO_SHOW_WORD[locale] if grade is None else GRADE_WORDS[locale][grade]


def render_sheet_text(sheet, locale: str = RU) -> str:
    """Plain-text exam sheet in the shape of the printed document."""
    header = sheet.header
    head = {
        RU: (f"Институт {header.institute}  Специальность {header.specialty_code}  "
             f"Семестр {header.semester}  №гр {header.group}  Кафедра {header.department}",
             f"Дисциплина {header.discipline}  {CONTROL_WORDS[RU][header.control].upper()}",
             f"Дата {fmt_date(header.date, RU)}",
             f"Преподаватель {header.teacher}"),
        EN: (f"Institute {header.institute}  Specialty {header.specialty_code}  "
             f"Semester {header.semester}  Group {header.group}  Dept {header.department}",
             f"Discipline {header.discipline}  {CONTROL_WORDS[EN][header.control].upper()}",
             f"Date {fmt_date(header.date, EN)}",
             f"Teacher {header.teacher}"),
    }[locale]

    table = [list(SHEET_COLUMNS[locale])]
    for row in sheet.rows:
        table.append([
            str(row.ordinal), row.short_name, row.record_book,
            "" if row.semester_points is None else str(row.semester_points),
            "" if row.final_rating is None else str(row.final_rating),
            sheet_grade_word(row.grade, locale),
            fmt_date(row.date, locale), "",
        ])
    widths = [max(len(line[i]) for line in table) for i in range(len(table[0]))]
    body = [
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in table
    ]

    words = SHEET_SUMMARY_WORDS[locale]
    total_label = "ИТОГО" if locale == RU else "TOTAL"
    summary = [f"{total_label}: {words['excellent']} {sheet.summary['excellent']}"]
    summary += [f"{words[key]} {sheet.summary[key]}"
                for key in ("good", "satisfactory", "fail", "no_show")]

    lines = [SHEET_TITLE[locale], *head, "", *body, "", *summary]
    return "\n".join(lines) + "\n"
