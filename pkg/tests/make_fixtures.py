"""Regenerate the committed fixture store under tests/fixtures/demo_root.

Run as a script after changing the store format:

    python3 tests/make_fixtures.py
"""

from __future__ import annotations

from datetime import date
from pathlib import Path

from deanery.contingent import expel, leave_start, replay
from deanery.model import (
    ControlKind,
    CurriculumEntry,
    Funding,
    Group,
    PersonName,
    Registry,
    Sex,
    StudentRecord,
    entry_id,
)
from deanery.store import save_registry

FIXTURES = Path(__file__).parent / "fixtures"
DEMO_ROOT = FIXTURES / "demo_root"

C = ControlKind


def _entries(group_id: str, spec: list[tuple[str, int, ControlKind]]):
    return tuple(
        CurriculumEntry(id=entry_id(group_id, i), ordinal=i, discipline=name,
                        semester=semester, control=control)
        for i, (name, semester, control) in enumerate(spec, start=1))


GROUP_5210M = Group(
    id="5210M", course=2, direction="Информационные системы и технологии",
    curriculum=_entries("5210M", [
        ("Вычислительные системы", 1, C.EXAM),
        ("Компьютерные технологии в науке и телекоммуникации", 1, C.CREDIT),
        ("Математические основы криптологии", 1, C.EXAM),
        ("Исторический язык", 2, C.EXAM),
        ("Интерфейсы и протоколы информационных систем", 2, C.CREDIT),
        ("Научно-технический семинар", 2, C.CREDIT),
        ("Научно-технический семинар", 3, C.CREDIT),
        ("Криптология", 3, C.EXAM),
        ("Научно-исследовательская работа", 4, C.DIFFERENTIATED_CREDIT),
        ("Защита информации", 4, C.CREDIT),
    ]))

GROUP_5230M = Group(
    id="5230M", course=2, direction="Информационные системы и технологии",
    curriculum=_entries("5230M", [
        ("Администрирование информационных систем", 1, C.EXAM),
        ("Защита информации", 2, C.CREDIT),
        ("Методы исследования и моделирования информационных процессов и технологий",
         2, C.CREDIT),
        ("Мультиязычные технологии для мобильных систем", 3, C.COURSEWORK),
        ("Научно-исследовательская работа", 4, C.DIFFERENTIATED_CREDIT),
    ]))

GROUP_5131 = Group(
    id="5131", course=3, direction="Вычислительные машины и комплексы",
    curriculum=_entries("5131", [
        ("Кроссплатформенное программирование", 5, C.EXAM),
        ("Системное программирование", 5, C.CREDIT),
        ("Преддипломная практика", 6, C.PRACTICE),
    ]))


def _student(sid, group, surname, given, patronymic, card, sex, mean,
             year=2012, course=2, funding=Funding.BUDGET, deliveries=None):
    return StudentRecord(
        id=sid, name=PersonName(surname, given, patronymic), card_number=card,
        group=group, course=course, funding=funding, sex=sex, mean_score=mean,
        enrollment_year=year, deliveries=deliveries or {})


def _dated(group_id: str, ordinals_dates: dict[int, str]) -> dict[str, date]:
    return {entry_id(group_id, k): date.fromisoformat(v)
            for k, v in ordinals_dates.items()}


S1 = "2013-01-12"   # winter session, first year
S2 = "2013-06-20"   # summer session, first year
S3 = "2014-01-13"   # winter session, second year


def students_5210() -> list[StudentRecord]:
    g = "5210M"
    full = {1: S1, 2: S1, 3: S1, 4: S2, 5: S2, 6: S2, 7: S3, 8: S3}
    rows = [
        ("s-2101", "Абрамов", "Александр", "Петрович", "12/390", Sex.MALE, "5.00", full),
        ("s-2102", "Борода", "Мария", "Юрьевна", "12/598", Sex.FEMALE, "4.86", full),
        ("s-2103", "Васильев", "Игорь", "Анатольевич", "12/798", Sex.MALE, "4.23", full),
        ("s-2104", "Ежова", "Елена", "Геннадьевна", "12/898", Sex.FEMALE, "4.92", full),
        # two first-year debts, two second-year debts, last delivery 2013-01-01
        ("s-2105", "Мишурин", "Олег", "Владимирович", "12/000", Sex.MALE, "3.01",
         {1: "2013-01-01", 4: "2013-01-01", 7: S3, 8: S3}),
        ("s-2106", "Котов", "Вадим", "Петрович", "12/300", Sex.MALE, "3.72",
         {1: S1, 2: S1, 3: S1, 4: S2, 5: S2, 6: S2, 8: S3}),
        ("s-2107", "Маржолова", "Наталья", "Викторовна", "12/301", Sex.FEMALE, "4.01", full),
        ("s-2108", "Оленев", "Валентин", "Леонидович", "12/302", Sex.MALE, "5.00", full),
        ("s-2109", "Свиноглова", "Людмила", "Борисовна", "11/978", Sex.FEMALE, "4.91",
         {1: "2013-01-01", 4: "2012-12-20", 5: "2013-01-01", 7: S3, 8: S3}),
        ("s-2110", "Фильм", "Юрий", "Юрьевич", "12/501", Sex.MALE, "3.47",
         {1: S1, 2: S1, 3: S1, 4: S2, 5: S2, 6: S2, 8: S3}),
    ]
    return [
        _student(sid, g, surname, given, patronymic, card, sex, mean,
                 deliveries=_dated(g, dates))
        for sid, surname, given, patronymic, card, sex, mean, dates in rows
    ]


def students_5230() -> list[StudentRecord]:
    g = "5230M"
    return [
        _student("m-2301", g, "Мухоменов", "Николай", "Николаевич", "13/101",
                 Sex.MALE, "3.27", deliveries=_dated(g, {1: "2013-01-15"})),
        _student("m-2302", g, "Сидорова", "Мария", "Михайловна", "13/102",
                 Sex.FEMALE, "4.10",
                 deliveries=_dated(g, {1: "2013-01-15", 2: S2, 3: S2, 4: "2014-01-20"})),
        _student("m-2303", g, "Рязанцева", "Людмила", "Михайловна", "13/103",
                 Sex.FEMALE, "3.90", funding=Funding.CONTRACT,
                 deliveries=_dated(g, {1: "2013-01-15", 2: S2, 3: S2})),
        _student("m-2304", g, "Коломойцев", "Владимир", "Сергеевич", "13/104",
                 Sex.MALE, "2.95", funding=Funding.CONTRACT,
                 deliveries=_dated(g, {1: "2013-01-15", 2: S2})),
    ]


SHEET_PEOPLE = [
    ("t-001", "Абрамов", "Алексей", "Викторович", "2011/0856", Sex.MALE),
    ("t-002", "Бердина", "Дарья", "Владимировна", "2011/0373", Sex.FEMALE),
    ("t-003", "Васильев", "Андрей", "Михайлович", "2011/0376", Sex.MALE),
    ("t-004", "Вересов", "Иван", "Ульянович", "2011/0378", Sex.MALE),
    ("t-005", "Грабарь", "Сергей", "Андреевич", "2011/0381", Sex.MALE),
    ("t-006", "Ежова", "Ирина", "Олеговна", "2011/0385", Sex.FEMALE),
    ("t-007", "Ершов", "Кирилл", "Владимирович", "2011/0387", Sex.MALE),
    ("t-008", "Изотов", "Антон", "Евгеньевич", "2011/0388", Sex.MALE),
    ("t-009", "Коробков", "Никита", "Александрович", "2011/0389", Sex.MALE),
    ("t-010", "Кулин", "Константин", "Васильевич", "2010/0317", Sex.MALE),
    ("t-011", "Мамаев", "Игорь", "Сергеевич", "2011/0289", Sex.MALE),
    ("t-012", "Михалев", "Виктор", "Андреевич", "2011/0411", Sex.MALE),
    ("t-013", "Мишура", "Елена", "Анатольевна", "2011/0412", Sex.FEMALE),
    ("t-014", "Оленев", "Илья", "Валентинович", "2011/0421", Sex.MALE),
    ("t-015", "Пашков", "Артем", "Игоревич", "2011/1235", Sex.MALE),
    ("t-016", "Поляков", "Владимир", "Викторович", "2011/1237", Sex.MALE),
    ("t-017", "Свинолобова", "Раиса", "Олеговна", "2011/0428", Sex.FEMALE),
    ("t-018", "Семенов", "Дмитрий", "Иванович", "2011/0429", Sex.MALE),
    ("t-019", "Сыщиков", "Владислав", "Маркович", "2011/0431", Sex.MALE),
    ("t-020", "Усикова", "Вера", "Алексеевна", "2011/1267", Sex.FEMALE),
    ("t-021", "Филь", "Анна", "Дмитриевна", "2011/0437", Sex.FEMALE),
    ("t-022", "Хохлов", "Константин", "Сергеевич", "2011/0443", Sex.MALE),
]

# (student id, semester points, final rating); absent = no-show
SHEET_POINTS = {
    "t-001": (45, 65), "t-004": (60, 89), "t-006": (48, 70), "t-007": (45, 70),
    "t-008": (60, 100), "t-009": (45, 65), "t-010": (55, 85), "t-012": (49, 70),
    "t-014": (55, 70), "t-015": (41, 70), "t-016": (52, 91), "t-017": (40, 60),
    "t-018": (45, 65), "t-019": (60, 100), "t-020": (60, 100), "t-021": (58, 85),
    "t-022": (35, 60),
}

SHEET_DAY = "2014-01-13"


def students_5131() -> list[StudentRecord]:
    g = "5131"
    scores = ["4.50", "3.80", "3.60", "4.90", "3.20", "4.10", "4.00", "4.80",
              "4.20", "4.70", "3.40", "4.05", "3.30", "4.15", "3.95", "4.85",
              "3.75", "4.25", "4.95", "4.90", "4.60", "3.55"]
    return [
        _student(sid, g, surname, given, patronymic, card, sex, mean,
                 year=2011, course=3,
                 deliveries=_dated(g, {2: "2014-01-10"}))
        for (sid, surname, given, patronymic, card, sex), mean
        in zip(SHEET_PEOPLE, scores)
    ]


def exchange_file_text() -> str:
    lines = ["5131,Кроссплатформенное программирование,5,1,option1,2014-01-13,"
             "5,23040062,53,Иванов И.В."]
    for sid, _, _, _, card, _ in SHEET_PEOPLE:
        if sid in SHEET_POINTS:
            semester, final = SHEET_POINTS[sid]
            exam = final - semester
            lines.append(f"{sid},{card},{semester},{exam},0,{SHEET_DAY}")
        else:
            lines.append(f"{sid},{card},,,0,")
    return "\n".join(lines) + "\n"


def demo_registry() -> Registry:
    groups = {g.id: g for g in (GROUP_5210M, GROUP_5230M, GROUP_5131)}
    students = {
        s.id: s for s in (*students_5210(), *students_5230(), *students_5131())
    }
    registry = Registry(groups=groups, students=students)
    events = [
        leave_start(1, date(2013, 10, 1), "m-2301", until=date(2014, 1, 15),
                    actor="dean"),
        expel(2, date(2014, 1, 24), "m-2304", reason="болезнь", actor="dean"),
    ]
    return replay(events, registry)


def main() -> None:
    registry = demo_registry()
    DEMO_ROOT.mkdir(parents=True, exist_ok=True)
    save_registry(registry, DEMO_ROOT)
    exchange_dir = DEMO_ROOT / "exchange" / "in"
    exchange_dir.mkdir(parents=True, exist_ok=True)
    (exchange_dir / "winter_2014.csv").write_text(exchange_file_text(),
                                                  encoding="utf-8", newline="\n")
    print(f"fixture store written to {DEMO_ROOT}")


if __name__ == "__main__":
    main()
