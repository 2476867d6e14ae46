from __future__ import annotations

import random
from datetime import date, timedelta
from decimal import Decimal
from fractions import Fraction

import pytest

from deanery.contingent import apply_event, expel
from deanery.labels import percent_label
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
    set_delivery,
)
from deanery.monitor import (
    MasteryColor,
    StudentFilter,
    classify_mastery,
    debt_series,
    debts_of,
    mastery_table,
    pivot,
)

from .generators import make_registry
from .oracles import oracle_debts

AS_OF = date(2013, 9, 15)       # after the 2012/13 summer session
LATER = date(2014, 2, 1)        # after the 2013/14 winter session


def flat_group(gid="T100", entries=6, semesters=(1, 1, 1, 2, 2, 2)) -> Group:
    curriculum = tuple(
        CurriculumEntry(id=entry_id(gid, i), ordinal=i, discipline=f"Д-{i}",
                        semester=semesters[i - 1], control=ControlKind.EXAM)
        for i in range(1, entries + 1))
    return Group(id=gid, course=1, direction="Т", curriculum=curriculum)


def student(sid, gid="T100", year=2012, deliveries=None, **kwargs):
    defaults = dict(
        id=sid, name=PersonName(f"Фамилия{sid}", "Имя"), card_number="12/345",
        group=gid, course=1, funding=Funding.BUDGET, sex=Sex.MALE,
        mean_score=Decimal("4.00"), enrollment_year=year,
        deliveries=deliveries or {})
    defaults.update(kwargs)
    return StudentRecord(**defaults)


def registry_with(group: Group, *records: StudentRecord) -> Registry:
    return Registry(groups={group.id: group},
                    students={r.id: r for r in records})


class TestDebtsOf:
    def test_all_delivered_means_zero(self):
        group = flat_group()
        deliveries = {e.id: date(2013, 6, 1) for e in group.curriculum}
        registry = registry_with(group, student("a", deliveries=deliveries))
        summary = debts_of(registry, "a", AS_OF)
        assert summary.total == 0
        assert all(v == 0 for v in summary.per_semester.values())

    def test_reference_row_two_plus_two(self, demo_registry):
        summary = debts_of(demo_registry, "s-2105", AS_OF)
        assert dict(summary.per_semester) == {1: 2, 2: 2, 3: 0, 4: 0}
        assert summary.total == 4
        assert summary.last_delivery == date(2013, 1, 1)

    def test_before_first_boundary_nothing_is_owed(self):
        group = flat_group()
        registry = registry_with(group, student("a"))  # nothing delivered
        early = date(2013, 1, 21)  # one day before the session ends
        assert debts_of(registry, "a", early).total == 0
        on_boundary = date(2013, 1, 22)
        assert debts_of(registry, "a", on_boundary).total == 3

    def test_delivery_after_as_of_still_counts_as_debt(self):
        group = flat_group()
        deliveries = {entry_id("T100", 1): date(2013, 10, 1)}
        registry = registry_with(group, student("a", deliveries=deliveries))
        assert debts_of(registry, "a", AS_OF).per_semester[1] == 3
        assert debts_of(registry, "a", date(2013, 10, 1)).per_semester[1] == 2

    def test_leave_freezes_progression(self):
        from deanery.model import AcademicLeave

        group = flat_group()
        frozen = student("a", status=AcademicLeave(since=date(2013, 2, 1),
                                                   until=date(2014, 2, 1)))
        registry = registry_with(group, frozen)
        # the spring semester finished during the leave; it must not count
        summary = debts_of(registry, "a", AS_OF)
        assert summary.per_semester == {1: 3, 2: 0}

    def test_matches_oracle_on_random_registries(self):
        rng = random.Random(42)
        for _ in range(25):
            registry = make_registry(rng)
            for sid in registry.students:
                as_of = date(2012, 1, 1) + timedelta(days=rng.randint(0, 1500))
                summary = debts_of(registry, sid, as_of)
                per, total, last = oracle_debts(registry, sid, as_of)
                assert dict(summary.per_semester) == per
                assert summary.total == total
                assert summary.last_delivery == last


class TestPivot:
    def test_active_group_has_ten_rows(self, demo_registry):
        rows = pivot(demo_registry, StudentFilter(group="5210M"), AS_OF)
        assert len(rows) == 10
        assert [r.display_name for r in rows[:2]] == [
            "Абрамов Александр Петрович", "Борода Мария Юрьевна"]

    def test_row_totals_match_per_semester(self, demo_registry):
        for flt in (StudentFilter(), StudentFilter(status="leave")):
            for row in pivot(demo_registry, flt, LATER):
                assert row.total_debts == sum(row.per_semester.values())

    def test_expelled_rows_are_frozen(self, demo_registry):
        rows = pivot(demo_registry, StudentFilter(status="expelled"), LATER)
        assert len(rows) == 1
        row = rows[0]
        assert row.student == "m-2304"
        assert row.total_debts == 2
        assert row.per_semester == {}

    def test_expelled_total_ignores_later_edits(self, demo_registry):
        # clearing a delivery would raise the live count, the frozen one stays
        registry = set_delivery(demo_registry, "m-2304",
                                entry_id("5230M", 1), None)
        row = pivot(registry, StudentFilter(status="expelled"), LATER)[0]
        assert row.total_debts == 2

    def test_sort_directions_reverse_on_distinct_keys(self, demo_registry):
        ascending = pivot(demo_registry, StudentFilter(group="5210M"), LATER,
                          sort="mean_score")
        descending = pivot(demo_registry, StudentFilter(group="5210M"), LATER,
                           sort="mean_score", descending=True)
        keys = [r.mean_score for r in ascending]
        distinct = [r for r in ascending if keys.count(r.mean_score) == 1]
        assert [r.student for r in reversed(descending)
                if keys.count(r.mean_score) == 1] == [r.student for r in distinct]

    def test_ties_break_by_name_in_both_directions(self, demo_registry):
        for descending in (False, True):
            rows = pivot(demo_registry, StudentFilter(group="5210M"), AS_OF,
                         sort="funding", descending=descending)
            names = [r.display_name for r in rows]
            assert names == sorted(names)  # single funding value, pure tie

    def test_filters_conjoin(self, demo_registry):
        rows = pivot(demo_registry, StudentFilter(group="5210M", sex=Sex.FEMALE), AS_OF)
        assert {r.student for r in rows} == {"s-2102", "s-2104", "s-2107", "s-2109"}
        rows = pivot(demo_registry,
                     StudentFilter(direction="Информационные системы и технологии",
                                   funding=Funding.CONTRACT), AS_OF)
        assert {r.student for r in rows} == {"m-2303"}

    def test_status_filters_partition_students(self, demo_registry):
        seen = []
        for status in ("active", "leave", "expelled"):
            seen += [r.student for r in
                     pivot(demo_registry, StudentFilter(status=status), AS_OF)]
        assert sorted(seen) == sorted(demo_registry.students)

    def test_unknown_sort_column(self, demo_registry):
        with pytest.raises(ValueError):
            pivot(demo_registry, StudentFilter(), AS_OF, sort="쓸모없는")

    def test_per_semester_sort_column(self, demo_registry):
        rows = pivot(demo_registry, StudentFilter(group="5210M"), AS_OF,
                     sort="s1", descending=True)
        assert rows[0].per_semester[1] == 2


class TestMastery:
    @pytest.mark.parametrize("not_passed,total,color", [
        (4, 10, MasteryColor.RED),
        (3, 10, MasteryColor.YELLOW),   # exactly 30% is not "more than 30%"
        (1, 10, MasteryColor.YELLOW),
        (1, 15, MasteryColor.YELLOW),
        (0, 15, MasteryColor.GREEN),
        (10, 10, MasteryColor.RED),
    ])
    def test_classification(self, not_passed, total, color):
        assert classify_mastery(not_passed, total) is color

    @pytest.mark.parametrize("not_passed,total,label", [
        (4, 10, "40%"),
        (3, 10, "30%"),
        (1, 15, "6,7%"),
        (0, 15, "0%"),
        (1, 3, "33,3%"),
    ])
    def test_percent_labels(self, not_passed, total, label):
        assert percent_label(not_passed, total) == label

    def test_rows_only_for_completed_semesters(self):
        group = flat_group()
        registry = registry_with(group, student("a"), student("b"))
        rows = mastery_table(registry, date(2013, 2, 1))  # spring not finished
        assert {r.semester for r in rows} == {1}

    def test_sorted_worst_first_and_colors_total(self, demo_registry):
        rows = mastery_table(demo_registry, LATER)
        fractions = [Fraction(r.not_passed, r.total) for r in rows]
        assert fractions == sorted(fractions, reverse=True)
        assert all(r.color in MasteryColor for r in rows)

    def test_conservation_against_pivot(self, demo_registry):
        rows = mastery_table(demo_registry, LATER)
        for gid in demo_registry.groups:
            actives = [s for s in demo_registry.group_members(gid) if s.is_active]
            semesters = {r.semester for r in rows if r.group == gid}
            for semester in semesters:
                table_sum = sum(r.not_passed for r in rows
                                if r.group == gid and r.semester == semester)
                pivot_sum = sum(
                    debts_of(demo_registry, s.id, LATER).per_semester.get(semester, 0)
                    for s in actives)
                assert table_sum == pivot_sum

    def test_leave_students_out_of_denominator(self, demo_registry):
        rows = [r for r in mastery_table(demo_registry, LATER) if r.group == "5230M"]
        # four students minus one on leave minus one expelled
        assert all(r.total == 2 for r in rows)


class TestDebtSeries:
    def test_empty_registry_flat_zero(self):
        registry = Registry()
        points = debt_series(registry, StudentFilter(), date(2013, 1, 1),
                             date(2013, 3, 1), 14)
        assert all(p.total_debts == 0 for p in points)
        assert [p.date for p in points][:2] == [date(2013, 1, 1), date(2013, 1, 15)]

    def test_single_delivery_shifts_the_tail(self):
        group = flat_group()
        registry = registry_with(group, student("a"))
        when = date(2013, 3, 1)
        before = debt_series(registry, StudentFilter(), date(2013, 1, 1),
                             date(2013, 5, 1), 7)
        after_reg = set_delivery(registry, "a", entry_id("T100", 1), when)
        after = debt_series(after_reg, StudentFilter(), date(2013, 1, 1),
                            date(2013, 5, 1), 7)
        for old, new in zip(before, after):
            expected = old.total_debts - (1 if old.date >= when else 0)
            assert new.total_debts == expected

    def test_single_point_equals_pivot_sum(self, demo_registry):
        points = debt_series(demo_registry, StudentFilter(), LATER, LATER, 1)
        assert len(points) == 1
        rows = pivot(demo_registry, StudentFilter(), LATER)
        assert points[0].total_debts == sum(r.total_debts for r in rows)

    def test_validation(self, demo_registry):
        with pytest.raises(ValueError):
            debt_series(demo_registry, StudentFilter(), LATER, AS_OF, 7)
        with pytest.raises(ValueError):
            debt_series(demo_registry, StudentFilter(), AS_OF, LATER, 0)


class TestMonotoneHistory:
    def test_totals_never_decrease_at_boundaries_and_never_increase_at_deliveries(self):
        group = flat_group()
        deliveries = {entry_id("T100", 1): date(2013, 2, 10),
                      entry_id("T100", 4): date(2013, 8, 1)}
        registry = registry_with(group, student("a", deliveries=deliveries))
        boundary_events = {date(2013, 1, 22), date(2013, 7, 2)}
        delivery_events = set(deliveries.values())
        previous = None
        for offset in range(0, 600, 1):
            day = date(2013, 1, 1) + timedelta(days=offset)
            total = debts_of(registry, "a", day).total
            if previous is not None:
                if day in boundary_events:
                    assert total >= previous
                if day in delivery_events:
                    assert total <= previous
                if day not in boundary_events | delivery_events:
                    assert total == previous
            previous = total


class TestFrozenDebtsComeFromTheEvent:
    def test_event_value_wins_over_recomputation(self):
        group = flat_group()
        registry = registry_with(group, student("a"))
        registry = apply_event(registry, expel(1, date(2013, 9, 1), "a",
                                               reason="неуспеваемость"))
        event = registry.log[-1]
        assert event.debts_at_expulsion == 6  # both finished semesters undelivered
        rows = pivot(registry, StudentFilter(status="expelled"), LATER)
        assert rows[0].total_debts == 6
