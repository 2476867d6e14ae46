"""Acceptance suite: one test per release criterion, each printing a
pass/fail line in the terminal summary (see conftest)."""

from __future__ import annotations

import dataclasses
import json
import random
import time
from datetime import date, timedelta
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from deanery.audit import AuditRule, run_audit
from deanery.contingent import (
    EventKind,
    apply_event,
    course_advance,
    empty_base,
    expel,
    leave_end,
    movement_report,
    replay,
)
from deanery.labels import GRADE_WORDS, RU, percent_label
from deanery.model import AcademicLeave, Registry
from deanery.monitor import MasteryColor, classify_mastery, debts_of
from deanery.rating import DEFAULT_SCALE, OPTION_1, OPTION_2, Grade, to_grade
from deanery.service import ApiConfig, create_app
from deanery.store import load_registry, save_registry
from deanery.sync import build_sheet, parse_exchange

from .conftest import DEMO_ROOT, GOLDEN
from .generators import EventSequenceBuilder, make_registry, make_transfer_pools
from .oracles import oracle_debts, oracle_findings


@pytest.mark.acceptance("exam-sheet reproduction (22-row fixture)")
def test_exam_sheet_reproduction(demo_registry):
    from .make_fixtures import SHEET_PEOPLE, SHEET_POINTS

    started = time.monotonic()
    text = (DEMO_ROOT / "exchange" / "in" / "winter_2014.csv") \
        .read_text(encoding="utf-8")
    record = parse_exchange(text, demo_registry.control_codes)
    sheet = build_sheet(demo_registry, record, DEFAULT_SCALE)

    assert sheet.summary == {"excellent": 7, "good": 5, "satisfactory": 5,
                             "fail": 0, "no_show": 5}

    printed_words = {
        "t-001": "удовл", "t-004": "отлично", "t-006": "хорошо",
        "t-007": "хорошо", "t-008": "отлично", "t-009": "удовл",
        "t-010": "отлично", "t-012": "хорошо", "t-014": "хорошо",
        "t-015": "хорошо", "t-016": "отлично", "t-017": "удовл",
        "t-018": "удовл", "t-019": "отлично", "t-020": "отлично",
        "t-021": "отлично", "t-022": "удовл",
    }
    books = {sid: card for sid, *_rest, card, _sex in
             ((p[0], p[1], p[2], p[3], p[4], p[5]) for p in SHEET_PEOPLE)}
    by_book = {row.record_book: row for row in sheet.rows}
    for sid, word in printed_words.items():
        row = by_book[books[sid]]
        assert GRADE_WORDS[RU][row.grade] == word
        semester, final = SHEET_POINTS[sid]
        assert (row.semester_points, row.final_rating) == (semester, final)
    no_shows = [row for row in sheet.rows if row.grade is None]
    assert len(no_shows) == 5
    assert time.monotonic() - started < 1.0


@pytest.mark.acceptance("grade-scale exactness at all 101 points")
def test_grade_scale_exactness():
    started = time.monotonic()
    for points in range(101):
        expected = (Grade.FAIL if points < 55 else
                    Grade.SATISFACTORY if points < 70 else
                    Grade.GOOD if points < 85 else Grade.EXCELLENT)
        assert to_grade(points, DEFAULT_SCALE) is expected
    for points, grade in ((54, Grade.FAIL), (55, Grade.SATISFACTORY),
                          (69, Grade.SATISFACTORY), (70, Grade.GOOD),
                          (84, Grade.GOOD), (85, Grade.EXCELLENT)):
        assert to_grade(points) is grade
    assert time.monotonic() - started < 1.0


@pytest.mark.acceptance("rating option presets")
def test_option_presets():
    assert (OPTION_1.max_semester_points, OPTION_1.max_exam_points,
            OPTION_1.bonus_threshold, OPTION_1.max_bonus_points,
            OPTION_1.admission_points) == (60, 40, 50, 30, 35)
    assert (OPTION_2.max_semester_points, OPTION_2.max_exam_points,
            OPTION_2.bonus_threshold, OPTION_2.max_bonus_points,
            OPTION_2.admission_points) == (80, 20, 70, 20, 45)
    for option in (OPTION_1, OPTION_2):
        assert option.max_semester_points + option.max_exam_points == 100


@pytest.mark.acceptance("mastery thresholds and percent rendering")
def test_mastery_thresholds():
    cases = [
        (4, 10, MasteryColor.RED),
        (3, 10, MasteryColor.YELLOW),
        (1, 10, MasteryColor.YELLOW),
        (1, 15, MasteryColor.YELLOW),
        (0, 15, MasteryColor.GREEN),
    ]
    for not_passed, total, color in cases:
        assert classify_mastery(not_passed, total) is color
    assert percent_label(1, 15) == "6,7%"
    assert percent_label(4, 10) == "40%"
    assert percent_label(3, 10) == "30%"
    assert percent_label(1, 10) == "10%"
    assert percent_label(0, 15) == "0%"


@pytest.mark.acceptance("debt oracle equivalence (1000 registries x 10 dates)")
def test_debt_oracle_equivalence():
    started = time.monotonic()
    rng = random.Random(2014)
    for index in range(1000):
        if index % 50 == 0:
            registry = make_registry(rng, max_groups=20, max_students=30)
        else:
            registry = make_registry(rng, max_groups=3, max_students=8)
        dates = [date(2011, 9, 1) + timedelta(days=rng.randint(0, 1800))
                 for _ in range(10)]
        for sid in registry.students:
            for as_of in dates:
                summary = debts_of(registry, sid, as_of)
                per, total, last = oracle_debts(registry, sid, as_of)
                assert dict(summary.per_semester) == per, (index, sid, as_of)
                assert summary.total == total, (index, sid, as_of)
                assert summary.last_delivery == last, (index, sid, as_of)
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"debt oracle sweep took {elapsed:.1f}s"


def _tree(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}


@pytest.mark.acceptance("event-sourcing replay (1000-event logs)")
def test_event_replay_byte_identical(tmp_path):
    for seed in (101, 202, 303):
        base = make_transfer_pools(random.Random(seed))
        builder = EventSequenceBuilder(random.Random(seed + 1), base,
                                       start=date(2012, 9, 1))
        builder.run(1000)
        current = builder.registry

        replayed = replay(builder.events, empty_base(current))
        assert replayed == current

        left = tmp_path / f"incremental-{seed}"
        right = tmp_path / f"replayed-{seed}"
        save_registry(current, left)
        save_registry(replayed, right)
        assert _tree(left) == _tree(right)

        months = sorted({(e.timestamp.year, e.timestamp.month)
                         for e in builder.events})
        previous_closing = None
        for year, month in months:
            report = movement_report(current.log, current, year, month)
            for key in report.opening:
                assert report.closing[key] == (report.opening[key]
                                               + report.cells[("arrived", *key)]
                                               - report.cells[("left", *key)])
            if previous_closing is not None:
                assert report.opening == previous_closing
            previous_closing = report.closing


@pytest.mark.acceptance("audit oracle equivalence with injected violations")
def test_audit_oracle_equivalence():
    rng = random.Random(77)
    as_of = date(2015, 3, 1)
    triggered = {rule: 0 for rule in AuditRule}
    repairs = {rule: 0 for rule in AuditRule}

    for _ in range(60):
        registry = make_registry(rng, max_groups=6, max_students=14)
        registry = _inject_violations(rng, registry, as_of)

        findings = run_audit(registry, as_of)
        assert {(f.rule.value, f.student) for f in findings} \
            == oracle_findings(registry, as_of)
        for finding in findings:
            triggered[finding.rule] += 1

        by_rule = {}
        for finding in findings:
            by_rule.setdefault(finding.rule, finding)
        for rule, finding in by_rule.items():
            repaired = _repair(registry, finding, as_of)
            after = run_audit(repaired, as_of)
            after_pairs = {(f.rule, f.student) for f in after}
            assert (finding.rule, finding.student) not in after_pairs
            untouched = {(f.rule, f.student) for f in findings
                         if f.student != finding.student}
            assert untouched <= after_pairs | {(finding.rule, finding.student)}
            assert untouched <= after_pairs
            repairs[rule] += 1

    assert all(count >= 50 for count in triggered.values()), triggered
    assert all(count > 0 for count in repairs.values())


def _inject_violations(rng, registry: Registry, as_of: date) -> Registry:
    students = dict(registry.students)
    for sid in sorted(students):
        record = students[sid]
        group = registry.groups.get(record.group)
        if group is None or not group.curriculum:
            continue
        roll = rng.random()
        if roll < 0.12 and record.status.kind == "active":
            since = as_of - timedelta(days=400)
            students[sid] = dataclasses.replace(
                record, status=AcademicLeave(since=since,
                                             until=as_of - timedelta(days=rng.randint(1, 200))))
        elif roll < 0.24 and record.status.kind == "active":
            students[sid] = dataclasses.replace(record, enrollment_year=2008)
        elif roll < 0.36 and record.status.kind == "active":
            students[sid] = dataclasses.replace(record, course=1,
                                                enrollment_year=2013)
    return dataclasses.replace(registry, students=students)


def _repair(registry: Registry, finding, as_of: date) -> Registry:
    seq = registry.last_seq + 1
    when = as_of - timedelta(days=1)
    if registry.log:
        when = max(when, registry.log[-1].timestamp)
    if finding.rule is AuditRule.OVERDUE_LEAVE_EXIT:
        return apply_event(registry, leave_end(seq, when, finding.student))
    if finding.rule is AuditRule.OVERDUE_GRADUATION:
        return apply_event(registry, expel(seq, when, finding.student,
                                           reason="graduated"))
    return apply_event(registry, course_advance(seq, when, finding.student))


@pytest.mark.acceptance("persistence round-trip and determinism")
def test_persistence_round_trip(tmp_path):
    rng = random.Random(55)
    for index in range(20):
        registry = make_registry(rng, max_groups=8, max_students=16)
        first = tmp_path / f"a{index}"
        second = tmp_path / f"b{index}"
        save_registry(registry, first)
        assert load_registry(first) == registry
        save_registry(registry, second)
        assert _tree(first) == _tree(second)
        save_registry(load_registry(first), second)
        assert _tree(first) == _tree(second)


@pytest.mark.acceptance("API payloads equal canonical core serialization")
def test_api_core_equivalence(demo_root):
    app = create_app(ApiConfig(root=demo_root, token="t"))
    checks = [
        ("/students?group=5210M&as_of=2014-02-01", "students_5210M.json"),
        ("/students/s-2105", "student_s-2105.json"),
        ("/pivot?group=5210M&as_of=2014-02-01", "pivot_5210M.json"),
        ("/pivot?status=expelled&as_of=2014-02-01", "pivot_expelled.json"),
        ("/mastery?as_of=2014-02-01", "mastery.json"),
        ("/debt-series?from=2013-01-01&to=2014-02-01&step=60", "series.json"),
        ("/movements", "movements.json"),
        ("/reports/movement?month=2014-01", "report_2014-01.json"),
        ("/audit?as_of=2014-02-01", "audit.json"),
        ("/sheets?file=winter_2014.csv", "sheet_winter_2014.json"),
    ]
    from .make_golden import compute_golden_docs

    fresh = compute_golden_docs()
    with TestClient(app) as client:
        for url, name in checks:
            payload = client.get(url).json()
            committed = json.loads((GOLDEN / name).read_text(encoding="utf-8"))
            assert payload == committed, name
            assert payload == json.loads(json.dumps(fresh[name])), name
        for url, name in (("/exchange/export/5210M/1", "roster_5210M_s1.csv"),
                          ("/reports/movement?month=2014-01&format=csv",
                           "report_2014-01.csv")):
            text = client.get(url).text
            assert text == (GOLDEN / name).read_text(encoding="utf-8")
            assert text == fresh[name]
