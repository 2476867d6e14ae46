from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deanery.errors import OutOfRange, UnknownOption
from deanery.rating import (
    DEFAULT_SCALE,
    OPTION_1,
    OPTION_2,
    Grade,
    GradeScale,
    RatingOption,
    RatingRecord,
    final_rating,
    is_admitted,
    option_by_name,
    passed,
    to_grade,
)


def record(semester=None, exam=None, bonus=0):
    return RatingRecord("stu", semester_points=semester, exam_points=exam,
                        bonus_points=bonus)


class TestFinalRating:
    def test_plain_sum(self):
        assert final_rating(record(45, 20), OPTION_1) == 65

    def test_capped_at_100(self):
        assert final_rating(record(60, 40, 30), OPTION_1) == 100

    def test_bonus_suppressed_below_threshold(self):
        # one point short of the option-1 threshold of 50
        assert final_rating(record(49, 20, 30), OPTION_1) == 69

    def test_bonus_applies_at_threshold(self):
        assert final_rating(record(50, 20, 10), OPTION_1) == 80

    def test_no_show_is_none(self):
        assert final_rating(record(None, None), OPTION_1) is None
        assert final_rating(record(45, None), OPTION_1) is None
        assert final_rating(record(None, 20), OPTION_1) is None

    @given(st.integers(0, 60), st.integers(0, 40), st.integers(0, 30))
    def test_monotone_in_each_argument(self, semester, exam, bonus):
        base = final_rating(record(semester, exam, bonus), OPTION_1)
        if semester < 60:
            assert final_rating(record(semester + 1, exam, bonus), OPTION_1) >= base
        if exam < 40:
            assert final_rating(record(semester, exam + 1, bonus), OPTION_1) >= base
        if bonus < 30:
            assert final_rating(record(semester, exam, bonus + 1), OPTION_1) >= base

    @given(st.integers(0, 80), st.integers(0, 20), st.integers(0, 20))
    def test_cap_holds_for_option2(self, semester, exam, bonus):
        total = final_rating(record(semester, exam, bonus), OPTION_2)
        assert 0 <= total <= 100

    def test_both_options_reach_100(self):
        assert final_rating(record(60, 40), OPTION_1) == 100
        assert final_rating(record(80, 20), OPTION_2) == 100


class TestGradeScale:
    @pytest.mark.parametrize("points,grade", [
        (65, Grade.SATISFACTORY),
        (89, Grade.EXCELLENT),
        (70, Grade.GOOD),
        (54, Grade.FAIL),
        (55, Grade.SATISFACTORY),
        (69, Grade.SATISFACTORY),
        (84, Grade.GOOD),
        (85, Grade.EXCELLENT),
        (0, Grade.FAIL),
        (100, Grade.EXCELLENT),
    ])
    def test_bands(self, points, grade):
        assert to_grade(points) is grade

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            to_grade(101)
        with pytest.raises(OutOfRange):
            to_grade(-1)

    def test_partition_every_point_has_one_band(self):
        for points in range(101):
            grade = to_grade(points)
            expected = (Grade.FAIL if points < 55 else
                        Grade.SATISFACTORY if points < 70 else
                        Grade.GOOD if points < 85 else Grade.EXCELLENT)
            assert grade is expected

    def test_bad_scales_rejected(self):
        with pytest.raises(ValueError):
            GradeScale(thresholds=((5, Grade.FAIL), (55, Grade.SATISFACTORY)))
        with pytest.raises(ValueError):
            GradeScale(thresholds=((0, Grade.FAIL), (0, Grade.GOOD)))
        with pytest.raises(ValueError):
            GradeScale(thresholds=((0, Grade.FAIL), (101, Grade.GOOD)))


class TestOptions:
    def test_presets(self):
        assert (OPTION_1.max_semester_points, OPTION_1.max_exam_points,
                OPTION_1.bonus_threshold, OPTION_1.max_bonus_points,
                OPTION_1.admission_points) == (60, 40, 50, 30, 35)
        assert (OPTION_2.max_semester_points, OPTION_2.max_exam_points,
                OPTION_2.bonus_threshold, OPTION_2.max_bonus_points,
                OPTION_2.admission_points) == (80, 20, 70, 20, 45)

    def test_sum_invariant(self):
        for option in (OPTION_1, OPTION_2):
            assert option.max_semester_points + option.max_exam_points == 100

    def test_lookup(self):
        assert option_by_name("option1") is OPTION_1
        assert option_by_name("option2") is OPTION_2
        with pytest.raises(UnknownOption):
            option_by_name("option3")

    def test_invalid_option_rejected(self):
        with pytest.raises(ValueError):
            RatingOption("bad", 50, 40, 45, 10, 30)  # 50 + 40 != 100
        with pytest.raises(ValueError):
            RatingOption("bad", 60, 40, 30, 10, 35)  # admission above threshold


class TestAdmission:
    @pytest.mark.parametrize("points,option,expected", [
        (35, OPTION_1, True),
        (34, OPTION_1, False),
        (45, OPTION_2, True),
        (44, OPTION_2, False),
    ])
    def test_threshold(self, points, option, expected):
        assert is_admitted(points, option) is expected

    def test_rejects_out_of_range(self):
        with pytest.raises(OutOfRange):
            is_admitted(61, OPTION_1)


class TestPassed:
    def test_pass_fail_noshow(self):
        assert passed(record(45, 20), OPTION_1, DEFAULT_SCALE) is True
        assert passed(record(None, None), OPTION_1, DEFAULT_SCALE) is False
        assert passed(record(30, 20), OPTION_1, DEFAULT_SCALE) is False  # total 50

    def test_equivalent_to_grade_not_fail_exhaustive(self):
        # every admissible triple under option 1
        for semester in range(61):
            for exam in range(0, 41, 2):
                for bonus in range(0, 31, 3):
                    rec = record(semester, exam, bonus)
                    final = final_rating(rec, OPTION_1)
                    expected = to_grade(final) is not Grade.FAIL
                    assert passed(rec, OPTION_1) is expected
