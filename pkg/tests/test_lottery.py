"""Lottery algebra: construction, mixing, expected utility, serialization."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vnm import (
    FLOAT,
    RATIONAL,
    Lottery,
    OutcomeSpace,
    degenerate,
    expected_utility,
    jsonio,
    mix,
    new_lottery,
    new_utility,
    utility_from_mapping,
)
from vnm.errors import (
    AlphaOutOfRange,
    LengthMismatch,
    NegativeProbability,
    NonFiniteUtility,
    SpaceMismatch,
    SumNotOne,
    UnknownOutcome,
)

from conftest import alpha_strategy, rational_lottery_strategy, utility_values_strategy

SPACE3 = OutcomeSpace(("x1", "x2", "x3"), RATIONAL)

# worked by hand:
#   0.6*0.7 + 0.4*0.2 = 0.50, 0.6*0.3 + 0.4*0.3 = 0.30, 0.6*0.0 + 0.4*0.5 = 0.20
MIX_PQ = (Fraction(1, 2), Fraction(3, 10), Fraction(1, 5))
#   0.6*0.7 + 0.4*0.1 = 0.46, 0.6*0.3 + 0.4*0.1 = 0.22, 0.6*0.0 + 0.4*0.8 = 0.32
MIX_PR = (Fraction(23, 50), Fraction(11, 50), Fraction(8, 25))
#   0.6*0.5 + 0.4*0.1 = 0.34, 0.6*0.2 + 0.4*0.1 = 0.16, 0.6*0.3 + 0.4*0.8 = 0.50
MIX_QR = (Fraction(17, 50), Fraction(4, 25), Fraction(1, 2))
#   0.5*10 + 0.3*5 + 0.2*0 = 6.5
EU_MIX = Fraction(13, 2)


class TestConstruction:
    def test_decimal_literals_are_exact_in_rational_mode(self):
        p = new_lottery(SPACE3, (0.2, 0.5, 0.3))
        assert p.probs == (Fraction(1, 5), Fraction(1, 2), Fraction(3, 10))
        assert sum(p.probs) == 1

    def test_fraction_strings(self):
        p = new_lottery(SPACE3, ("1/2", "3/10", "1/5"))
        assert p.probs == MIX_PQ

    def test_sum_not_one_rejected(self):
        with pytest.raises(SumNotOne) as exc:
            new_lottery(SPACE3, (0.5, 0.6, 0.0))
        assert exc.value.actual_sum == Fraction(11, 10)

    def test_negative_probability_rejected_with_index(self):
        with pytest.raises(NegativeProbability) as exc:
            new_lottery(SPACE3, (Fraction(3, 2), Fraction(-1, 2), 0))
        assert exc.value.index == 1

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            new_lottery(SPACE3, (1, 0))

    def test_degenerate(self):
        d = degenerate(SPACE3, "x2")
        assert d.probs == (0, 1, 0)
        assert d.support() == ("x2",)

    def test_degenerate_unknown_outcome(self):
        with pytest.raises(UnknownOutcome):
            degenerate(SPACE3, "nope")

    def test_space_needs_distinct_labels(self):
        with pytest.raises(ValueError):
            OutcomeSpace(("a", "a"))
        with pytest.raises(ValueError):
            OutcomeSpace(())

    def test_singleton_space(self):
        s = OutcomeSpace(("only",))
        p = new_lottery(s, (1,))
        assert p.support() == ("only",)

    def test_float_mode_sum_tolerance(self):
        s = OutcomeSpace(("a", "b"), FLOAT)
        Lottery(s, (0.5, 0.5 + 1e-13))  # inside tolerance
        with pytest.raises(SumNotOne):
            Lottery(s, (0.5, 0.51))

    def test_float_mode_support_threshold(self):
        s = OutcomeSpace(("a", "b", "c"), FLOAT)
        p = Lottery(s, (1.0 - 1e-16, 1e-16, 0.0))
        assert p.support() == ("a",)


class TestMix:
    def test_worked_mix_examples(self):
        p = new_lottery(SPACE3, (0.7, 0.3, 0.0))
        q = new_lottery(SPACE3, (0.2, 0.3, 0.5))
        r = new_lottery(SPACE3, (0.1, 0.1, 0.8))
        q2 = new_lottery(SPACE3, (0.5, 0.2, 0.3))
        assert mix(p, q, Fraction(3, 5)).probs == MIX_PQ
        assert mix(p, r, Fraction(3, 5)).probs == MIX_PR
        assert mix(q2, r, Fraction(3, 5)).probs == MIX_QR

    def test_endpoint_weights(self):
        p = new_lottery(SPACE3, (0.7, 0.3, 0.0))
        q = new_lottery(SPACE3, (0.2, 0.3, 0.5))
        assert mix(p, q, 1) == p
        assert mix(p, q, 0) == q

    def test_alpha_out_of_range(self):
        p = degenerate(SPACE3, "x1")
        q = degenerate(SPACE3, "x2")
        for bad in (-0.1, 1.1, Fraction(3, 2)):
            with pytest.raises(AlphaOutOfRange):
                mix(p, q, bad)

    def test_space_mismatch(self):
        other = OutcomeSpace(("y1", "y2", "y3"), RATIONAL)
        with pytest.raises(SpaceMismatch):
            mix(degenerate(SPACE3, "x1"), degenerate(other, "y1"), 0.5)

    @given(
        p=rational_lottery_strategy(SPACE3),
        q=rational_lottery_strategy(SPACE3),
        a=alpha_strategy(),
    )
    def test_closure(self, p, q, a):
        m = mix(p, q, a)
        assert sum(m.probs) == 1
        assert all(v >= 0 for v in m.probs)

    @given(p=rational_lottery_strategy(SPACE3), a=alpha_strategy())
    def test_self_mix_is_identity(self, p, a):
        assert mix(p, p, a) == p

    @given(
        p=rational_lottery_strategy(SPACE3),
        q=rational_lottery_strategy(SPACE3),
        a=alpha_strategy(),
    )
    def test_mix_symmetry(self, p, q, a):
        assert mix(p, q, a) == mix(q, p, 1 - a)


class TestExpectedUtility:
    def test_worked_eu(self):
        m = new_lottery(SPACE3, MIX_PQ)
        u = new_utility(SPACE3, (10, 5, 0))
        assert expected_utility(m, u) == EU_MIX

    def test_space_mismatch(self):
        other = OutcomeSpace(("y1", "y2", "y3"), RATIONAL)
        with pytest.raises(SpaceMismatch):
            expected_utility(degenerate(SPACE3, "x1"), new_utility(other, (1, 2, 3)))

    def test_non_finite_utility_rejected(self):
        s = OutcomeSpace(("a", "b"), FLOAT)
        with pytest.raises(NonFiniteUtility):
            new_utility(s, (1.0, float("inf")))
        with pytest.raises(NonFiniteUtility):
            new_utility(s, (float("nan"), 0.0))

    @given(
        p=rational_lottery_strategy(SPACE3),
        q=rational_lottery_strategy(SPACE3),
        a=alpha_strategy(),
        values=utility_values_strategy(3),
    )
    @settings(deadline=None)
    def test_linearity_exact(self, p, q, a, values):
        u = new_utility(SPACE3, values)
        left = expected_utility(mix(p, q, a), u)
        right = a * expected_utility(p, u) + (1 - a) * expected_utility(q, u)
        assert left == right

    @given(p=rational_lottery_strategy(SPACE3), values=utility_values_strategy(3))
    def test_eu_bounded_by_utility_range(self, p, values):
        u = new_utility(SPACE3, values)
        eu = expected_utility(p, u)
        assert min(values) <= eu <= max(values)

    def test_linearity_float_mode_relative(self):
        s = OutcomeSpace(("a", "b", "c"), FLOAT)
        p = new_lottery(s, (0.2, 0.5, 0.3))
        q = new_lottery(s, (0.6, 0.1, 0.3))
        u = new_utility(s, (11.5, -3.25, 7.75))
        for a in (0.0, 0.123456, 0.5, 0.875, 1.0):
            left = expected_utility(mix(p, q, a), u)
            right = a * expected_utility(p, u) + (1 - a) * expected_utility(q, u)
            assert left == pytest.approx(right, rel=1e-9)

    def test_zero_probability_terms_are_skipped(self):
        # the sum runs over the support, so a zero-weight outcome never contributes
        s = OutcomeSpace(("a", "b"), FLOAT)
        p = Lottery(s, (1.0, 0.0))
        u = new_utility(s, (2.0, 1e308))
        assert expected_utility(p, u) == 2.0


class TestUtilityFunction:
    def test_from_mapping_requires_full_cover(self):
        with pytest.raises(UnknownOutcome):
            utility_from_mapping(SPACE3, {"x1": 1, "x2": 2})
        with pytest.raises(UnknownOutcome):
            utility_from_mapping(SPACE3, {"x1": 1, "x2": 2, "x3": 3, "x4": 4})

    def test_values_follow_space_order(self):
        u = utility_from_mapping(SPACE3, {"x3": 0, "x1": 1, "x2": 2})
        assert u.values == (1, 2, 0)

    def test_is_constant(self):
        assert new_utility(SPACE3, (2, 2, 2)).is_constant()
        assert not new_utility(SPACE3, (2, 2, 3)).is_constant()


class TestJson:
    def test_rational_round_trip(self):
        p = new_lottery(SPACE3, ("1/2", "3/10", "1/5"))
        blob = jsonio.lottery_to_json(p)
        assert blob == {"space": ["x1", "x2", "x3"], "probs": ["1/2", "3/10", "1/5"]}
        assert jsonio.lottery_from_json(blob, space=SPACE3) == p

    def test_float_round_trip(self):
        s = OutcomeSpace(("a", "b"), FLOAT)
        p = new_lottery(s, (0.25, 0.75))
        blob = jsonio.lottery_to_json(p)
        assert blob["probs"] == [0.25, 0.75]
        assert jsonio.lottery_from_json(blob, space=s) == p

    def test_lottery_space_mismatch_detected(self):
        blob = {"space": ["a", "b", "c"], "probs": ["1", "0", "0"]}
        with pytest.raises(ValueError):
            jsonio.lottery_from_json(blob, space=SPACE3)

    def test_utility_round_trip(self):
        u = new_utility(SPACE3, (1, "7/10", 0))
        blob = jsonio.utility_to_json(u)
        assert blob["utility"] == {"x1": "1", "x2": "7/10", "x3": "0"}
        assert jsonio.utility_from_json(blob, space=SPACE3) == u

    def test_utility_space_from_key_order(self):
        u = jsonio.utility_from_json({"utility": {"b": "1", "a": "0"}})
        assert u.space.labels == ("b", "a")
