from fractions import Fraction

import pytest

from src.errors import GuardExceeded, InternalDivisionFailure, PositionOutOfRange, WeightMismatch
from src.polyrep import (
    MultiPoly,
    PolyVector,
    act_crossing,
    act_dot,
    act_idempotent,
    apply_word,
    monomials_up_to,
    verify_relations,
)
from src.wordcomb import Weight, weights_up_to
from utils.fixtures import FIXTURE_DATUMS, fixture_datum


def one(seq):
    return PolyVector.single(seq, MultiPoly.constant(len(seq)))


class TestMultiPoly:
    """Tests for MultiPoly."""

    def test_swaps(self):
        """Test x and x-y swaps."""
        f = MultiPoly.x(2, 1) * MultiPoly.y(2, 2)

        assert f.swap_x(1) == MultiPoly.x(2, 2) * MultiPoly.y(2, 2)
        assert f.swap_xy(1) == MultiPoly.x(2, 2) * MultiPoly.y(2, 1)

    def test_divided_difference(self):
        """Test (x1^2 - x2^2) / (x1 - x2) = x1 + x2."""
        f = MultiPoly.x(2, 1, 2) - MultiPoly.x(2, 2, 2)

        assert f.divide_difference(1, "x") == MultiPoly.x(2, 1) + MultiPoly.x(2, 2)

    def test_division_with_remainder(self):
        """Test that a remainder is reported."""
        with pytest.raises(InternalDivisionFailure):
            MultiPoly.x(2, 1).divide_difference(1, "x")

    def test_monomials_up_to(self):
        """Test enumeration by degree."""
        assert list(monomials_up_to(2, 1)) == [(0, 0), (1, 0), (0, 1)]
        assert len(list(monomials_up_to(4, 2))) == 15


class TestActions:
    """Tests for the generator actions."""

    def test_nil_hecke_crossing(self, real1):
        """Test the Demazure operator on a real label."""
        seq = ("i", "i")
        x1 = PolyVector.single(seq, MultiPoly.x(2, 1))

        assert act_crossing(1, seq, x1, real1) == one(seq)
        assert act_crossing(1, seq, one(seq), real1).is_zero()

    def test_imaginary_crossing_squares_to_zero(self, imag2):
        """Test tau^2 = 0 on an imaginary label."""
        seq = ("i", "i")
        f = PolyVector.single(seq, MultiPoly.x(2, 1, 2) * MultiPoly.y(2, 1))
        once = act_crossing(1, seq, f, imag2)

        assert not once.is_zero()
        assert act_crossing(1, seq, once, imag2).is_zero()

    def test_distinct_labels(self, mixed):
        """Test that a crossing of i and j moves to the swapped sequence."""
        moved = act_crossing(1, ("i", "j"), one(("i", "j")), mixed)

        assert set(moved.components) == {("j", "i")}

    def test_double_crossing(self, mixed):
        """Test tau^2 = x1 + x2 on i j through apply_word."""
        seq = ("i", "j")
        result = apply_word((("t", 1), ("t", 1)), seq, one(seq), mixed)

        assert result == PolyVector.single(seq, MultiPoly.x(2, 1) + MultiPoly.x(2, 2))

    def test_orientation_places_the_factor(self, mixed2, mixed2_reversed):
        """Test that the polynomial factor sits on the crossing against the arrow."""
        along = PolyVector.single(("j", "i"), MultiPoly.x(2, 1) + MultiPoly.x(2, 2, 2))
        against = PolyVector.single(("i", "j"), MultiPoly.x(2, 1, 2) + MultiPoly.x(2, 2))

        assert act_crossing(1, ("i", "j"), one(("i", "j")), mixed2) == along
        assert act_crossing(1, ("j", "i"), one(("j", "i")), mixed2) == one(("i", "j"))
        assert act_crossing(1, ("i", "j"), one(("i", "j")), mixed2_reversed) == one(("j", "i"))
        assert act_crossing(1, ("j", "i"), one(("j", "i")), mixed2_reversed) == against

    def test_double_crossing_ignores_orientation(self, mixed2, mixed2_reversed):
        """Test tau^2 = x1^2 + x2 on i j for both arrows."""
        seq = ("i", "j")
        expected = PolyVector.single(seq, MultiPoly.x(2, 1, 2) + MultiPoly.x(2, 2))

        for datum in (mixed2, mixed2_reversed):
            assert apply_word((("t", 1), ("t", 1)), seq, one(seq), datum) == expected

    def test_idempotent_projects(self, mixed):
        """Test that 1_seq kills other components."""
        v = one(("i", "j")) + one(("j", "i"))

        assert act_idempotent(("i", "j"), v) == one(("i", "j"))

    def test_dot(self, mixed):
        """Test multiplication by x_k."""
        result = act_dot(2, ("i", "j"), one(("i", "j")) * Fraction(1, 2))

        assert result == PolyVector.single(("i", "j"), MultiPoly.x(2, 2) * Fraction(1, 2))

    def test_errors(self, mixed):
        """Test position and weight errors."""
        with pytest.raises(PositionOutOfRange):
            act_dot(3, ("i", "j"), one(("i", "j")))
        with pytest.raises(PositionOutOfRange):
            act_crossing(2, ("i", "j"), one(("i", "j")), mixed)
        with pytest.raises(WeightMismatch):
            act_idempotent(("i", "i"), one(("i", "j")))


class TestVerifyRelations:
    """Tests for the relation harness."""

    @pytest.mark.parametrize("name", sorted(FIXTURE_DATUMS))
    def test_relations_hold(self, name):
        """Test every relation on every small weight of every fixture."""
        datum = fixture_datum(name)
        height = 3 if datum.rank <= 2 else 2
        for weight in weights_up_to(datum.indices, height):
            report = verify_relations(datum, weight, test_degree=2)
            assert report.passed, [c.to_dict() for c in report.failures]

    def test_report_shape(self, mixed):
        """Test the report contents."""
        report = verify_relations(mixed, Weight.of("ij"), test_degree=1)
        data = report.to_dict()

        assert data["passed"]
        assert data["testDegree"] == 1
        assert all(check["monomials"] == 5 for check in data["checks"])

    def test_height_guard(self, real1):
        """Test the guard on large weights."""
        with pytest.raises(GuardExceeded):
            verify_relations(real1, Weight.from_counts({"i": 7}))
