from fractions import Fraction

import numpy as np
import pytest

from src.errors import (
    ImaginaryDividedPower,
    InvalidArg,
    PositionOutOfRange,
    RealIndexRequired,
    WeightMismatch,
)
from src.klr_core import (
    AlgebraElement,
    KLRAlgebra,
    center_check,
    centralizer_gdim,
    corner_numerator,
    divided_idempotent,
    elementary_symmetric,
    gdim_center,
    gdim_corner,
    gdim_divided_corner,
    graded_corner_basis,
    random_element,
    rank_gdim_divided,
    serre_character_check,
    serre_shapes,
)
from src.polyrep import MultiPoly, PolyVector
from src.qarith import LaurentPoly
from src.wordcomb import DividedSequence, Weight, sequences_of_weight, weights_up_to
from utils.fixtures import FIXTURE_DATUMS, fixture_datum


class TestProducts:
    """Tests for normal-form multiplication."""

    def test_nil_hecke_relations(self, real1):
        """Test tau^2 = 0 and x1 tau - tau x2 = 1 on i i."""
        algebra = KLRAlgebra(real1)
        seq = ("i", "i")
        tau = algebra.crossing(1, seq)

        assert algebra.mul(tau, tau).is_zero()
        lhs = algebra.mul(algebra.dot(1, seq), tau) - algebra.mul(tau, algebra.dot(2, seq))
        assert lhs == algebra.idempotent(seq)

    def test_double_crossing_mixed(self, mixed):
        """Test tau^2 = x1 + x2 on i j with a_ij = a_ji = -1."""
        algebra = KLRAlgebra(mixed)
        seq = ("i", "j")
        square = algebra.mul(algebra.crossing(1, ("j", "i")), algebra.crossing(1, seq))

        assert square == algebra.dot(1, seq) + algebra.dot(2, seq)

    def test_double_crossing_unequal_powers(self, mixed2):
        """Test tau^2 = x1^2 + x2 on i j with a_ij = -2, a_ji = -1."""
        algebra = KLRAlgebra(mixed2)
        seq = ("i", "j")
        square = algebra.mul(algebra.crossing(1, ("j", "i")), algebra.crossing(1, seq))
        x1 = algebra.dot(1, seq)

        assert square == algebra.mul(x1, x1) + algebra.dot(2, seq)

    def test_orthogonal_crossing_is_invertible(self, orth):
        """Test tau^2 = 1 when i . k = 0."""
        algebra = KLRAlgebra(orth)
        square = algebra.mul(algebra.crossing(1, ("k", "i")), algebra.crossing(1, ("i", "k")))

        assert square == algebra.idempotent(("i", "k"))

    def test_mismatched_corners_multiply_to_zero(self, mixed):
        """Test that a * b = 0 unless a.source == b.target."""
        algebra = KLRAlgebra(mixed)

        assert algebra.mul(algebra.idempotent(("i", "j")), algebra.idempotent(("j", "i"))).is_zero()

    def test_imaginary_dots_slide(self, imag0):
        """Test x1 tau = tau x2 on an imaginary label."""
        algebra = KLRAlgebra(imag0)
        seq = ("i", "i")
        tau = algebra.crossing(1, seq)

        assert algebra.mul(algebra.dot(1, seq), tau) == algebra.mul(tau, algebra.dot(2, seq))
        assert algebra.mul(tau, tau).is_zero()

    def test_degrees(self, mixed):
        """Test that products are homogeneous of the summed degree."""
        algebra = KLRAlgebra(mixed)
        tau = algebra.crossing(1, ("i", "j"))

        assert tau.degrees(mixed) == [1]
        assert algebra.mul(algebra.crossing(1, ("j", "i")), tau).degrees(mixed) == [2]

    def test_errors(self, mixed):
        """Test argument validation."""
        algebra = KLRAlgebra(mixed)
        with pytest.raises(PositionOutOfRange):
            algebra.dot(3, ("i", "j"))
        with pytest.raises(PositionOutOfRange):
            algebra.crossing(2, ("i", "j"))
        with pytest.raises(InvalidArg):
            KLRAlgebra(mixed, strategy="middle")
        with pytest.raises(InvalidArg):
            algebra.generator("cap", ("i",))

    def test_to_dict(self, mixed):
        """Test the exported form of an element."""
        data = KLRAlgebra(mixed).crossing(1, ("i", "j")).to_dict()

        assert data["source"] == "i j"
        assert data["target"] == "j i"
        assert data["terms"] == [{"w": [2, 1], "word": [1], "dots": [0, 0], "coefficient": "1"}]


class TestAlgebraStructure:
    """Randomized structural checks."""

    @pytest.mark.parametrize("name", [
        "rank1_real", "rank2_mixed_a1", "rank2_mixed_a2", "rank2_mixed_a2_reversed", "rank2_real_a2",
    ])
    def test_associative_and_psi(self, name):
        """Test associativity, the anti-involution and strategy agreement."""
        datum = fixture_datum(name)
        algebra = KLRAlgebra(datum)
        mirror = KLRAlgebra(datum, strategy="back")
        rng = np.random.default_rng(11)
        weights = weights_up_to(datum.indices, 3)
        for _ in range(8):
            seqs = sequences_of_weight(weights[int(rng.integers(len(weights)))])
            s, m1, m2, t = (seqs[int(rng.integers(len(seqs)))] for _ in range(4))
            a = random_element(algebra, m2, t, rng)
            b = random_element(algebra, m1, m2, rng)
            c = random_element(algebra, s, m1, rng)

            assert algebra.mul(algebra.mul(a, b), c) == algebra.mul(a, algebra.mul(b, c))
            assert algebra.psi(algebra.mul(a, b)) == algebra.mul(algebra.psi(b), algebra.psi(a))
            assert algebra.psi(algebra.psi(a)) == a
            assert mirror.mul(a, b) == algebra.mul(a, b)

    @pytest.mark.parametrize("name", ["rank2_mixed_a1", "rank2_mixed_a2_reversed"])
    def test_action_matches_product(self, name):
        """Test that mul agrees with the faithful polynomial action."""
        algebra = KLRAlgebra(fixture_datum(name))
        rng = np.random.default_rng(5)
        seqs = sequences_of_weight(Weight.from_counts({"i": 2, "j": 1}))
        for _ in range(6):
            s, m, t = (seqs[int(rng.integers(len(seqs)))] for _ in range(3))
            a = random_element(algebra, m, t, rng)
            b = random_element(algebra, s, m, rng)
            v = PolyVector.single(s, MultiPoly.monomial((1, 0, 2), (0, 1, 0), Fraction(2)))

            assert algebra.act_on_polyrep(algebra.mul(a, b), v) == algebra.act_on_polyrep(
                a, algebra.act_on_polyrep(b, v))

    @pytest.mark.parametrize("name", sorted(FIXTURE_DATUMS))
    def test_generator_relations(self, name):
        """Test every defining relation between normal forms."""
        datum = fixture_datum(name)
        height = 3 if datum.rank <= 2 else 2
        algebra = KLRAlgebra(datum)
        for weight in weights_up_to(datum.indices, height):
            for seq in sequences_of_weight(weight):
                assert algebra.relation_failures(seq) == []

    def test_caches_fill(self, mixed):
        """Test that straightening is memoized."""
        algebra = KLRAlgebra(mixed)
        algebra.mul(algebra.crossing(1, ("j", "i")), algebra.crossing(1, ("i", "j")))

        assert algebra.cache_sizes()["crossing"] > 0


class TestGradedDimensions:
    """Tests for graded dimensions of corners."""

    def test_nil_hecke_corner(self, real1):
        """Test gdim 1_ii R 1_ii = (1 + q^-2) / (1 - q^2)^2."""
        numerator, factors = corner_numerator(("i", "i"), ("i", "i"), real1)
        series = gdim_corner(("i", "i"), ("i", "i"), real1, 4)

        assert numerator == LaurentPoly({0: 1, -2: 1})
        assert factors == (2, 2)
        assert series.terms() == [(-2, 1), (0, 3), (2, 5), (4, 7)]

    def test_corner_matches_basis_count(self, mixed):
        """Test that the closed form counts the graded basis."""
        src, dst = ("i", "j", "i"), ("i", "i", "j")
        series = gdim_corner(src, dst, mixed, 6)
        by_degree = graded_corner_basis(src, dst, mixed, 6)

        for degree, basis in by_degree.items():
            assert series.coefficient(degree) == len(basis)

    @pytest.mark.parametrize("cap,expected", [
        (0, []),
        (1, []),
        (2, [(2, 1)]),
        (3, [(2, 1)]),
        (4, [(2, 1), (4, 3)]),
    ])
    def test_cap_below_crossing_degree(self, mixed2, cap, expected):
        """Test that crossings of degree above the cap keep the requested cap."""
        series = gdim_corner(("i", "i", "j"), ("j", "i", "i"), mixed2, cap)

        assert series.cap == cap
        assert series.terms() == expected
        assert series.coefficient(cap) == dict(expected).get(cap, 0)

    def test_cap_below_every_crossing(self, mixed2):
        """Test a corner whose every term starts above the cap."""
        series = gdim_corner(("i", "j", "j"), ("j", "j", "i"), mixed2, 1)

        assert series.cap == 1
        assert series.is_zero()

    def test_weight_mismatch(self, mixed):
        """Test corners between different weights."""
        with pytest.raises(WeightMismatch):
            gdim_corner(("i",), ("j",), mixed, 4)

    def test_divided_corner(self, real1):
        """Test gdim 1_{i^(2)} R 1_ii = 1 / (1 - q^2)^2."""
        shape = DividedSequence((("i", 2),))
        series = gdim_divided_corner(shape, ("i", "i"), real1, 6)

        assert series.terms() == [(0, 1), (2, 2), (4, 3), (6, 4)]

    def test_divided_corner_matches_ranks(self, real1, mixed):
        """Test the formula against ranks of left multiplication by the idempotent."""
        for datum, shape in ((real1, (("i", 2),)), (mixed, (("i", 2), ("j", 1)))):
            algebra = KLRAlgebra(datum)
            shape = DividedSequence(shape)
            for dst in sequences_of_weight(shape.weight):
                formula = gdim_divided_corner(shape, dst, datum, 6)
                ranks = rank_gdim_divided(shape, dst, algebra, 6)
                assert formula.compare(ranks).equal

    def test_divided_idempotent(self, real1):
        """Test that the idempotent for i^(3) squares to itself."""
        algebra = KLRAlgebra(real1)
        element = divided_idempotent(DividedSequence((("i", 3),)), algebra).element

        assert algebra.mul(element, element) == element
        assert element.degrees(real1) == [0]

    def test_imaginary_divided_power(self, imag0):
        """Test that imaginary labels have no divided powers."""
        with pytest.raises(ImaginaryDividedPower):
            gdim_divided_corner(DividedSequence((("i", 2),)), ("i", "i"), imag0, 4)


class TestSerre:
    """Tests for the divided-power Serre sums."""

    def test_shapes(self, mixed):
        """Test the two sides for a_ij = -1."""
        left, right = serre_shapes("i", "j", mixed)

        assert [str(s) for s in left] == ["j i^(2)", "i^(2) j"]
        assert [str(s) for s in right] == ["i j i"]

    def test_shapes_orthogonal(self, orth):
        """Test that a_ik = 0 compares i k with k i."""
        left, right = serre_shapes("i", "k", orth)

        assert [str(s) for s in left] == ["i k"]
        assert [str(s) for s in right] == ["k i"]

    @pytest.mark.parametrize("name,i,j", [
        ("rank2_mixed_a1", "i", "j"),
        ("rank2_mixed_a2", "i", "j"),
        ("rank2_real_a2", "i", "j"),
        ("rank2_real_a2", "j", "i"),
        ("rank3_orth", "i", "k"),
        ("rank3_orth", "j", "k"),
    ])
    def test_serre_sums_agree(self, name, i, j):
        """Test that both Serre sums have the same graded dimensions."""
        assert serre_character_check(i, j, fixture_datum(name), 10)

    def test_needs_real_index(self, mixed):
        """Test that the first index must be real."""
        with pytest.raises(RealIndexRequired):
            serre_shapes("j", "i", mixed)
        with pytest.raises(InvalidArg):
            serre_shapes("i", "i", mixed)


class TestCenter:
    """Tests for the center."""

    def test_symmetric_polynomials_are_central(self, real1, mixed):
        """Test e_m central and x_1 not central."""
        for datum in (real1, mixed):
            algebra = KLRAlgebra(datum)
            weight = Weight.from_counts({"i": 2, "j": 1}) if datum.rank == 2 else Weight.of("ii")
            assert center_check({}, weight, algebra)
            assert center_check({"i": elementary_symmetric(1, 2)}, weight, algebra)
            assert center_check({"i": elementary_symmetric(2, 2)}, weight, algebra)
            assert not center_check({"i": {(1, 0): Fraction(1)}}, weight, algebra)

    def test_center_dimension(self, real1):
        """Test gdim Z(R(2i)) = 1 / ((1 - q^2)(1 - q^4))."""
        series = gdim_center(Weight.of("ii"), real1, 8)

        assert [series.coefficient(e) for e in range(0, 9, 2)] == [1, 1, 2, 2, 3]

    @pytest.mark.parametrize("name", ["rank1_real", "rank1_imag0", "rank1_imag2"])
    def test_centralizer_matches_product(self, name):
        """Test the product formula against linear algebra."""
        datum = fixture_datum(name)
        algebra = KLRAlgebra(datum)
        weight = Weight.of("ii")

        assert gdim_center(weight, datum, 6).compare(centralizer_gdim(weight, algebra, 6)).equal

    def test_polynomial_arity(self, real1):
        """Test a polynomial in the wrong number of variables."""
        with pytest.raises(InvalidArg):
            center_check({"i": elementary_symmetric(1, 3)}, Weight.of("ii"), KLRAlgebra(real1))


def test_zero_elements_are_equal(mixed):
    """Test that zero elements of different corners compare equal."""
    assert AlgebraElement(("i", "j"), ("j", "i")) == AlgebraElement(("i",), ("i",))
