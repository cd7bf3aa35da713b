from fractions import Fraction

import pytest

from src.errors import (
    GuardExceeded,
    ImaginaryIndex,
    InvalidArg,
    ModuleRelationFailure,
    RealIndex,
    WeightMismatch,
)
from src.qarith import LaurentPoly, geom_inverse
from src.reptheory import (
    Character,
    FinModule,
    bialgebra_check,
    char_V_real,
    character_of,
    characters_independent,
    delta_character,
    empty_character,
    epsilon_i,
    head_is_trivial,
    hom_dimension,
    induce_characters,
    induced_trivials,
    lbar,
    mackey_character_check,
    mackey_sides,
    outer_tensor,
    res_projective_multiplicities,
    restrict_module,
    submodule_lattice_probe,
    trivial_V,
)
from src.wordcomb import Weight

q = LaurentPoly.monomial(1)


class TestModules:
    """Tests for the explicit modules."""

    def test_trivial(self, imag0):
        """Test the one-dimensional module of an imaginary index."""
        module = trivial_V(imag0, "i", 3)

        assert module.dim == 1
        assert character_of(module) == Character({("i", "i", "i"): 1})

    def test_trivial_needs_imaginary(self, real1):
        """Test that real labels have no trivial module."""
        with pytest.raises(RealIndex):
            trivial_V(real1, "i", 2)

    def test_lbar_dimension_and_grading(self, imag0, imag2):
        """Test dim Lbar(i^3) = 3! and the grading by crossing degree."""
        assert lbar(imag0, "i", 3).dim == 6
        assert character_of(lbar(imag0, "i", 3)) == Character({("i", "i", "i"): 6})
        assert character_of(lbar(imag2, "i", 2)) == Character({("i", "i"): 1 + q ** 2})

    def test_lbar_guard(self, imag0):
        """Test the size guard."""
        with pytest.raises(GuardExceeded):
            lbar(imag0, "i", 6)
        with pytest.raises(GuardExceeded):
            induced_trivials(imag0, "i", 3, 3)

    def test_lbar_has_simple_socle_and_trivial_head(self, imag0):
        """Test the probe on Lbar(i^3)."""
        module = lbar(imag0, "i", 3)
        probe = submodule_lattice_probe(module)

        assert len(probe.minimal) == 1
        assert len(probe.minimal[0]) == 1
        assert len(probe.maximal) == 1
        assert len(probe.maximal[0]) == 5
        assert head_is_trivial(module, probe.maximal[0])

    def test_induced_matches_shuffle(self, imag2):
        """Test ch Ind(V(i) (x) V(i)) = ch V(i) o ch V(i)."""
        module = induced_trivials(imag2, "i", 1, 1)
        single = character_of(trivial_V(imag2, "i", 1))

        assert character_of(module) == induce_characters(single, single, imag2)
        assert character_of(module) == Character({("i", "i"): 1 + q ** 2})

    def test_hom_dimensions(self, imag0):
        """Test Hom between Ind(V(i) (x) V(i)) and V(i^2)."""
        induced = induced_trivials(imag0, "i", 1, 1)
        trivial = trivial_V(imag0, "i", 2)

        assert hom_dimension(induced, trivial) == 1
        assert hom_dimension(trivial, induced) == 1
        assert hom_dimension(induced, induced) == 2

    def test_restriction_to_parabolic(self, mixed):
        """Test that Res Ind(V(j) (x) V(j)) maps onto V(j) (x) V(j)."""
        induced = induced_trivials(mixed, "j", 1, 1)
        restricted = restrict_module(induced, [1, 1])
        outer = outer_tensor(trivial_V(mixed, "j", 1), trivial_V(mixed, "j", 1))

        assert restricted.crossings == {}
        assert outer.blocks == restricted.blocks == (1, 1)
        assert hom_dimension(restricted, outer) == 1

    def test_bad_composition(self, imag0):
        """Test a composition of the wrong size."""
        with pytest.raises(InvalidArg):
            restrict_module(lbar(imag0, "i", 2), [1, 2])

    def test_hom_needs_same_algebra(self, imag0):
        """Test Hom between modules of different sizes."""
        with pytest.raises(InvalidArg):
            hom_dimension(trivial_V(imag0, "i", 1), trivial_V(imag0, "i", 2))

    def test_relations_are_enforced(self, real1):
        """Test that a zero action on a real i i fails x1 t1 - t1 x2 = 1."""
        with pytest.raises(ModuleRelationFailure):
            FinModule(
                datum=real1,
                components=(("i", "i"),),
                degrees=(0,),
                dots={1: [[Fraction(0)]], 2: [[Fraction(0)]]},
                crossings={1: [[Fraction(0)]]},
            )

    def test_grading_is_enforced(self, imag0):
        """Test that a degree-preserving dot is rejected."""
        with pytest.raises(ModuleRelationFailure):
            FinModule(
                datum=imag0,
                components=(("i",), ("i",)),
                degrees=(0, 0),
                dots={1: [[Fraction(0), Fraction(0)], [Fraction(1), Fraction(0)]]},
                crossings={},
            )

    def test_export_actions(self, imag0):
        """Test the exported form of a module."""
        data = lbar(imag0, "i", 2).export_actions()

        assert data["name"] == "Lbar(i^2)"
        assert [entry["degree"] for entry in data["basis"]] == [0, 0]
        assert data["actions"]["t1"] == [["0", "0"], ["1", "0"]]


class TestCharacters:
    """Tests for the character calculus."""

    def test_real_irreducible(self, real1):
        """Test ch V(i^2) = [2]! on a real label."""
        assert char_V_real(real1, "i", 2) == Character({("i", "i"): q + q.bar()})

    def test_real_irreducible_needs_real(self, imag0):
        """Test that imaginary labels are rejected."""
        with pytest.raises(ImaginaryIndex):
            char_V_real(imag0, "i", 2)

    def test_empty_character_is_unit(self, mixed):
        """Test that inducing with the empty character changes nothing."""
        ch = char_V_real(mixed, "i", 2)

        assert induce_characters(empty_character(), ch, mixed) == ch

    def test_tails(self):
        """Test epsilon_i and the tail-stripping functor."""
        ch = Character({("j", "i", "i"): q, ("i", "j", "i"): 1})

        assert epsilon_i(ch, "i") == 2
        assert epsilon_i(ch, "j") == 0
        assert delta_character(ch, "i", 1) == Character({("j", "i"): q, ("i", "j"): 1})
        assert delta_character(ch, "i", 2) == Character({("j",): q})

    def test_mixed_weights(self):
        """Test that a character lives on one weight."""
        with pytest.raises(WeightMismatch):
            Character({("i",): 1, ("j",): 1})

    def test_independence(self, real1, mixed):
        """Test exact linear independence."""
        ch = char_V_real(real1, "i", 2)
        ij = Character({("i", "j"): 1})
        ji = Character({("j", "i"): 1})

        assert characters_independent([ch])
        assert not characters_independent([ch, ch * 2])
        assert characters_independent([ij, ji, ij + ji * q])
        assert not characters_independent([ij, ji, ij + ji])

    def test_independence_needs_finite(self):
        """Test that series characters are rejected."""
        with pytest.raises(InvalidArg):
            characters_independent([Character({("i",): geom_inverse(2, 4)})])


class TestRestrictionAndMackey:
    """Tests for restriction of projectives and the Mackey identity."""

    def test_multiplicities(self, mixed):
        """Test the shuffles of i and j onto j i."""
        out = res_projective_multiplicities(("j", "i"), (Weight.of("i"), Weight.of("j")), mixed)

        assert out == {(("i",), ("j",)): q}

    @pytest.mark.parametrize("k_seq,split", [
        (("i", "j", "i"), ("i", "ij")),
        (("i", "j", "i"), ("ij", "i")),
        (("i", "i", "j"), ("ii", "j")),
        (("j", "i"), ("i", "j")),
    ])
    def test_bialgebra(self, mixed, k_seq, split):
        """Test restriction of projectives against the corner dimensions."""
        split = (Weight.of(split[0]), Weight.of(split[1]))

        assert bialgebra_check(k_seq, split, mixed, 6)

    def test_bialgebra_weight_mismatch(self, mixed):
        """Test a split of the wrong weight."""
        with pytest.raises(WeightMismatch):
            bialgebra_check(("i", "j"), (Weight.of("i"), Weight.of("i")), mixed, 4)

    def test_mackey_twist(self, mixed):
        """Test the shifted term of Res_{j,i} Ind(V(i) (x) V(j))."""
        ch_i = char_V_real(mixed, "i", 1)
        ch_j = character_of(trivial_V(mixed, "j", 1))
        sides = mackey_sides(ch_i, ch_j, Weight.of("j"), Weight.of("i"), mixed)

        assert sides.lhs == {(("j",), ("i",)): q}
        assert sides.twists == [("j:1", 1)]
        assert sides.equal

    @pytest.mark.parametrize("nu,nu_prime", [("i", "j"), ("j", "i"), ("ij", "")])
    def test_mackey_identity(self, mixed, nu, nu_prime):
        """Test both sides of the Mackey identity on small characters."""
        ch_i = char_V_real(mixed, "i", 1)
        ch_j = character_of(trivial_V(mixed, "j", 1))

        assert mackey_character_check(ch_i, ch_j, Weight.of(nu), Weight.of(nu_prime), mixed)

    def test_mackey_weight_mismatch(self, mixed):
        """Test a split of the wrong weight."""
        ch_i = char_V_real(mixed, "i", 1)
        with pytest.raises(WeightMismatch):
            mackey_sides(ch_i, ch_i, Weight.of("i"), Weight.of("j"), mixed)
