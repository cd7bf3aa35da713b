import pytest
from hypothesis import given, strategies

from src.errors import ImaginaryDividedPower, InvalidArg, WeightMismatch
from src.qarith import LaurentPoly
from src.wordcomb import (
    DividedSequence,
    Permutation,
    Weight,
    all_permutations,
    coset_reps_min,
    crossing_degree,
    interleavings,
    lexmin_reduced_word,
    longest_element,
    parse_divided,
    parse_weight,
    sequences_of_weight,
    shuffles,
    transport_set,
    weights_up_to,
    word_degree,
)

permutations_of_4 = strategies.permutations([1, 2, 3, 4]).map(lambda p: Permutation(tuple(p)))


class TestWeights:
    """Tests for weights and sequences."""

    def test_parse_weight(self):
        """Test the "label:count" syntax."""
        weight = parse_weight("i:2, j")

        assert weight["i"] == 2
        assert weight["j"] == 1
        assert weight.ht == 3
        assert str(weight) == "i:2,j:1"

    def test_parse_weight_rejects_garbage(self):
        """Test a non-integer count."""
        with pytest.raises(InvalidArg):
            parse_weight("i:two")

    def test_arithmetic(self):
        """Test addition, subtraction and the partial order."""
        a = Weight.from_counts({"i": 2, "j": 1})
        b = Weight.of("i")

        assert a - b == Weight.of("ij")
        assert b <= a
        assert not a <= b
        assert (a + b)["i"] == 3

    def test_negative_weight(self):
        """Test that weights stay in N[I]."""
        with pytest.raises(InvalidArg):
            Weight.of("i") - Weight.of("j")

    def test_sequences_of_weight(self):
        """Test Seq(2i + j) in sorted order."""
        seqs = sequences_of_weight(parse_weight("i:2,j:1"))

        assert seqs == [("i", "i", "j"), ("i", "j", "i"), ("j", "i", "i")]

    def test_weights_up_to(self):
        """Test enumeration by height."""
        weights = weights_up_to(["i", "j"], 2)

        assert [str(w) for w in weights] == ["i:1", "j:1", "i:2", "i:1,j:1", "j:2"]


class TestPermutations:
    """Tests for Permutation and reduced words."""

    def test_from_word(self):
        """Test that a word is read as a composite."""
        assert Permutation.from_word([1, 2], 3).images == (2, 3, 1)

    def test_invalid(self):
        """Test validation."""
        with pytest.raises(InvalidArg):
            Permutation((1, 1, 2))
        with pytest.raises(InvalidArg):
            Permutation.simple(3, 3)

    def test_longest_word(self):
        """Test the lex-min reduced word of w0 in S_3."""
        assert lexmin_reduced_word(longest_element(3)) == (1, 2, 1)

    def test_act(self):
        """Test that w moves the entry at a to w(a)."""
        assert Permutation((2, 3, 1)).act(("a", "b", "c")) == ("c", "a", "b")

    @given(permutations_of_4)
    def test_reduced_word_spells_the_permutation(self, w):
        word = lexmin_reduced_word(w)
        assert len(word) == w.length()
        assert Permutation.from_word(word, 4) == w

    @given(permutations_of_4)
    def test_reduced_word_is_lex_minimal(self, w):
        word = lexmin_reduced_word(w)
        if word:
            k = word[0]
            assert w.is_left_descent(k)
            assert not any(w.is_left_descent(j) for j in range(1, k))

    def test_inverse(self):
        """Test inverse on all of S_4."""
        for w in all_permutations(4):
            assert w * w.inverse() == Permutation.identity(4)


class TestCosetsAndTransport:
    """Tests for coset representatives, transport sets and shuffles."""

    def test_coset_reps(self):
        """Test minimal representatives of S_3 / (S_2 x S_1)."""
        reps = coset_reps_min(2, 1)

        assert [w.images for w in reps] == [(1, 2, 3), (1, 3, 2), (2, 3, 1)]

    def test_coset_reps_count(self):
        """Test that there are C(n+m, n) representatives."""
        assert len(coset_reps_min(2, 3)) == 10

    def test_transport_set(self):
        """Test all w with w(src) = dst."""
        perms = transport_set(("i", "j", "i"), ("i", "i", "j"))

        assert [w.images for w in perms] == [(1, 3, 2), (2, 3, 1)]
        for w in perms:
            assert w.act(("i", "j", "i")) == ("i", "i", "j")

    def test_transport_mismatch(self):
        """Test sequences of different weights."""
        with pytest.raises(WeightMismatch):
            transport_set(("i",), ("j",))

    def test_crossing_degree(self, mixed):
        """Test deg of the crossing of i past j."""
        w = Permutation((2, 1))

        assert crossing_degree(w, ("i", "j"), mixed) == 1
        assert word_degree((1,), ("i", "j"), mixed) == 1
        assert crossing_degree(w, ("i", "i"), mixed) == -2

    def test_shuffles(self, mixed):
        """Test the shuffle of i and j onto j i."""
        found = shuffles(("i",), ("j",), ("j", "i"), mixed)

        assert len(found) == 1
        assert found[0][1] == 1

    def test_interleaving_count(self, mixed):
        """Test that all C(3,1) interleavings appear."""
        targets = [target for target, _, _ in interleavings(("i",), ("j", "j"), mixed)]

        assert sorted(targets) == [("i", "j", "j"), ("j", "i", "j"), ("j", "j", "i")]


class TestDividedSequence:
    """Tests for divided-power sequences."""

    def test_parse(self):
        """Test the i^(n) syntax."""
        shape = parse_divided("i^(2) j")

        assert shape.blocks == (("i", 2), ("j", 1))
        assert shape.hat() == ("i", "i", "j")
        assert str(shape) == "i^(2) j"

    def test_parse_error(self):
        """Test a malformed block."""
        with pytest.raises(InvalidArg):
            parse_divided("i^(x)")

    def test_bracket_and_factorial(self, mixed2):
        """Test <i^(2)> = r_i and the block factorial."""
        shape = DividedSequence((("i", 2), ("j", 1)))

        assert shape.bracket(mixed2) == 1
        assert shape.factorial(mixed2) == LaurentPoly({1: 1, -1: 1})

    def test_imaginary_block(self, mixed):
        """Test that divided powers need a real label."""
        with pytest.raises(ImaginaryDividedPower):
            DividedSequence((("j", 2),)).validate(mixed)
