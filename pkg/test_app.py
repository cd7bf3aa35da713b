"""
Smoke script to verify all components work correctly.
Run this before starting long verification runs.
"""

import sys

from src.klr_core import KLRAlgebra, gdim_corner
from src.polyrep import verify_relations
from src.qgroup import match_pairing_with_gdim
from src.reptheory import character_of, lbar
from src.wordcomb import Weight
from utils.config import RunConfig
from utils.datum_file import DatumFileHandler
from utils.fixtures import fixture_datum
from utils.report_writer import ReportWriter, make_report


def test_datum_files():
    """Test DatumFileHandler functionality."""
    print("Testing DatumFileHandler...")
    handler = DatumFileHandler()

    try:
        assert handler.validate_file('datum.json'), "Failed to validate .json file"
        assert not handler.validate_file('datum.txt'), "Incorrectly validated .txt file"
        print("  ✅ File validation works")

        datum, derived = handler.load('sample_data/rank2_mixed_a1.json')
        assert datum.rank == 2, "Wrong rank"
        assert not derived, "D was given but reported as derived"
        print(f"  ✅ Can load datum files (rank {datum.rank}, real {list(datum.index_class.i_plus)})")

        _, error = handler.try_load('sample_data/invalid_odd_diagonal.json')
        assert error is not None and error.code == 'OddDiagonal', "Invalid datum accepted"
        print("  ✅ Invalid datums are rejected")

    except Exception as e:
        print(f"  ❌ Error: {str(e)}")
        return False

    return True


def test_algebra():
    """Test KLRAlgebra functionality."""
    print("\nTesting KLRAlgebra...")
    datum = fixture_datum('rank2_mixed_a1')
    algebra = KLRAlgebra(datum)

    try:
        tau = algebra.crossing(1, ('i', 'j'))
        back = algebra.crossing(1, ('j', 'i'))
        square = algebra.mul(back, tau)
        assert not square.is_zero(), "Double crossing of i and j vanished"
        print(f"  ✅ Products work ({len(square.terms)} terms in the double crossing)")

        assert not algebra.relation_failures(('i', 'i', 'j')), "Relations fail on i i j"
        print("  ✅ Generator relations hold on i i j")

        report = verify_relations(datum, Weight.from_counts({'i': 1, 'j': 1}), 2)
        assert report.passed, "Polynomial representation relations failed"
        print(f"  ✅ Polynomial representation ({len(report.checks)} relation instances)")

    except Exception as e:
        print(f"  ❌ Error: {str(e)}")
        return False

    return True


def test_dimensions_and_pairing():
    """Test graded dimensions against the bilinear form."""
    print("\nTesting graded dimensions and pairing...")
    datum = fixture_datum('rank2_mixed_a1')

    try:
        series = gdim_corner(('i', 'j'), ('i', 'j'), datum, 6)
        assert series.coefficient(0) == 1, "Identity missing from degree 0"
        print(f"  ✅ gdim(1_ij R 1_ij) = {series}")

        assert match_pairing_with_gdim(('i', 'j', 'i'), ('i', 'i', 'j'), datum, 8), "Pairing mismatch"
        print("  ✅ Pairing agrees with graded dimensions")

    except Exception as e:
        print(f"  ❌ Error: {str(e)}")
        return False

    return True


def test_modules_and_reports():
    """Test module construction and report writing."""
    print("\nTesting modules and reports...")
    datum = fixture_datum('rank1_imag0')

    try:
        module = lbar(datum, 'i', 3)
        assert module.dim == 6, "Lbar(i^3) should have dimension 6"
        ch = character_of(module)
        print(f"  ✅ Module construction works (Ch = {ch.to_dict()})")

        config = RunConfig()
        report = make_report('character', config.to_dict(), datum.to_dict(), True, character=ch.to_dict())
        text = ReportWriter().render(report, 'json')
        assert '"schema": "klr-report/1"' in text, "Report schema missing"
        print("  ✅ Reports render")

    except Exception as e:
        print(f"  ❌ Error: {str(e)}")
        return False

    return True


def main():
    """Run all smoke checks."""
    print("=" * 50)
    print("KLR Algebra Toolkit - Component Tests")
    print("=" * 50)
    print()

    results = [
        test_datum_files(),
        test_algebra(),
        test_dimensions_and_pairing(),
        test_modules_and_reports(),
    ]

    print()
    print("=" * 50)
    if all(results):
        print("✅ All tests passed!")
        print("=" * 50)
        return 0
    print("❌ Some tests failed!")
    print("=" * 50)
    return 1


if __name__ == "__main__":
    sys.exit(main())
