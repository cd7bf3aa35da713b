"""
Fixture datums used by the sample data, the smoke script and the test suite.
"""

from typing import Dict

from src.datum import BorcherdsCartanDatum, datum_from_dict

FIXTURE_DATUMS: Dict[str, Dict] = {
    "rank1_real": {"indices": ["i"], "A": [[2]], "D": [1]},
    "rank1_imag0": {"indices": ["i"], "A": [[0]], "D": [1]},
    "rank1_imag2": {"indices": ["i"], "A": [[-2]], "D": [1]},
    "rank2_mixed_a1": {"indices": ["i", "j"], "A": [[2, -1], [-1, -2]], "D": [1, 1]},
    "rank2_mixed_a2": {"indices": ["i", "j"], "A": [[2, -2], [-1, 0]], "D": [1, 2]},
    "rank2_mixed_a2_reversed": {"indices": ["i", "j"], "A": [[2, -2], [-1, 0]], "D": [1, 2], "orientation": [["j", "i"]]},
    "rank2_real_a2": {"indices": ["i", "j"], "A": [[2, -2], [-1, 2]], "D": [1, 2]},
    "rank3_orth": {"indices": ["i", "j", "k"], "A": [[2, -1, 0], [-1, 2, -1], [0, -1, -2]], "D": [1, 1, 1]},
}


def fixture_datum(name: str) -> BorcherdsCartanDatum:
    return datum_from_dict(FIXTURE_DATUMS[name])


def all_fixture_datums() -> Dict[str, BorcherdsCartanDatum]:
    return {name: fixture_datum(name) for name in FIXTURE_DATUMS}
