"""
Script to create the sample datum files and a sample graded-dimension workbook.
"""

import json
import os

import pandas as pd

from src.klr_core import gdim_corner
from src.wordcomb import Weight, format_sequence, sequences_of_weight
from utils.datum_file import DatumFileHandler
from utils.fixtures import all_fixture_datums

SAMPLE_DIR = 'sample_data'

INVALID_DATUMS = {
    'invalid_odd_diagonal': {'indices': ['i', 'j'], 'A': [[1, -1], [-1, 2]]},
    'invalid_not_symmetrizable': {'indices': ['i', 'j'], 'A': [[2, -1], [0, 2]]},
}

handler = DatumFileHandler()
datums = all_fixture_datums()

for name, datum in datums.items():
    handler.save(datum, os.path.join(SAMPLE_DIR, f'{name}.json'))
    print(f"✅ Sample datum created: {SAMPLE_DIR}/{name}.json")

for name, raw in INVALID_DATUMS.items():
    with open(os.path.join(SAMPLE_DIR, f'{name}.json'), 'w') as f:
        json.dump(raw, f, indent=2)
    print(f"✅ Invalid datum created: {SAMPLE_DIR}/{name}.json")

# Graded dimensions of every corner of R(2i + j) for the mixed rank-2 datum
datum = datums['rank2_mixed_a1']
weight = Weight.from_counts({'i': 2, 'j': 1})
rows = []
for src in sequences_of_weight(weight):
    for dst in sequences_of_weight(weight):
        rows.append({
            'Source': format_sequence(src),
            'Target': format_sequence(dst),
            'Graded dimension': str(gdim_corner(src, dst, datum, 10)),
        })
gdim_df = pd.DataFrame(rows)

with pd.ExcelWriter(os.path.join(SAMPLE_DIR, 'rank2_mixed_a1_gdim.xlsx'), engine='openpyxl') as writer:
    gdim_df.to_excel(writer, sheet_name='Corners', index=False)
    pd.DataFrame([handler.get_datum_info(datum)]).astype(str).to_excel(writer, sheet_name='Datum', index=False)

print(f"✅ Sample workbook created: {SAMPLE_DIR}/rank2_mixed_a1_gdim.xlsx")
print("\n📊 Sample data summary:")
print(f"Datums: {len(datums)} valid, {len(INVALID_DATUMS)} invalid")
print(f"Corners of R({weight}): {len(gdim_df)} rows")
