"""
Datum File Handler Module
Handles datum file validation, loading and saving.
"""

import json
import os
from typing import Dict, Optional, Tuple
import logging

from src.datum import BorcherdsCartanDatum, datum_from_dict
from src.errors import KLRError, MalformedDatum

logger = logging.getLogger(__name__)


class DatumFileHandler:
    """
    Handles datum JSON files.

    Attributes:
        supported_formats (list): List of supported file extensions
    """

    def __init__(self):
        """Initialize DatumFileHandler with supported formats."""
        self.supported_formats = ['.json']

    def validate_file(self, path: str) -> bool:
        """
        Check that the path has a supported extension.

        Args:
            path: Path to the datum file

        Returns:
            bool: True if valid, False otherwise
        """
        try:
            return os.path.splitext(path)[1].lower() in self.supported_formats
        except Exception as e:
            logger.error(f"File validation error: {str(e)}")
            return False

    def load_raw(self, path: str) -> Dict:
        """
        Read the raw JSON object of a datum file.

        Raises:
            MalformedDatum: unsupported extension, unreadable file or invalid JSON
        """
        if not self.validate_file(path):
            raise MalformedDatum(f"Unsupported file format. Supported formats: {self.supported_formats}")
        try:
            with open(path, 'r') as f:
                raw = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise MalformedDatum(f"Reading datum file {path} failed: {str(e)}")
        logger.info(f"Loaded datum file '{path}'")
        return raw

    def load(self, path: str) -> Tuple[BorcherdsCartanDatum, bool]:
        """
        Read and validate a datum file.

        Args:
            path: Path to the datum file

        Returns:
            (datum, derived_d): derived_d is True when D was missing and found by search
        """
        raw = self.load_raw(path)
        datum = datum_from_dict(raw)
        derived = isinstance(raw, dict) and raw.get("D") is None
        if derived:
            logger.info(f"Derived symmetrizer D = {list(datum.D)}")
        return datum, derived

    def try_load(self, path: str) -> Tuple[Optional[BorcherdsCartanDatum], Optional[KLRError]]:
        """Load without raising; the error is returned for reporting."""
        try:
            datum, _ = self.load(path)
            return datum, None
        except KLRError as e:
            logger.error(f"Error loading datum: {str(e)}")
            return None, e

    def save(self, datum: BorcherdsCartanDatum, path: str) -> bool:
        """
        Write a datum as JSON.

        Returns:
            bool: True if successful, False otherwise
        """
        try:
            directory = os.path.dirname(path)
            if directory and not os.path.exists(directory):
                os.makedirs(directory)
            with open(path, 'w') as f:
                json.dump(datum.to_dict(), f, indent=2)
            logger.info(f"Datum saved to '{path}'")
            return True
        except Exception as e:
            logger.error(f"Error saving datum: {str(e)}")
            return False

    def get_datum_info(self, datum: BorcherdsCartanDatum) -> Dict:
        """
        Summary information about a datum.

        Returns:
            Dict with rank, real and imaginary labels and the symmetrized form
        """
        classes = datum.index_class
        return {
            'rank': datum.rank,
            'real': list(classes.i_plus),
            'imaginary': list(classes.i_minus),
            'form': [[datum.bilinear(i, j) for j in datum.indices] for i in datum.indices],
        }
