"""
Checkpoint Manager Module
Handles saving and loading of partial sweep results so long runs can resume.
"""

import json
import os
import re
from typing import Dict, List, Optional
import logging

import pandas as pd

logger = logging.getLogger(__name__)


class CheckpointManager:
    """
    Stores one JSON file per sweep unit (a weight or a corner).

    Keys are free-form strings; they are sanitized into file names.
    """

    def __init__(self, directory: str = "checkpoints"):
        """
        Initialize CheckpointManager.

        Args:
            directory: Directory to store checkpoint files
        """
        self.directory = directory
        self._ensure_directory()

    def _ensure_directory(self):
        """Create the checkpoint directory if it doesn't exist."""
        if not os.path.exists(self.directory):
            os.makedirs(self.directory)
            logger.info(f"Created checkpoint directory: {self.directory}")

    @staticmethod
    def file_name(key: str) -> str:
        return re.sub(r"[^A-Za-z0-9_.-]+", "_", key).strip("_") + ".json"

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, self.file_name(key))

    def save(self, key: str, payload: Dict) -> bool:
        """
        Save a payload under a key.

        Returns:
            bool: True if successful, False otherwise
        """
        try:
            data = {
                'key': key,
                'payload': payload,
                'created_at': str(pd.Timestamp.now()),
            }
            with open(self._path(key), 'w') as f:
                json.dump(data, f, indent=2, sort_keys=True)
            logger.debug(f"Checkpoint '{key}' saved")
            return True
        except Exception as e:
            logger.error(f"Error saving checkpoint: {str(e)}")
            return False

    def load(self, key: str) -> Optional[Dict]:
        """
        Load the payload of a key.

        Returns:
            The payload, or None if absent or unreadable
        """
        try:
            path = self._path(key)
            if not os.path.exists(path):
                return None
            with open(path, 'r') as f:
                data = json.load(f)
            if data.get('key') != key:
                logger.warning(f"Checkpoint file for '{key}' holds key '{data.get('key')}'")
                return None
            logger.debug(f"Checkpoint '{key}' loaded")
            return data['payload']
        except Exception as e:
            logger.error(f"Error loading checkpoint: {str(e)}")
            return None

    def list_keys(self) -> List[str]:
        try:
            keys = []
            for name in os.listdir(self.directory):
                if name.endswith('.json'):
                    with open(os.path.join(self.directory, name), 'r') as f:
                        keys.append(json.load(f).get('key', name[:-5]))
            return sorted(keys)
        except Exception as e:
            logger.error(f"Error listing checkpoints: {str(e)}")
            return []

    def delete(self, key: str) -> bool:
        try:
            path = self._path(key)
            if os.path.exists(path):
                os.remove(path)
                logger.info(f"Checkpoint '{key}' deleted")
                return True
            logger.warning(f"Checkpoint '{key}' not found")
            return False
        except Exception as e:
            logger.error(f"Error deleting checkpoint: {str(e)}")
            return False

    def clear(self) -> int:
        """Delete every checkpoint; returns how many were removed."""
        removed = 0
        for key in self.list_keys():
            if self.delete(key):
                removed += 1
        return removed
