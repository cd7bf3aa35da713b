"""
Run Configuration Module
Holds the knobs of one command-line run and checks them against the hard limits.
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional
import logging

from src.errors import ConfigError

logger = logging.getLogger(__name__)

FORMATS = ("json", "text", "csv", "xlsx")
TABLE_FORMATS = ("csv", "xlsx")
MAX_HT_LIMIT = 6
MAX_N_LIMIT = 6


@dataclass
class RunConfig:
    """
    Configuration shared by every subcommand.

    Attributes:
        cap: truncation degree of every series
        max_ht: guard on weight heights in sweeps and suites
        max_n: guard on strand counts in module constructions
        test_degree: monomial degree bound of the polynomial relation suite
        width: number of worker processes for sweeps
        format: report format
        seed: seed of every randomized check
        samples: random samples per randomized check
        checkpoint_dir: directory for resumable sweep results
        output: report destination; stdout when None
    """

    cap: int = 24
    max_ht: int = 4
    max_n: int = 5
    test_degree: int = 4
    width: int = 1
    format: str = "json"
    seed: int = 7
    samples: int = 50
    checkpoint_dir: Optional[str] = None
    output: Optional[str] = None

    def validate(self) -> "RunConfig":
        if self.cap < 1:
            raise ConfigError(f"cap must be >= 1, got {self.cap}")
        if not 1 <= self.max_ht <= MAX_HT_LIMIT:
            raise ConfigError(f"max_ht must be in 1..{MAX_HT_LIMIT}, got {self.max_ht}")
        if not 1 <= self.max_n <= MAX_N_LIMIT:
            raise ConfigError(f"max_n must be in 1..{MAX_N_LIMIT}, got {self.max_n}")
        if self.test_degree < 0:
            raise ConfigError(f"test_degree must be >= 0, got {self.test_degree}")
        if self.width < 1:
            raise ConfigError(f"width must be >= 1, got {self.width}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format {self.format!r}; expected one of {FORMATS}")
        if self.format in TABLE_FORMATS and not self.output:
            raise ConfigError(f"Format {self.format} needs --output")
        return self

    @classmethod
    def from_args(cls, args: Any) -> "RunConfig":
        """Build from an argparse namespace, keeping defaults for absent flags."""
        values = {}
        for name in cls.__dataclass_fields__:
            value = getattr(args, name, None)
            if value is not None:
                values[name] = value
        config = cls(**values).validate()
        logger.debug(f"Run configuration: {config.to_dict()}")
        return config

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
