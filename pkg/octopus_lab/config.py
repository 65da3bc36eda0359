"""Configuration dataclass for octopus-lab experiment runs."""

from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

# Documented default seed; OCTOPUS_LAB_SEED overrides it when --seed is absent
DEFAULT_SEED = 20240601

DEFAULT_TOL = 1e-9


@dataclass
class RunConfig:
    """Resolved configuration for one CLI run."""

    subcommand: str
    n: Optional[int] = None  # None = per-subcommand default
    trials: int = 20
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    output_format: str = "json"  # json, text or csv (csv for tables only)
    out: Optional[str] = None  # None = stdout
    weights: Optional[str] = None  # Transposition weight file
    restarts: int = 32  # Optimizer restarts for kazhdan
    threads: int = 1
    class_partition: Optional[str] = None  # e.g. "4,1" for gap
    density: float = 0.5  # Edge probability for random weight graphs
    subset_law: str = "uniform"  # Subset-size law for caputo
    include_timestamp: bool = False
    project: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary for serialization."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Create config from dictionary.

        Args:
            data: Dictionary with config values.

        Returns:
            RunConfig instance.
        """
        # Only use fields that exist in the dataclass
        valid_fields = {f.name for f in fields(cls)}
        filtered = {k: v for k, v in data.items() if k in valid_fields}
        return cls(**filtered)
