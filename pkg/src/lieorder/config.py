"""Run and acceptance settings."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path | None = None
    jobs: int = 1
    allow_e7_enumeration: bool = False
    output_format: str = "markdown"

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        env = os.environ.get("LIEORDER_CACHE_DIR")
        base = cls(cache_dir=Path(env) if env else None)
        return cls(**{**base.__dict__, **{k: v for k, v in overrides.items() if v is not None}})


@dataclass(frozen=True)
class AcceptanceConfig:
    """Ranges used by the acceptance checks; defaults are the required ones."""

    ngm_mmax: int = 120
    g2_ngms_mmax: int = 48
    f4_ngms_mmax: int = 48
    oracle_g2_mmax: int = 12
    oracle_f4_mmax: int = 4
    partition_g2_mmax: int = 60
    partition_f4_mmax: int = 24
    node_mmax: int = 24
    random_matrices: int = 10_000
    seed: int = 0
    enumerate_groups: tuple[str, ...] = ("G2", "F4", "E6")
