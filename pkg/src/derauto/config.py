"""Default bounds and experiment settings."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple


@dataclass(frozen=True)
class Bounds:
    """Degree bound for bounded computations, nilpotency cap, and doubling retries."""

    max_deg: int = 8
    cap: int = 32
    retries: int = 2


@dataclass(frozen=True)
class RoundtripExperiment:
    samples: int = 100
    nvars: Tuple[int, ...] = (1, 2, 3)
    max_factors: int = 4
    factor_degree: int = 3
    max_total_degree: Optional[int] = None
    method: str = "proof"
    seed: int = 2024
    bounds: Bounds = field(default_factory=Bounds)


@dataclass(frozen=True)
class LemmaExperiment:
    nvars: Tuple[int, ...] = (2, 3)
    degree: int = 6
    closure_degree: int = 4
    samples: int = 20
    seed: int = 0
