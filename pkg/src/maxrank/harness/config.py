"""Run configuration shared by the suites and the CLI."""

from __future__ import annotations

import zlib
from dataclasses import asdict, dataclass, field

import numpy as np

from ..exact.field import DEFAULT_PRIME, check_prime


@dataclass(frozen=True)
class Config:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    trials: int = 5
    samples: int = 100
    workers: int = 1
    truncation: dict = field(default_factory=dict)

    def validate(self, bound: int = 0) -> "Config":
        check_prime(self.prime, bound)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    def case_seed(self, suite: str, index: int) -> int:
        """Deterministic per-case seed, independent of execution order."""
        ss = np.random.SeedSequence([self.seed, zlib.crc32(suite.encode()), index])
        return int(ss.generate_state(1, dtype=np.uint32)[0])
