"""Sampling configuration"""
from dataclasses import dataclass

UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class SampleSpec:
    """How many incomes to draw, from which seed, over which percent band"""
    n: int
    seed: int
    p_low: float = 10.0
    p_high: float = 100.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"sample size must be positive, got {self.n}")
        if not 0 <= self.seed <= UINT64_MAX:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 10 <= self.p_low <= self.p_high:
            raise ValueError(
                f"percent band must satisfy 10 <= p_low <= p_high, got [{self.p_low}, {self.p_high}]"
            )
