"""Random instance generation (uniform and planted-centroid)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import BinaryString, BinaryStringSet

__all__ = ["GenSpec", "gen_uniform", "gen_planted", "generate"]


@dataclass(frozen=True)
class GenSpec:
    """Parameters for a reproducible random instance.

    mode "uniform": m independent uniform strings of length n.
    mode "planted": a hidden uniform center whose bits are flipped
    independently with probability rho to produce each row.
    """

    n: int
    m: int
    seed: int
    mode: str = "uniform"
    rho: float = 0.1

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError("need n >= 1 and m >= 1")
        if self.mode not in ("uniform", "planted"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")


def _rows_to_set(rows: np.ndarray) -> BinaryStringSet:
    texts = ["".join("1" if b else "0" for b in row) for row in rows]
    return BinaryStringSet.from_texts(texts)


def gen_uniform(n: int, m: int, seed: int) -> BinaryStringSet:
    """m uniform random strings of length n (PCG64 stream from ``seed``)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return _rows_to_set(rng.integers(0, 2, size=(m, n), dtype=np.uint8))


def gen_planted(
    n: int, m: int, seed: int, rho: float = 0.1
) -> tuple[BinaryStringSet, BinaryString]:
    """Planted model: returns (instance, hidden center)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    center = rng.integers(0, 2, size=n, dtype=np.uint8)
    flips = rng.random((m, n)) < rho
    rows = center[None, :] ^ flips.astype(np.uint8)
    planted = BinaryString.from_text("".join("1" if b else "0" for b in center))
    return _rows_to_set(rows), planted


def generate(spec: GenSpec) -> tuple[BinaryStringSet, Optional[BinaryString]]:
    """Dispatch on spec.mode; the planted center is None for uniform mode."""
    if spec.mode == "uniform":
        return gen_uniform(spec.n, spec.m, spec.seed), None
    S, center = gen_planted(spec.n, spec.m, spec.seed, spec.rho)
    return S, center
