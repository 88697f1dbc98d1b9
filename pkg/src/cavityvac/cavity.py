"""Cavity geometry, dispersion relations and mode functions.

Natural units (c = hbar = 1). The cavity occupies ``[0, R]`` with Dirichlet
walls; global modes are the stationary sine modes of the whole cavity and
local modes are sine modes supported on one sub-region at ``t = 0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np


class Region(str, enum.Enum):
    GLOBAL = "global"
    LEFT = "left"
    RIGHT = "right"
    A = "A"
    B = "B"
    C = "C"


@dataclass(frozen=True)
class CavityConfig:
    """Cavity length ``R``, field mass ``mu`` and mode truncations.

    ``N`` local modes are kept per region; ``M`` global modes are kept in every
    truncated sum over the global basis. ``M`` defaults to ``20 * N``.
    """

    R: float = 1.0
    mu: float = 0.0
    N: int = 200
    M: int | None = None

    def __post_init__(self):
        if self.M is None:
            object.__setattr__(self, "M", 20 * self.N)
        if not self.R > 0:
            raise ValueError(f"cavity length must be positive, got R={self.R}")
        if self.mu < 0:
            raise ValueError(f"mass must be non-negative, got mu={self.mu}")
        if self.N < 1:
            raise ValueError(f"need at least one local mode, got N={self.N}")
        if self.M < self.N:
            raise ValueError(f"need M >= N, got M={self.M}, N={self.N}")


@dataclass(frozen=True)
class Interval:
    """A sub-region ``[start, start + length]`` of the cavity."""

    start: float
    length: float

    @property
    def stop(self) -> float:
        return self.start + self.length

    def contains(self, x):
        """Open-interval membership; edges count as outside (the modes vanish there)."""
        x = np.asarray(x, dtype=float)
        return (x > self.start) & (x < self.stop)


@dataclass(frozen=True)
class TwoRegion:
    """Split at ``r``: left ``[0, r]`` and right ``[r, R]``."""

    r: float

    def regions(self, R: float) -> dict[Region, Interval]:
        if not 0 < self.r < R:
            raise ValueError(f"split point must satisfy 0 < r < R, got r={self.r}, R={R}")
        return {
            Region.LEFT: Interval(0.0, self.r),
            Region.RIGHT: Interval(self.r, R - self.r),
        }


@dataclass(frozen=True)
class ThreeRegion:
    """Consecutive regions of sizes ``A``, ``B``, ``C`` with ``A + B + C = R``."""

    A: float
    B: float
    C: float

    @classmethod
    def centered(cls, R: float, B: float) -> "ThreeRegion":
        """Symmetric layout: a middle region of size ``B`` centred at ``R/2``."""
        side = (R - B) / 2
        return cls(side, B, R - B - side)

    def regions(self, R: float) -> dict[Region, Interval]:
        if min(self.A, self.B, self.C) <= 0:
            raise ValueError(f"region sizes must be positive, got {self}")
        if not np.isclose(self.A + self.B + self.C, R, rtol=1e-12, atol=0.0):
            raise ValueError(f"region sizes must sum to R={R}, got {self}")
        return {
            Region.A: Interval(0.0, self.A),
            Region.B: Interval(self.A, self.B),
            # pinned to R so the right wall is exact
            Region.C: Interval(self.A + self.B, R - self.A - self.B),
        }


Partition = Union[TwoRegion, ThreeRegion]


@dataclass(frozen=True)
class ModeId:
    region: Region
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"mode indices are 1-based, got {self.index}")

    def __str__(self) -> str:
        return f"{self.region.value}{self.index}"


def global_frequency(n, cfg: CavityConfig):
    """Frequency of global mode ``n``: ``sqrt((pi n / R)^2 + mu^2)``."""
    n = np.asarray(n, dtype=float)
    return np.sqrt((np.pi * n / cfg.R) ** 2 + cfg.mu**2)


def local_frequency(m, region_length: float, mu: float):
    """Frequency of local mode ``m`` in a region of the given length."""
    m = np.asarray(m, dtype=float)
    return np.sqrt((np.pi * m / region_length) ** 2 + mu**2)


def sinpi(t):
    """``sin(pi t)`` with exact zeros at integer ``t``."""
    t = np.fmod(np.asarray(t, dtype=float), 2.0)
    out = np.sin(np.pi * t)
    return np.where(t == np.round(t), 0.0, out)


def cospi(t):
    """``cos(pi t)`` with exact zeros at half-integer ``t``."""
    t = np.fmod(np.asarray(t, dtype=float), 2.0)
    out = np.cos(np.pi * t)
    return np.where(t - 0.5 == np.round(t - 0.5), 0.0, out)


def eval_global_mode(n: int, x, t, cfg: CavityConfig):
    """Global mode ``U_n(x, t)``."""
    Omega = global_frequency(n, cfg)
    x = np.asarray(x, dtype=float)
    spatial = sinpi(n * x / cfg.R) / np.sqrt(cfg.R * Omega)
    return spatial * np.exp(-1j * Omega * np.asarray(t, dtype=float))


def local_mode_profile(m: int, x, interval: Interval, mu: float):
    """Spatial part of local mode ``m`` at ``t = 0``; zero outside ``interval``."""
    x = np.asarray(x, dtype=float)
    omega = local_frequency(m, interval.length, mu)
    inside = interval.contains(x)
    value = sinpi(m * (x - interval.start) / interval.length) / np.sqrt(interval.length * omega)
    return np.where(inside, value, 0.0)


def eval_local_mode_postslam(mode: ModeId, x, t, partition: Partition, cfg: CavityConfig):
    """Local mode after the mirror(s) are slammed at ``t = 0``.

    For ``t >= 0`` the mode is stationary in its sub-cavity:
    ``u_m(x, 0) exp(-i omega_m t)``.
    """
    if np.any(np.asarray(t) < 0):
        raise ValueError("post-slam modes are only defined for t >= 0")
    interval = partition.regions(cfg.R)[mode.region]
    omega = local_frequency(mode.index, interval.length, cfg.mu)
    profile = local_mode_profile(mode.index, x, interval, cfg.mu)
    return profile * np.exp(-1j * omega * np.asarray(t, dtype=float))


def wavenumbers_degenerate(n: int, m: int, R, L) -> bool:
    """True iff global mode ``n`` and local mode ``m`` share a wavenumber (``n L == m R``).

    Exact when the lengths are given as ``Fraction``/int; floats are converted
    exactly, so use rationals when the geometry is rational.
    """
    return Fraction(n) * Fraction(L) == Fraction(m) * Fraction(R)
