"""Overlaps and Bogoliubov coefficients between global and local modes.

For a local mode ``m`` on the interval ``[x0, x0 + L]`` and a global mode
``n`` the overlap of the spatial profiles at ``t = 0`` is

    V_mn = (m pi / L) [(-1)^m sin(n pi (x0 + L) / R) - sin(n pi x0 / R)]
           / (sqrt(R L Omega_n omega_m) (Omega_n^2 - omega_m^2))

which covers the left/right split and each of the three-region pieces. The
Bogoliubov coefficients follow as ``alpha = (Omega + omega) V`` and
``beta = (Omega - omega) V``; all of them are real.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cavity import (
    CavityConfig,
    Interval,
    Partition,
    Region,
    cospi,
    global_frequency,
    local_frequency,
    sinpi,
)

DEGENERACY_EPS = 1e-9


def _overlap_block(m, n, interval: Interval, R: float, mu: float):
    """Overlap matrix for local indices ``m`` (rows) and global indices ``n`` (cols)."""
    m = np.asarray(m, dtype=float)[:, None]
    n = np.asarray(n, dtype=float)[None, :]
    x0, L = interval.start, interval.length
    stop = interval.stop
    if abs(stop - R) <= 1e-14 * R:
        stop = R
    k = np.pi * n / R
    q = np.pi * m / L
    Omega = np.sqrt(k**2 + mu**2)
    omega = np.sqrt(q**2 + mu**2)
    norm = np.sqrt(R * L * Omega * omega)
    # mass cancels in Omega^2 - omega^2
    gap = (k - q) * (k + q)
    degenerate = np.abs(gap) < DEGENERACY_EPS * Omega**2

    parity = np.where(np.fmod(m, 2.0) == 0, 1.0, -1.0)
    numer = q * (parity * sinpi(n * stop / R) - sinpi(n * x0 / R))
    safe_gap = np.where(degenerate, 1.0, gap)
    closed = numer / (norm * safe_gap)
    # equal wavenumbers: integral of sin(k x) sin(k (x - x0)) over the region
    limit = 0.5 * L * cospi(n * x0 / R) / norm
    return np.where(degenerate, limit, closed), degenerate


def overlap(m: int, n: int, region: Region, partition: Partition, cfg: CavityConfig) -> float:
    """Overlap ``V_mn`` of local mode ``m`` in ``region`` with global mode ``n``."""
    interval = partition.regions(cfg.R)[region]
    V, _ = _overlap_block([m], [n], interval, cfg.R, cfg.mu)
    return float(V[0, 0])


@dataclass(frozen=True)
class BogoliubovTable:
    """Overlaps of the first ``N`` local modes of one region with ``M`` global modes.

    ``V``, ``alpha`` and ``beta`` are ``N x M``; row ``m - 1`` is local mode ``m``.
    """

    region: Region
    interval: Interval
    cfg: CavityConfig
    partition: Partition
    V: np.ndarray = field(repr=False)
    degenerate: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return self.V.shape[0]

    @property
    def M(self) -> int:
        return self.V.shape[1]

    @property
    def omega(self) -> np.ndarray:
        return local_frequency(np.arange(1, self.N + 1), self.interval.length, self.cfg.mu)

    @property
    def Omega(self) -> np.ndarray:
        return global_frequency(np.arange(1, self.M + 1), self.cfg)

    @property
    def alpha(self) -> np.ndarray:
        return (self.Omega[None, :] + self.omega[:, None]) * self.V

    @property
    def beta(self) -> np.ndarray:
        beta = (self.Omega[None, :] - self.omega[:, None]) * self.V
        beta[self.degenerate] = 0.0
        return beta


def build_table(region: Region, partition: Partition, cfg: CavityConfig, jobs: int = 1) -> BogoliubovTable:
    """Full ``N x M`` overlap table for one region.

    Rows are independent, so with ``jobs > 1`` they are computed in chunks on a
    thread pool; the result does not depend on ``jobs``.
    """
    interval = partition.regions(cfg.R)[region]
    m = np.arange(1, cfg.N + 1)
    n = np.arange(1, cfg.M + 1)
    if jobs <= 1 or cfg.N < 2:
        V, deg = _overlap_block(m, n, interval, cfg.R, cfg.mu)
    else:
        chunks = np.array_split(m, min(jobs, cfg.N))
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda rows: _overlap_block(rows, n, interval, cfg.R, cfg.mu), chunks))
        V = np.vstack([p[0] for p in parts])
        deg = np.vstack([p[1] for p in parts])
    V.setflags(write=False)
    deg.setflags(write=False)
    return BogoliubovTable(region, interval, cfg, partition, V, deg)


def build_tables(partition: Partition, cfg: CavityConfig, jobs: int = 1) -> dict[Region, BogoliubovTable]:
    """Tables for every region of ``partition``, in left-to-right order."""
    return {region: build_table(region, partition, cfg, jobs) for region in partition.regions(cfg.R)}


def wronskian_residual(table: BogoliubovTable, partner: BogoliubovTable | None = None):
    """Residuals of the Bogoliubov conditions over the truncated global sum.

    Returns ``(R1, R2)`` with ``R1 = alpha alpha^T - beta beta^T - delta`` and
    ``R2 = alpha beta^T - beta alpha^T``. With ``partner`` given the cross
    conditions between two regions are returned instead (the delta is dropped);
    those must vanish as well since distinct local modes are orthogonal.
    """
    a1, b1 = table.alpha, table.beta
    if partner is None:
        a2, b2 = a1, b1
        delta = np.eye(table.N)
    else:
        a2, b2 = partner.alpha, partner.beta
        delta = 0.0
    R1 = a1 @ a2.T - b1 @ b2.T - delta
    R2 = a1 @ b2.T - b1 @ a2.T
    return R1, R2


def wronskian_sweep(
    region: Region, partition: Partition, cfg: CavityConfig, Ms: Sequence[int]
) -> list[tuple[int, float]]:
    """``max |R1|`` for each global truncation in ``Ms`` (same ``N``, ``R``, ``mu``)."""
    out = []
    for M in Ms:
        sub = CavityConfig(cfg.R, cfg.mu, cfg.N, M)
        R1, _ = wronskian_residual(build_table(region, partition, sub))
        out.append((M, float(np.max(np.abs(R1)))))
    return out


def particle_spectrum(table: BogoliubovTable) -> np.ndarray:
    """Mean local particle number ``<n_m> = sum_n beta_mn^2`` in the global vacuum."""
    return np.sum(table.beta**2, axis=1)
