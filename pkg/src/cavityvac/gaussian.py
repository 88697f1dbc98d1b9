"""Covariance matrices of zero-mean Gaussian states.

Covariance entries are ``sigma_ij = <x_i x_j + x_j x_i>`` so the vacuum is
the identity. The canonical quadrature ordering is interleaved
``(q1, p1, q2, p2, ...)``; the blocked ordering ``(q1, q2, ..., p1, p2, ...)``
is used by the Williamson routine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .bogoliubov import BogoliubovTable
from .cavity import ModeId


class Ordering(str, enum.Enum):
    INTERLEAVED = "interleaved"
    BLOCKED = "blocked"


def symplectic_form(n_modes: int, ordering: Ordering = Ordering.INTERLEAVED) -> np.ndarray:
    if ordering == Ordering.INTERLEAVED:
        return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


def blocked_permutation(n_modes: int) -> np.ndarray:
    """Index array ``perm`` with ``blocked = interleaved[perm]``."""
    return np.concatenate([np.arange(0, 2 * n_modes, 2), np.arange(1, 2 * n_modes, 2)])


def interleaved_permutation(n_modes: int) -> np.ndarray:
    """Inverse of :func:`blocked_permutation`."""
    return np.argsort(blocked_permutation(n_modes))


def reorder_matrix(mat: np.ndarray, source: Ordering, target: Ordering) -> np.ndarray:
    """Change the quadrature ordering of a ``2n x 2n`` matrix (rows and columns)."""
    if source == target:
        return mat
    n = mat.shape[0] // 2
    perm = blocked_permutation(n) if target == Ordering.BLOCKED else interleaved_permutation(n)
    return mat[np.ix_(perm, perm)]


def quadrature_labels(modes: Sequence[ModeId], ordering: Ordering) -> list[str]:
    qs = [f"q_{mode}" for mode in modes]
    ps = [f"p_{mode}" for mode in modes]
    if ordering == Ordering.BLOCKED:
        return qs + ps
    return [label for pair in zip(qs, ps) for label in pair]


@dataclass(frozen=True)
class CovarianceMatrix:
    """A ``2n x 2n`` covariance matrix tagged with its ordering and mode labels."""

    data: np.ndarray = field(repr=False)
    ordering: Ordering = Ordering.INTERLEAVED
    modes: tuple[ModeId, ...] = ()

    def __post_init__(self):
        data = np.array(self.data, dtype=float)
        if data.ndim != 2 or data.shape[0] != data.shape[1] or data.shape[0] % 2:
            raise ValueError(f"covariance matrix must be 2n x 2n, got shape {data.shape}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "modes", tuple(self.modes))
        if self.modes and len(self.modes) != self.dim:
            raise ValueError(f"{len(self.modes)} labels for {self.dim} modes")

    @property
    def dim(self) -> int:
        return self.data.shape[0] // 2

    @property
    def omega(self) -> np.ndarray:
        return symplectic_form(self.dim, self.ordering)

    def to(self, ordering: Ordering) -> "CovarianceMatrix":
        return CovarianceMatrix(reorder_matrix(self.data, self.ordering, ordering), ordering, self.modes)

    def labels(self) -> list[str]:
        modes = self.modes or tuple(f"{i + 1}" for i in range(self.dim))
        return quadrature_labels(modes, self.ordering)

    def block(self, i: int, j: int) -> np.ndarray:
        """2x2 block between mode positions ``i`` and ``j`` (0-based)."""
        d = self.to(Ordering.INTERLEAVED).data
        return d[2 * i : 2 * i + 2, 2 * j : 2 * j + 2]

    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.data - self.data.T)))

    @cached_property
    def tau_phys(self) -> float:
        """How far ``sigma + i Omega`` is from positive semidefinite (0 if physical)."""
        lowest = np.linalg.eigvalsh(self.data + 1j * self.omega)[0]
        return float(max(0.0, -lowest))


def vacuum(n_modes: int, modes: Sequence[ModeId] = ()) -> CovarianceMatrix:
    return CovarianceMatrix(np.eye(2 * n_modes), Ordering.INTERLEAVED, tuple(modes))


def s_block(m: int, n: int, table: BogoliubovTable) -> np.ndarray:
    """2x2 block of the global-to-local transform for local ``m`` and global ``n`` (1-based).

    With real coefficients this is ``2 V_mn diag(omega_m, Omega_n)``.
    """
    V = table.V[m - 1, n - 1]
    return 2.0 * V * np.diag([table.omega[m - 1], table.Omega[n - 1]])


def s_matrix(table: BogoliubovTable) -> np.ndarray:
    """The ``2N x 2M`` interleaved transform ``x_local = S X_global`` for one region."""
    N, M = table.V.shape
    S = np.zeros((2 * N, 2 * M))
    S[0::2, 0::2] = 2.0 * table.omega[:, None] * table.V
    S[1::2, 1::2] = 2.0 * table.V * table.Omega[None, :]
    return S


def _cross_block(left: BogoliubovTable, right: BogoliubovTable) -> np.ndarray:
    """Interleaved ``S_left S_right^T`` computed from the q and p parts separately."""
    Omega2 = left.Omega**2
    qq = 4.0 * np.outer(left.omega, right.omega) * (left.V @ right.V.T)
    pp = 4.0 * (left.V * Omega2[None, :]) @ right.V.T
    out = np.zeros((2 * left.N, 2 * right.N))
    out[0::2, 0::2] = qq
    out[1::2, 1::2] = pp
    return out


def assemble(tables: Sequence[BogoliubovTable]) -> CovarianceMatrix:
    """Vacuum covariance in the joint local basis of ``tables`` (diagonal blocks then correlations)."""
    cfgs = {(t.cfg.R, t.cfg.mu, t.M) for t in tables}
    if len(cfgs) != 1:
        raise ValueError("tables were built from different cavity configurations")
    rows = []
    for a in tables:
        rows.append([_cross_block(a, b) for b in tables])
    data = np.block(rows)
    # symmetrise exactly; the blocks are transposes of each other up to rounding
    data = 0.5 * (data + data.T)
    modes = tuple(ModeId(t.region, m) for t in tables for m in range(1, t.N + 1))
    return CovarianceMatrix(data, Ordering.INTERLEAVED, modes)


def assemble_two_region(left: BogoliubovTable, right: BogoliubovTable) -> CovarianceMatrix:
    """``sigma_loc`` for a two-region split: ``[[sigma, gamma], [gamma^T, sigma_bar]]``."""
    return assemble([left, right])


def assemble_three_region(a: BogoliubovTable, b: BogoliubovTable, c: BogoliubovTable) -> CovarianceMatrix:
    """``sigma_loc`` for three regions, ordered A, B, C."""
    return assemble([a, b, c])


def reduce(sigma: CovarianceMatrix, keep: Sequence[int]) -> CovarianceMatrix:
    """Partial trace onto the modes at positions ``keep`` (0-based, order kept as given)."""
    keep = list(keep)
    if not keep:
        raise ValueError("must keep at least one mode")
    if min(keep) < 0 or max(keep) >= sigma.dim:
        raise IndexError(f"mode positions {keep} out of range for {sigma.dim} modes")
    if sigma.ordering == Ordering.INTERLEAVED:
        idx = np.ravel([[2 * k, 2 * k + 1] for k in keep])
    else:
        idx = np.concatenate([keep, [sigma.dim + k for k in keep]])
    modes = tuple(sigma.modes[k] for k in keep) if sigma.modes else ()
    return CovarianceMatrix(sigma.data[np.ix_(idx, idx)], sigma.ordering, modes)


def two_mode(sigma: CovarianceMatrix, m: int, n: int) -> CovarianceMatrix:
    """The 4x4 state of the modes at positions ``m`` and ``n``."""
    return reduce(sigma, [m, n])


def positions(sigma: CovarianceMatrix, region) -> list[int]:
    """Mode positions in ``sigma`` belonging to ``region``."""
    return [i for i, mode in enumerate(sigma.modes) if mode.region == region]


def free_evolution_matrix(t: float, frequencies, ordering: Ordering = Ordering.INTERLEAVED) -> np.ndarray:
    """Direct sum of phase-space rotations ``[[cos wt, sin wt], [-sin wt, cos wt]]``."""
    w = np.asarray(frequencies, dtype=float)
    c, s = np.cos(w * t), np.sin(w * t)
    n = len(w)
    S = np.zeros((2 * n, 2 * n))
    S[0::2, 0::2] = np.diag(c)
    S[0::2, 1::2] = np.diag(s)
    S[1::2, 0::2] = np.diag(-s)
    S[1::2, 1::2] = np.diag(c)
    return reorder_matrix(S, Ordering.INTERLEAVED, ordering)


def free_evolution(sigma: CovarianceMatrix, t: float, frequencies) -> CovarianceMatrix:
    """Schrodinger-picture evolution ``S_F(t) sigma S_F(t)^T`` under free local Hamiltonians."""
    if len(frequencies) != sigma.dim:
        raise ValueError(f"{len(frequencies)} frequencies for {sigma.dim} modes")
    S = free_evolution_matrix(t, frequencies, sigma.ordering)
    return CovarianceMatrix(S @ sigma.data @ S.T, sigma.ordering, sigma.modes)


def symplectic_residual(S: np.ndarray, ordering: Ordering = Ordering.INTERLEAVED) -> float:
    """``max |S Omega S^T - Omega|``; rectangular ``S`` uses the form of each side."""
    rows, cols = S.shape
    lhs = S @ symplectic_form(cols // 2, ordering) @ S.T
    return float(np.max(np.abs(lhs - symplectic_form(rows // 2, ordering))))


def bogoliubov_transform(tables: Sequence[BogoliubovTable]) -> np.ndarray:
    """Stacked transform of all regions (square only in the untruncated limit)."""
    return np.vstack([s_matrix(t) for t in tables])
