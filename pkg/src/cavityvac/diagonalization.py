"""Williamson normal form of q-p uncorrelated states and the diagonalizing modes.

For a blocked covariance ``sigma = sigma_Q (+) sigma_P`` the symplectic
eigenvalues are the singular values of ``A = sqrt(sigma_Q) sqrt(sigma_P)``.
Writing ``A = O1^T nu O2``, the transform

    S_D = (nu (+) nu)^(1/2) (O1 (+) O2) sigma^(-1/2)

is symplectic and brings ``sigma`` to ``nu (+) nu``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import block_diag

from .cavity import Interval, local_frequency, local_mode_profile
from .errors import MalformedStateError, UnsupportedStateError
from .gaussian import CovarianceMatrix, Ordering, reduce, reorder_matrix, symplectic_residual

QP_TOL = 1e-10


def _sym_sqrt(mat: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Principal square root and inverse square root of a symmetric positive-definite matrix."""
    w, U = np.linalg.eigh(0.5 * (mat + mat.T))
    if w[0] <= 0:
        raise MalformedStateError(f"{name} block is not positive definite (min eigenvalue {w[0]:.3g})")
    root = (U * np.sqrt(w)) @ U.T
    inv_root = (U / np.sqrt(w)) @ U.T
    return root, inv_root


def _fix_signs(O1: np.ndarray, O2: np.ndarray) -> None:
    """Make the largest-magnitude entry of each row of ``O1`` positive (in place, rows of ``O2`` follow)."""
    idx = np.argmax(np.abs(O1), axis=1)
    signs = np.sign(O1[np.arange(O1.shape[0]), idx])
    signs[signs == 0] = 1.0
    O1 *= signs[:, None]
    O2 *= signs[:, None]


@dataclass(frozen=True)
class DiagResult:
    """Symplectic eigenvalues ``nu`` (descending) and the blocked transform ``S_D``.

    ``zeta`` and ``eta`` are the Bogoliubov coefficients of the new modes
    ``v_l = sum_m zeta_lm u_m + eta_lm u_m^*``.
    """

    nu: np.ndarray
    S_D: np.ndarray = field(repr=False)
    zeta: np.ndarray = field(repr=False)
    eta: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.nu)

    def normal_form(self) -> np.ndarray:
        return np.diag(np.concatenate([self.nu, self.nu]))

    def transform(self, ordering: Ordering = Ordering.BLOCKED) -> np.ndarray:
        return reorder_matrix(self.S_D, Ordering.BLOCKED, ordering)


def williamson(sigma: CovarianceMatrix, check: bool = True) -> DiagResult:
    """Symplectically diagonalize a state with no q-p correlations."""
    blocked = sigma.to(Ordering.BLOCKED).data
    n = sigma.dim
    sQ, qp, sP = blocked[:n, :n], blocked[:n, n:], blocked[n:, n:]
    if np.max(np.abs(qp), initial=0.0) > QP_TOL * max(1.0, np.max(np.abs(blocked))):
        raise UnsupportedStateError("state has q-p correlations; only real (q-p separable) states are handled")
    rQ, irQ = _sym_sqrt(sQ, "q")
    rP, irP = _sym_sqrt(sP, "p")
    A = rQ @ rP
    U, nu, Vh = np.linalg.svd(A)
    O1, O2 = U.T.copy(), Vh.copy()
    _fix_signs(O1, O2)
    sq = np.sqrt(nu)
    top = sq[:, None] * (O1 @ irQ)
    bottom = sq[:, None] * (O2 @ irP)
    S_D = np.zeros((2 * n, 2 * n))
    S_D[:n, :n] = top
    S_D[n:, n:] = bottom
    zeta, eta = extract_diag_bogo(S_D)
    result = DiagResult(nu, S_D, zeta, eta)
    if check:
        res = symplectic_residual(S_D, Ordering.BLOCKED)
        if not res < 1e-6:
            raise MalformedStateError(f"diagonalizing transform is not symplectic (residual {res:.3g})")
    return result


def diagonal_error(sigma: CovarianceMatrix, diag: DiagResult) -> float:
    """Largest off-diagonal entry of ``S_D sigma S_D^T`` relative to ``nu_1``."""
    D = diag.S_D @ sigma.to(Ordering.BLOCKED).data @ diag.S_D.T
    off = D - np.diag(np.diag(D))
    return float(np.max(np.abs(off)) / diag.nu[0])


def extract_diag_bogo(S_D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Read real Bogoliubov coefficients ``(zeta, eta)`` off a blocked q-p diagonal transform.

    Each interleaved 2x2 block is ``diag(zeta - eta, zeta + eta)``.
    """
    n = S_D.shape[0] // 2
    Sqq, Spp = S_D[:n, :n], S_D[n:, n:]
    return 0.5 * (Sqq + Spp), 0.5 * (Spp - Sqq)


def bogoliubov_conditions(zeta: np.ndarray, eta: np.ndarray) -> tuple[float, float]:
    """Max residuals of ``zeta zeta^T - eta eta^T = I`` and ``zeta eta^T - eta zeta^T = 0``."""
    r1 = zeta @ zeta.T - eta @ eta.T - np.eye(zeta.shape[0])
    r2 = zeta @ eta.T - eta @ zeta.T
    return float(np.max(np.abs(r1))), float(np.max(np.abs(r2)))


def eval_v_mode(ell: int, x, t, diag: DiagResult, interval: Interval, mu: float):
    """Diagonalizing mode ``v_ell(x, t)`` (1-based ``ell``) for ``t >= 0`` after the slam."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = diag.dim
    m = np.arange(1, n + 1)
    omega = local_frequency(m, interval.length, mu)
    profiles = np.stack([local_mode_profile(k, x, interval, mu) for k in m])
    phase = np.exp(-1j * omega * t)
    coeff = diag.zeta[ell - 1] * phase + diag.eta[ell - 1] * np.conj(phase)
    return coeff @ profiles


def spatial_profile(ell: int, grid, t: float, diag: DiagResult, interval: Interval, mu: float) -> np.ndarray:
    """``|v_ell(x, t)|`` on ``grid``."""
    return np.abs(eval_v_mode(ell, grid, t, diag, interval, mu))


def localization_width(grid, profile, mass: float = 0.5) -> float:
    """Width of the central interval holding ``mass`` of the normalized ``|v|^2`` distribution."""
    grid = np.asarray(grid, dtype=float)
    density = np.asarray(profile, dtype=float) ** 2
    seg = 0.5 * (density[1:] + density[:-1]) * np.diff(grid)
    cdf = np.concatenate([[0.0], np.cumsum(seg)])
    cdf /= cdf[-1]
    lo, hi = np.interp([(1 - mass) / 2, (1 + mass) / 2], cdf, grid)
    return float(hi - lo)


def local_diagonalize(sigma: CovarianceMatrix, groups) -> tuple[CovarianceMatrix, list[DiagResult]]:
    """Apply the Williamson transform of each group's reduced state to the joint state.

    ``groups`` lists the mode positions of each group; they must tile ``sigma``
    in order. The result is the joint state in the ``v``-mode basis.
    """
    diags = []
    blocks = []
    for group in groups:
        diag = williamson(reduce(sigma, group))
        diags.append(diag)
        blocks.append(diag.transform(Ordering.INTERLEAVED))
    order = [p for group in groups for p in group]
    if order != list(range(sigma.dim)):
        raise ValueError("groups must list every mode position in order")
    S = block_diag(*blocks)
    data = sigma.to(Ordering.INTERLEAVED).data
    new = S @ data @ S.T
    return CovarianceMatrix(0.5 * (new + new.T), Ordering.INTERLEAVED, sigma.modes), diags

