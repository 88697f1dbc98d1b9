"""Symplectic spectra, entropies and two-mode logarithmic negativity.

All logarithms are natural.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MalformedStateError
from .gaussian import CovarianceMatrix, Ordering, reduce, symplectic_form

log = logging.getLogger(__name__)

LOG_BASE = "e"
PAIRING_TOL = 1e-9
NU_CLAMP = 1e-9


@dataclass(frozen=True)
class SymplecticSpectrum:
    values: np.ndarray
    source_dim: int

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def symplectic_spectrum(sigma: CovarianceMatrix | np.ndarray, ordering=None) -> SymplecticSpectrum:
    """Symplectic eigenvalues, descending.

    The eigenvalues of ``i Omega sigma`` come in ``+-nu`` pairs. They are
    computed from the Hermitian matrix ``L^T (i Omega) L`` (with
    ``sigma = L L^T``), which has the same spectrum and is numerically tame.
    """
    if isinstance(sigma, CovarianceMatrix):
        data, omega = sigma.data, sigma.omega
    else:
        data = np.asarray(sigma, dtype=float)
        omega = symplectic_form(data.shape[0] // 2, ordering or Ordering.INTERLEAVED)
    if np.max(np.abs(data - data.T)) > 1e-10 * max(1.0, np.max(np.abs(data))):
        raise MalformedStateError("covariance matrix is not symmetric")
    try:
        chol = np.linalg.cholesky(data)
    except np.linalg.LinAlgError as exc:
        raise MalformedStateError("covariance matrix is not positive definite") from exc
    herm = chol.T @ (1j * omega) @ chol
    eig = np.linalg.eigvalsh(herm)
    n = data.shape[0] // 2
    negative, positive = eig[:n], eig[n:]
    scale = max(1.0, float(positive[-1]))
    if np.max(np.abs(positive + negative[::-1])) > PAIRING_TOL * scale:
        raise MalformedStateError("eigenvalues of i*Omega*sigma are not paired as +-nu")
    return SymplecticSpectrum(positive[::-1].copy(), n)


def entropy_function(nu, tol: float = NU_CLAMP):
    """``f(x) = (x+1)/2 log((x+1)/2) - (x-1)/2 log((x-1)/2)`` with ``f(1) = 0``.

    Values in ``[1 - tol, 1)`` are treated as 1; anything lower is unphysical.
    """
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 1.0 - tol):
        raise MalformedStateError(f"symplectic eigenvalue {nu.min():.12g} violates nu >= 1")
    clamped = nu < 1.0
    if np.any(clamped):
        log.debug("clamped %d symplectic eigenvalues to 1", int(clamped.sum()))
    nu = np.maximum(nu, 1.0)
    plus = (nu + 1) / 2
    minus = (nu - 1) / 2
    safe = np.where(minus > 0, minus, 1.0)
    return plus * np.log(plus) - np.where(minus > 0, minus * np.log(safe), 0.0)


def clamp_tolerance(sigma: CovarianceMatrix) -> float:
    """Allowed shortfall of ``nu`` below 1: the fixed clamp plus the state's truncation defect."""
    return NU_CLAMP + 10.0 * sigma.tau_phys


def entropy(sigma: CovarianceMatrix) -> float:
    """Von Neumann entropy (nats).

    Truncated local states can sit a few ``tau_phys`` below the uncertainty
    bound; those eigenvalues count as pure rather than failing.
    """
    nu = symplectic_spectrum(sigma).values
    tol = clamp_tolerance(sigma) if nu[-1] < 1.0 - NU_CLAMP else NU_CLAMP
    return float(np.sum(entropy_function(nu, tol)))


def _det2(blocks: np.ndarray) -> np.ndarray:
    return blocks[..., 0, 0] * blocks[..., 1, 1] - blocks[..., 0, 1] * blocks[..., 1, 0]


def _log_negativity_blocks(s11, s22, s12, full_det, tol: float = 1e-9):
    delta = _det2(s11) + _det2(s22) - 2.0 * _det2(s12)
    disc = delta**2 - 4.0 * full_det
    scale = np.maximum(1.0, delta**2)
    if np.any(disc < -tol * scale):
        raise MalformedStateError("two-mode state has negative discriminant")
    # smaller root of z^2 - delta z + det via the product of roots (no cancellation)
    z2 = 2.0 * full_det / (delta + np.sqrt(np.maximum(disc, 0.0)))
    if np.any(z2 <= 0):
        raise MalformedStateError("two-mode state has non-positive partially transposed spectrum")
    # + 0.0 turns -0.0 (pure pairs, z2 == 1) into 0.0
    return np.maximum(0.0, -0.5 * np.log(z2)) + 0.0


def log_negativity(sigma: CovarianceMatrix | np.ndarray) -> float:
    """Logarithmic negativity of a two-mode (4x4, interleaved) state."""
    data = sigma.to(Ordering.INTERLEAVED).data if isinstance(sigma, CovarianceMatrix) else np.asarray(sigma, float)
    if data.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-mode matrix, got {data.shape}")
    value = _log_negativity_blocks(data[:2, :2], data[2:, 2:], data[:2, 2:], np.linalg.det(data))
    return float(value)


@dataclass(frozen=True)
class NegativityMap:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    values: np.ndarray

    def total(self) -> float:
        return float(np.sum(self.values))

    def argmax(self) -> tuple[int, int]:
        i, j = np.unravel_index(np.argmax(self.values), self.values.shape)
        return self.rows[i], self.cols[j]


def negativity_map(
    sigma: CovarianceMatrix,
    left: Sequence[int],
    right: Sequence[int],
    row_labels: Sequence[int] | None = None,
    col_labels: Sequence[int] | None = None,
) -> NegativityMap:
    """``E_N`` for every pair (left position, right position) of modes in ``sigma``.

    Labels default to 1-based positions within each set.
    """
    left, right = list(left), list(right)
    if set(left) & set(right):
        raise ValueError("left and right mode sets overlap")
    data = sigma.to(Ordering.INTERLEAVED).data
    li = np.array(left)
    ri = np.array(right)

    def blocks(a, b):
        out = np.empty((len(a), len(b), 2, 2))
        for u in range(2):
            for v in range(2):
                out[..., u, v] = data[np.ix_(2 * a + u, 2 * b + v)]
        return out

    s11 = blocks(li, li)[np.arange(len(li)), np.arange(len(li))][:, None]
    s22 = blocks(ri, ri)[np.arange(len(ri)), np.arange(len(ri))][None, :]
    s12 = blocks(li, ri)
    s11 = np.broadcast_to(s11, s12.shape)
    s22 = np.broadcast_to(s22, s12.shape)
    full = np.concatenate(
        [np.concatenate([s11, s12], axis=-1), np.concatenate([np.swapaxes(s12, -1, -2), s22], axis=-1)],
        axis=-2,
    )
    values = _log_negativity_blocks(s11, s22, s12, np.linalg.det(full))
    rows = tuple(row_labels) if row_labels is not None else tuple(range(1, len(left) + 1))
    cols = tuple(col_labels) if col_labels is not None else tuple(range(1, len(right) + 1))
    return NegativityMap(rows, cols, values)


def mutual_information(sigma: CovarianceMatrix, part_a: Sequence[int], part_b: Sequence[int]) -> float:
    """``S(A) + S(B) - S(AB)`` for disjoint mode sets ``part_a`` and ``part_b``."""
    part_a, part_b = list(part_a), list(part_b)
    if set(part_a) & set(part_b):
        raise ValueError("mode sets overlap")
    return (
        entropy(reduce(sigma, part_a))
        + entropy(reduce(sigma, part_b))
        - entropy(reduce(sigma, part_a + part_b))
    )
