"""Random Gaussian states for property tests."""

import numpy as np

from cavityvac.gaussian import CovarianceMatrix, Ordering, reorder_matrix


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def random_symplectic(rng, n, squeeze=1.0):
    """Passive * single-mode squeezers * passive, interleaved ordering."""

    def passive():
        U = random_orthogonal(rng, n) @ np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, n))) @ random_orthogonal(rng, n)
        blocked = np.block([[U.real, -U.imag], [U.imag, U.real]])
        return reorder_matrix(blocked, Ordering.BLOCKED, Ordering.INTERLEAVED)

    s = rng.uniform(-squeeze, squeeze, n)
    Z = np.diag(np.ravel(np.column_stack([np.exp(-s), np.exp(s)])))
    return passive() @ Z @ passive()


def random_state(rng, n, squeeze=1.0):
    """``S diag(nu, nu) S^T`` with thermal ``nu >= 1``; returns (sigma, sorted nu)."""
    nu = 1.0 + rng.exponential(0.5, n)
    S = random_symplectic(rng, n, squeeze)
    data = S @ np.diag(np.repeat(nu, 2)) @ S.T
    return CovarianceMatrix(0.5 * (data + data.T)), np.sort(nu)[::-1]


def random_blocked_state(rng, n, squeeze=1.0):
    """q-p uncorrelated state ``(A nu A^T) (+) (A^-T nu A^-1)``."""
    A = random_orthogonal(rng, n) @ np.diag(np.exp(rng.uniform(-squeeze, squeeze, n))) @ random_orthogonal(rng, n)
    nu = 1.0 + rng.exponential(0.5, n)
    Ainv = np.linalg.inv(A)
    Q = A @ np.diag(nu) @ A.T
    P = Ainv.T @ np.diag(nu) @ Ainv
    data = np.zeros((2 * n, 2 * n))
    data[:n, :n], data[n:, n:] = 0.5 * (Q + Q.T), 0.5 * (P + P.T)
    return CovarianceMatrix(data, Ordering.BLOCKED), np.sort(nu)[::-1]
