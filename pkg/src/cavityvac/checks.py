"""Invariant suite run by ``cavityvac check``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.integrate import quad

from .bogoliubov import BogoliubovTable, wronskian_residual
from .cavity import CavityConfig, Region, local_mode_profile, sinpi
from .diagonalization import bogoliubov_conditions, diagonal_error, williamson
from .entanglement import symplectic_spectrum
from .errors import CavityError
from .gaussian import Ordering, assemble, symplectic_residual

WRONSKIAN_TOL = 1e-3
ORACLE_RTOL = 1e-8
ORACLE_ATOL = 1e-13
ORACLE_MAX_INDEX = 8


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float | None
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "threshold": self.threshold, "passed": self.passed}


def _below(name: str, value: float, threshold: float) -> CheckResult:
    return CheckResult(name, float(value), threshold, bool(value < threshold))


def quadrature_overlap(m: int, n: int, table: BogoliubovTable) -> float:
    """Overlap by adaptive quadrature of the defining integral over the region."""
    cfg, iv = table.cfg, table.interval
    Omega = np.sqrt((np.pi * n / cfg.R) ** 2 + cfg.mu**2)

    def integrand(x):
        return sinpi(n * x / cfg.R) / np.sqrt(cfg.R * Omega) * local_mode_profile(m, x, iv, cfg.mu)

    value, _ = quad(integrand, iv.start, iv.stop, epsabs=1e-14, epsrel=1e-13, limit=400)
    return value


def oracle_error(table: BogoliubovTable, max_index: int = ORACLE_MAX_INDEX) -> float:
    """Largest ``|closed - quad| / (rtol |quad| + atol)``-style excess over a small index block."""
    worst = 0.0
    for m in range(1, min(table.N, max_index) + 1):
        for n in range(1, min(table.M, max_index) + 1):
            ref = quadrature_overlap(m, n, table)
            err = abs(table.V[m - 1, n - 1] - ref) / (abs(ref) + ORACLE_ATOL / ORACLE_RTOL)
            worst = max(worst, err)
    return worst


def run_checks(tables: Mapping[Region, BogoliubovTable], cfg: CavityConfig) -> list[CheckResult]:
    results: list[CheckResult] = []
    for region, table in tables.items():
        tag = region.value
        R1, R2 = wronskian_residual(table)
        results.append(_below(f"wronskian_alpha_alpha[{tag}]", np.max(np.abs(R1)), WRONSKIAN_TOL))
        results.append(_below(f"wronskian_alpha_beta[{tag}]", np.max(np.abs(R2)), WRONSKIAN_TOL))
        results.append(_below(f"overlap_oracle[{tag}]", oracle_error(table), ORACLE_RTOL))

        sigma = assemble([table])
        try:
            diag = williamson(sigma, check=False)
            spectrum = symplectic_spectrum(sigma).values
        except CavityError:
            # a badly truncated state may not even be positive definite
            for name in ("williamson_symplectic", "williamson_diagonal", "spectrum_agreement", "diag_bogoliubov"):
                results.append(CheckResult(f"{name}[{tag}]", float("nan"), None, False))
            continue
        results.append(_below(f"williamson_symplectic[{tag}]", symplectic_residual(diag.S_D, Ordering.BLOCKED), 1e-9))
        results.append(_below(f"williamson_diagonal[{tag}]", diagonal_error(sigma, diag), 1e-8))
        results.append(_below(f"spectrum_agreement[{tag}]", np.max(np.abs(spectrum - diag.nu)), 1e-9))
        r1, r2 = bogoliubov_conditions(diag.zeta, diag.eta)
        results.append(_below(f"diag_bogoliubov[{tag}]", max(r1, r2), 1e-8))

    regions = list(tables)
    for i, a in enumerate(regions):
        for b in regions[i + 1 :]:
            C1, C2 = wronskian_residual(tables[a], tables[b])
            worst = max(np.max(np.abs(C1)), np.max(np.abs(C2)))
            results.append(_below(f"wronskian_cross[{a.value},{b.value}]", worst, WRONSKIAN_TOL))

    sigma_loc = assemble(list(tables.values()))
    results.append(_below("sigma_loc_symmetric", sigma_loc.asymmetry(), 1e-12))
    results.append(CheckResult("tau_phys", sigma_loc.tau_phys, None, True))
    return results
