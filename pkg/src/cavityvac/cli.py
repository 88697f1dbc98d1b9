"""Command-line driver: ``cavityvac {spectrum,negativity-map,profile,check}``.

Exit codes: 0 success, 1 usage error, 2 malformed state or failed check,
3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .bogoliubov import particle_spectrum, wronskian_residual
from .cache import TableCache, partition_spec
from .cavity import CavityConfig, Partition, Region, ThreeRegion, TwoRegion
from .checks import WRONSKIAN_TOL, run_checks
from .diagonalization import local_diagonalize, spatial_profile, williamson
from .entanglement import LOG_BASE, entropy, negativity_map, symplectic_spectrum
from .errors import CavityError
from .export import fmt, write_json, write_table
from .gaussian import assemble, positions

log = logging.getLogger("cavityvac")

EXIT_OK, EXIT_USAGE, EXIT_STATE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    R: float = 1.0
    mu: float = 0.0
    split: float | None = None
    three: tuple[float, float, float] | None = None
    n_local: int = 200
    m_global: int | None = None
    grid: int = 1001
    times: list[float] = field(default_factory=lambda: [0.0])
    out: Path = Path("out")
    format: str = "csv"
    cache_dir: Path | None = None
    jobs: int = 1
    mode_index: int = 1
    basis: str = "u"
    region: str | None = None

    def cavity(self) -> CavityConfig:
        try:
            return CavityConfig(self.R, self.mu, self.n_local, self.m_global)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def partition(self) -> Partition:
        if self.three is not None and self.split is not None:
            raise UsageError("--split and --three are mutually exclusive")
        part: Partition
        if self.three is not None:
            part = ThreeRegion(*self.three)
        else:
            part = TwoRegion(self.R / 2 if self.split is None else self.split)
        try:
            part.regions(self.R)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return part

    def meta(self) -> dict:
        cfg = self.cavity()
        return {
            "R": cfg.R,
            "mu": cfg.mu,
            "N": cfg.N,
            "M": cfg.M,
            "partition": partition_spec(self.partition()),
            "log_base": LOG_BASE,
            "version": __version__,
        }


def _triple(text: str) -> tuple[float, float, float]:
    parts = [float(p) for p in text.replace(" ", "").split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected A,B,C")
    return tuple(parts)  # type: ignore[return-value]


# flag name -> (dest, type) for flags that may also come from a config file
_CONFIG_KEYS = {
    "R": ("R", float),
    "mu": ("mu", float),
    "split": ("split", float),
    "three": ("three", _triple),
    "n-local": ("n_local", int),
    "m-global": ("m_global", int),
    "grid": ("grid", int),
    "time": ("times", float),
    "out": ("out", Path),
    "format": ("format", str),
    "cache-dir": ("cache_dir", Path),
    "jobs": ("jobs", int),
    "mode-index": ("mode_index", int),
    "basis": ("basis", str),
    "region": ("region", str),
}


def read_config_file(path: Path) -> dict:
    """Parse flat ``key=value`` lines (``#`` comments, blank lines ignored)."""
    values: dict = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        dest, conv = _CONFIG_KEYS[key]
        try:
            if dest == "times":
                values[dest] = [float(v) for v in value.split(",") if v.strip()]
            else:
                values[dest] = conv(value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("cavity and run options")
    g.add_argument("--config", type=Path, help="key=value file; flags override it")
    g.add_argument("--R", type=float, help="cavity length (default 1)")
    g.add_argument("--mu", type=float, help="field mass (default 0)")
    g.add_argument("--split", type=float, help="two-region split point r (default R/2)")
    g.add_argument("--three", type=_triple, metavar="A,B,C", help="three-region sizes")
    g.add_argument("--n-local", type=int, dest="n_local", help="local modes per region (default 200)")
    g.add_argument("--m-global", type=int, dest="m_global", help="global modes in sums (default 20*N)")
    g.add_argument("--grid", type=int, help="profile grid points (default 1001)")
    g.add_argument("--time", type=float, action="append", dest="times", help="profile time (repeatable)")
    g.add_argument("--out", type=Path, help="output directory (default ./out)")
    g.add_argument("--format", choices=["csv", "json"])
    g.add_argument("--cache-dir", type=Path, dest="cache_dir", help="overlap table cache directory")
    g.add_argument("--jobs", type=int, help="worker threads for table construction")
    g.add_argument("--mode-index", type=int, dest="mode_index", help="v-mode index for profiles (default 1)")
    g.add_argument("--basis", choices=["u", "v"], help="mode basis for negativity maps (default u)")
    g.add_argument("--region", choices=[r.value for r in Region if r != Region.GLOBAL])
    g.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="cavityvac", description="Local structure of the vacuum in a Dirichlet cavity.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="symplectic and particle spectra per region")
    sub.add_parser("negativity-map", parents=[common], help="mode-mode logarithmic negativity map")
    sub.add_parser("profile", parents=[common], help="|v_l(x, t)| spatial profiles")
    sub.add_parser("check", parents=[common], help="run the invariant suite")
    return parser


def resolve(args: argparse.Namespace) -> RunConfig:
    settings: dict = {}
    if args.config is not None:
        settings.update(read_config_file(args.config))
    for dest, _ in _CONFIG_KEYS.values():
        value = getattr(args, dest, None)
        if value is not None:
            settings[dest] = value
    run = RunConfig(**settings)
    if run.format not in ("csv", "json"):
        raise UsageError(f"unknown format {run.format!r}")
    if run.basis not in ("u", "v"):
        raise UsageError(f"unknown basis {run.basis!r}")
    if run.jobs < 1 or run.grid < 2 or run.mode_index < 1:
        raise UsageError("--jobs >= 1, --grid >= 2 and --mode-index >= 1 are required")
    return run


def _tables(run: RunConfig):
    cfg = run.cavity()
    cache = TableCache(run.cache_dir)
    tables = cache.tables(run.partition(), cfg, run.jobs)
    log.info("tables: %d cache hits, %d misses", cache.hits, cache.misses)
    return cfg, tables


def _warn_convergence(tables) -> dict:
    residuals = {}
    for region, table in tables.items():
        R1, _ = wronskian_residual(table)
        residuals[region.value] = float(np.max(np.abs(R1)))
        if residuals[region.value] > WRONSKIAN_TOL:
            log.warning(
                "Bogoliubov condition residual %.3g in region %s exceeds %.0e; increase --m-global",
                residuals[region.value],
                region.value,
                WRONSKIAN_TOL,
            )
    return residuals


def cmd_spectrum(run: RunConfig) -> list[Path]:
    cfg, tables = _tables(run)
    meta = run.meta()
    meta["wronskian_residual"] = _warn_convergence(tables)
    rows = []
    entropies = {}
    defects = {}
    for region, table in tables.items():
        sigma = assemble([table])
        nu = symplectic_spectrum(sigma).values
        n_mean = particle_spectrum(table)
        entropies[region.value] = entropy(sigma)
        defects[region.value] = sigma.tau_phys
        for m in range(cfg.N):
            rows.append([region.value, m + 1, float(nu[m]), float(n_mean[m])])
    meta["entropy"] = entropies
    meta["tau_phys"] = defects
    path = write_table(run.out / "spectrum", run.format, ["region", "index", "nu", "n_mean"], rows, meta)
    return [path]


def _pair_regions(part: Partition) -> tuple[Region, Region]:
    return (Region.LEFT, Region.RIGHT) if isinstance(part, TwoRegion) else (Region.A, Region.C)


def cmd_negativity_map(run: RunConfig) -> list[Path]:
    cfg, tables = _tables(run)
    part = run.partition()
    first, second = _pair_regions(part)
    meta = run.meta()
    meta["basis"] = run.basis
    meta["pair"] = [first.value, second.value]
    meta["wronskian_residual"] = _warn_convergence(tables)
    sigma = assemble([tables[first], tables[second]])
    left, right = positions(sigma, first), positions(sigma, second)
    if run.basis == "v":
        sigma, _ = local_diagonalize(sigma, [left, right])
    emap = negativity_map(sigma, left, right)
    rows = [
        [m, n, float(emap.values[i, j])] for i, m in enumerate(emap.rows) for j, n in enumerate(emap.cols)
    ]
    meta["total"] = emap.total()
    path = write_table(run.out / f"negativity_{run.basis}", run.format, ["m", "n", "E_N"], rows, meta)
    return [path]


def cmd_profile(run: RunConfig) -> list[Path]:
    cfg, tables = _tables(run)
    part = run.partition()
    default = Region.LEFT if isinstance(part, TwoRegion) else Region.A
    region = Region(run.region) if run.region else default
    if region not in tables:
        raise UsageError(f"region {region.value} is not part of this partition")
    if run.mode_index > cfg.N:
        raise UsageError(f"--mode-index {run.mode_index} exceeds N={cfg.N}")
    if any(t < 0 for t in run.times):
        raise UsageError("profile times must be >= 0 (post-slam)")
    table = tables[region]
    diag = williamson(assemble([table]))
    iv = table.interval
    grid = np.linspace(iv.start, iv.stop, run.grid)
    paths = []
    for t in run.times:
        prof = spatial_profile(run.mode_index, grid, t, diag, iv, cfg.mu)
        meta = run.meta()
        meta.update({"region": region.value, "mode_index": run.mode_index, "t": t, "nu": float(diag.nu[run.mode_index - 1])})
        stem = run.out / f"profile_{region.value}_v{run.mode_index}_t{fmt(t)}"
        rows = [[float(x), float(v)] for x, v in zip(grid, prof)]
        paths.append(write_table(stem, run.format, ["x", "abs_v"], rows, meta))
    return paths


def cmd_check(run: RunConfig) -> tuple[list[Path], bool]:
    cfg, tables = _tables(run)
    results = run_checks(tables, cfg)
    ok = all(r.passed for r in results)
    payload = {"meta": run.meta(), "passed": ok, "checks": [r.as_dict() for r in results]}
    path = write_json(run.out / "check.json", payload)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name} = {fmt(r.value)}" + (f" (< {r.threshold:g})" if r.threshold is not None else ""))
    return [path], ok


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        run = resolve(args)
        if args.command == "spectrum":
            paths = cmd_spectrum(run)
        elif args.command == "negativity-map":
            paths = cmd_negativity_map(run)
        elif args.command == "profile":
            paths = cmd_profile(run)
        else:
            paths, ok = cmd_check(run)
            if not ok:
                for p in paths:
                    print(p)
                return EXIT_STATE
    except UsageError as exc:
        print(f"cavityvac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CavityError as exc:
        print(f"cavityvac: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_STATE
    except OSError as exc:
        print(f"cavityvac: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for p in paths:
        print(p)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
