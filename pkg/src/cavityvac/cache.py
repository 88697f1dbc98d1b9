"""On-disk cache of overlap tables keyed by a content hash of the inputs."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

import numpy as np

from .bogoliubov import BogoliubovTable, build_table
from .cavity import CavityConfig, Partition, Region, ThreeRegion, TwoRegion

log = logging.getLogger(__name__)

CODE_VERSION = "cavityvac-table-1"


def partition_spec(partition: Partition) -> dict:
    if isinstance(partition, TwoRegion):
        return {"kind": "two", "r": float(partition.r)}
    if isinstance(partition, ThreeRegion):
        return {"kind": "three", "A": float(partition.A), "B": float(partition.B), "C": float(partition.C)}
    raise TypeError(f"unknown partition {partition!r}")


def cache_key(cfg: CavityConfig, partition: Partition) -> str:
    """Hex digest identifying a table set; any input change gives a new key."""
    fields = {
        "R": repr(float(cfg.R)),
        "mu": repr(float(cfg.mu)),
        "N": int(cfg.N),
        "M": int(cfg.M),
        "partition": {k: repr(v) if isinstance(v, float) else v for k, v in partition_spec(partition).items()},
        "version": CODE_VERSION,
    }
    blob = json.dumps(fields, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


class TableCache:
    """Directory of ``<key>_<region>.npz`` files. ``hits``/``misses`` count lookups."""

    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory is not None else None
        self.hits = 0
        self.misses = 0

    def _path(self, key: str, region: Region) -> Path:
        return self.directory / f"{key}_{region.value}.npz"

    def _load(self, path: Path, key: str, region: Region, cfg, partition) -> BogoliubovTable | None:
        try:
            with np.load(path, allow_pickle=False) as data:
                if str(data["key"]) != key or str(data["version"]) != CODE_VERSION:
                    raise ValueError("key mismatch")
                V = np.array(data["V"], dtype=float)
                deg = np.array(data["degenerate"], dtype=bool)
        except Exception as exc:  # any unreadable entry is rebuilt
            log.warning("discarding corrupt cache entry %s (%s)", path, exc)
            return None
        if V.shape != (cfg.N, cfg.M) or deg.shape != V.shape or not np.all(np.isfinite(V)):
            log.warning("discarding malformed cache entry %s", path)
            return None
        V.setflags(write=False)
        deg.setflags(write=False)
        return BogoliubovTable(region, partition.regions(cfg.R)[region], cfg, partition, V, deg)

    def _store(self, path: Path, key: str, table: BogoliubovTable) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "wb") as fh:
            np.savez(fh, V=table.V, degenerate=table.degenerate, key=np.array(key), version=np.array(CODE_VERSION))
        os.replace(tmp, path)

    def table(self, region: Region, partition: Partition, cfg: CavityConfig, jobs: int = 1) -> BogoliubovTable:
        if self.directory is None:
            self.misses += 1
            return build_table(region, partition, cfg, jobs)
        key = cache_key(cfg, partition)
        path = self._path(key, region)
        if path.exists():
            table = self._load(path, key, region, cfg, partition)
            if table is not None:
                self.hits += 1
                return table
        self.misses += 1
        table = build_table(region, partition, cfg, jobs)
        self._store(path, key, table)
        return table

    def tables(self, partition: Partition, cfg: CavityConfig, jobs: int = 1) -> dict[Region, BogoliubovTable]:
        return {region: self.table(region, partition, cfg, jobs) for region in partition.regions(cfg.R)}
