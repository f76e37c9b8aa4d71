"""One- and two-axis parameter sweeps with CSV/JSON export.

Grid abscissae are ``min + i (max - min)/(count - 1)`` with the last point
pinned to ``max``.  Cells are independent; with ``workers > 1`` they are
farmed out to a process pool but always written back by index, so the output
does not depend on scheduling.
"""

from __future__ import annotations

import csv
import datetime as _dt
import json
import math
import os
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import DomainError, SeriesNotConverged
from .otto import run_otto_cycle
from .spectrum import PotentialSpec, c_q, energy_level
from .stirling import CalcMode, run_cycle
from .thermo import DEFAULT_TOL, ThermalPair

CYCLE_PARAMS = {
    "stirling": ("q", "c_red", "th", "tc"),
    "otto": ("q", "c_red", "th", "tc", "r"),
}
VALUE_COLUMNS = ("q_in", "q_out", "w_net", "eta", "cop", "mode", "flag")
FAILED = "Failed"


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 2:
            raise DomainError(f"axis {self.name!r} needs count >= 2, got {self.count}")
        if not (self.min < self.max):
            raise DomainError(f"axis {self.name!r} needs min < max, got {self.min}, {self.max}")

    @classmethod
    def parse(cls, text: str) -> Axis:
        """``name:min:max:count``, e.g. ``th:1:20:96``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise DomainError(f"axis must look like name:min:max:count, got {text!r}")
        name, lo, hi, n = parts
        try:
            return cls(name.strip(), float(lo), float(hi), int(n))
        except ValueError as exc:
            raise DomainError(f"bad axis {text!r}: {exc}") from exc

    def values(self) -> list[float]:
        step = (self.max - self.min) / (self.count - 1)
        return [self.min + i * step for i in range(self.count - 1)] + [self.max]

    def to_dict(self) -> dict:
        return {"name": self.name, "min": self.min, "max": self.max, "count": self.count}


@dataclass(frozen=True)
class GridSpec:
    cycle: str
    axis1: Axis
    axis2: Axis | None = None
    fixed: Mapping[str, float] = field(default_factory=dict)
    calc_mode: CalcMode = CalcMode.AS_PRINTED
    tol: float = DEFAULT_TOL
    appendix_sign: bool = False

    def __post_init__(self) -> None:
        if self.cycle not in CYCLE_PARAMS:
            raise DomainError(f"cycle must be one of {sorted(CYCLE_PARAMS)}, got {self.cycle!r}")
        object.__setattr__(self, "calc_mode", CalcMode(self.calc_mode))
        object.__setattr__(self, "fixed", dict(self.fixed))
        required = set(CYCLE_PARAMS[self.cycle])
        swept = [a.name for a in self.axes]
        if len(set(swept)) != len(swept):
            raise DomainError("the two axes must sweep different parameters")
        for name in swept:
            if name not in required:
                raise DomainError(f"{self.cycle} cannot sweep {name!r}")
            if name in self.fixed:
                raise DomainError(f"{name!r} is both swept and fixed")
        for name in self.fixed:
            if name not in required:
                raise DomainError(f"{self.cycle} has no parameter {name!r}")
        missing = required - set(swept) - set(self.fixed)
        if missing:
            raise DomainError(f"parameters neither swept nor fixed: {sorted(missing)}")

    @property
    def axes(self) -> tuple[Axis, ...]:
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)

    @property
    def columns(self) -> tuple[str, ...]:
        return CYCLE_PARAMS[self.cycle]

    def points(self) -> list[dict[str, float]]:
        """Parameter dicts in row-major order (axis1 outer)."""
        rows = self.axis1.values()
        cols = self.axis2.values() if self.axis2 is not None else [None]
        out = []
        for v1 in rows:
            for v2 in cols:
                p = dict(self.fixed)
                p[self.axis1.name] = v1
                if self.axis2 is not None:
                    p[self.axis2.name] = v2
                out.append({k: float(p[k]) for k in self.columns})
        return out

    def to_dict(self) -> dict:
        return {
            "cycle": self.cycle,
            "axis1": self.axis1.to_dict(),
            "axis2": None if self.axis2 is None else self.axis2.to_dict(),
            "fixed": {k: self.fixed[k] for k in sorted(self.fixed)},
            "calc_mode": self.calc_mode.value,
            "tol": self.tol,
            "appendix_sign": self.appendix_sign,
        }


@dataclass(frozen=True)
class Cell:
    params: Mapping[str, float]
    q_in: float
    q_out: float
    w_net: float
    eta: float
    cop: float | None
    mode: str
    flag: str | None = None

    @property
    def failed(self) -> bool:
        return self.mode == FAILED

    def to_dict(self) -> dict:
        d = dict(self.params)
        for k in VALUE_COLUMNS:
            d[k] = getattr(self, k)
        return d


@dataclass(frozen=True)
class _Run:
    grid: GridSpec
    cells: list[Cell]
    provenance: dict

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    @property
    def failures(self) -> int:
        return sum(c.failed for c in self.cells)


class Series(_Run):
    """Ordered records of a one-axis sweep."""


class ModeMap(_Run):
    """Row-major cells of a two-axis sweep; index = i * count2 + j."""

    def mode_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for c in self.cells:
            counts[c.mode] = counts.get(c.mode, 0) + 1
        return counts

    def mode_grid(self) -> list[list[str]]:
        n2 = self.grid.axis2.count
        return [[c.mode for c in self.cells[i : i + n2]] for i in range(0, len(self.cells), n2)]


def _failed_cell(p: Mapping[str, float], reason: str) -> Cell:
    nan = math.nan
    return Cell(p, nan, nan, nan, nan, nan, FAILED, reason)


def evaluate_point(grid: GridSpec, p: Mapping[str, float]) -> Cell:
    try:
        pair = ThermalPair(p["th"], p["tc"])
        if grid.cycle == "stirling":
            res = run_cycle(p["q"], p["c_red"], pair, grid.calc_mode, grid.tol, grid.appendix_sign)
            cop = res.cop
        else:
            res = run_otto_cycle(p["q"], p["c_red"], pair, p["r"], grid.tol)
            cop = None
    except SeriesNotConverged:
        return _failed_cell(p, "non_convergence")
    except OverflowError:
        return _failed_cell(p, "overflow")
    except DomainError:
        return _failed_cell(p, "domain")
    flag = None
    if math.isnan(res.eta) or (cop is not None and math.isnan(cop)):
        flag = "degenerate_ratio"
    return Cell(p, res.q_in, res.q_out, res.w_net, res.eta, cop, res.mode.value, flag)


def _evaluate_chunk(grid: GridSpec, chunk: Sequence[Mapping[str, float]]) -> list[Cell]:
    return [evaluate_point(grid, p) for p in chunk]


def _evaluate_all(grid: GridSpec, workers: int) -> list[Cell]:
    points = grid.points()
    if workers <= 1 or len(points) < 2:
        return _evaluate_chunk(grid, points)
    size = max(1, math.ceil(len(points) / (4 * workers)))
    chunks = [points[i : i + size] for i in range(0, len(points), size)]
    cells: list[Cell] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_evaluate_chunk, [grid] * len(chunks), chunks):
            cells.extend(part)
    return cells


def _provenance(grid: GridSpec) -> dict:
    return {
        "tol": grid.tol,
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }


def run_series(grid: GridSpec, workers: int = 1) -> Series:
    if grid.axis2 is not None:
        raise DomainError("run_series takes a one-axis grid; use run_map")
    return Series(grid, _evaluate_all(grid, workers), _provenance(grid))


def run_map(grid: GridSpec, workers: int = 1) -> ModeMap:
    if grid.axis2 is None:
        raise DomainError("run_map takes a two-axis grid; use run_series")
    return ModeMap(grid, _evaluate_all(grid, workers), _provenance(grid))


def spectrum_series(
    template: PotentialSpec, q_values: Iterable[float], n_max: int
) -> list[dict[str, float]]:
    """Level table E_n/k_B (and the gap to n+1) for each q, n = 1..n_max."""
    rows = []
    for q in q_values:
        spec = template.with_q(q)
        levels = [energy_level(n, spec).value for n in range(1, n_max + 2)]
        for n in range(1, n_max + 1):
            rows.append(
                {
                    "q": float(q),
                    "n": n,
                    "c_q": c_q(spec),
                    "energy": levels[n - 1],
                    "gap": levels[n] - levels[n - 1],
                }
            )
    return rows


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def export(result: Series | ModeMap | Sequence[Mapping], fmt: str, destination: str | os.PathLike) -> Path:
    """Write a sweep to ``destination`` as CSV or JSON and return the path.

    A plain sequence of dicts (e.g. :func:`spectrum_series` rows) is written
    with its own keys as columns; JSON then carries ``spec`` and
    ``provenance`` as null.
    """
    fmt = fmt.lower()
    if fmt not in ("csv", "json"):
        raise DomainError(f"export format must be csv or json, got {fmt!r}")
    path = Path(destination)
    if isinstance(result, _Run):
        columns = list(result.grid.columns) + list(VALUE_COLUMNS)
        rows = [c.to_dict() for c in result.cells]
        spec, prov = result.grid.to_dict(), result.provenance
    else:
        rows = [dict(r) for r in result]
        columns = list(rows[0]) if rows else []
        spec = prov = None
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            if fmt == "csv":
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(columns)
                for r in rows:
                    writer.writerow([_fmt(r[k]) for k in columns])
            else:
                doc = {
                    "spec": spec,
                    "provenance": prov,
                    "cells": [{k: _json_safe(r[k]) for k in columns} for r in rows],
                }
                json.dump(doc, fh, indent=1, allow_nan=False)
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {path}: {exc.strerror or exc}") from exc
    return path
