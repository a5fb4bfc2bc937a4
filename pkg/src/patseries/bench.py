"""Experiment harness: method x depth x downsampling grids with MSE reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .baselines import LinearForecaster, PsfForecaster
from .data import downsample, load_csv, mackey_glass
from .tree import PatternTreeForecaster
from .validation import check_positive_int, check_series

KNOWN_METHODS = ("pt", "lp", "psf")

# The chaotic trajectory is integrated at dt=0.1 and kept at unit-time
# spacing (every 10th step): that sampling puts one-step errors on the
# scale the estimators are meant to discriminate, instead of the
# near-continuous dt=0.1 cadence where persistence is already tiny.
BENCH_STRIDE = 10


class BenchError(RuntimeError):
    """A grid cell failed; the message names the cell."""


def mse(predictions, truth) -> float:
    """Mean squared difference of two equal-length sequences."""
    p = np.asarray(predictions, dtype=float)
    t = np.asarray(truth, dtype=float)
    if p.shape != t.shape or p.ndim != 1:
        raise ValueError(f"predictions and truth must match in length, got {p.shape} vs {t.shape}")
    if p.size == 0:
        raise ValueError("mse needs at least one prediction")
    d = p - t
    return float(np.mean(d * d))


def persistence_mse(series, depth: int) -> float:
    """MSE of predicting every sample by its predecessor, over the scored range."""
    x = check_series(series, min_length=depth + 2)
    return mse(x[depth:-1], x[depth + 1 :])


def benchmark_series(source: str = "mackey-glass", n: int = 10000) -> np.ndarray:
    """Resolve a data source spec: ``mackey-glass`` or ``csv:<path>``."""
    if source == "mackey-glass":
        check_positive_int(n, "n")
        raw = mackey_glass(n * BENCH_STRIDE)
        return downsample(raw, BENCH_STRIDE)
    if source.startswith("csv:"):
        return load_csv(source[4:])
    raise ValueError(f"unknown data source {source!r} (expected 'mackey-glass' or 'csv:<path>')")


def make_forecaster(method: str, depth: int, n_labels: int = 5):
    if method == "pt":
        return PatternTreeForecaster(depth=depth)
    if method == "lp":
        return LinearForecaster(order=depth)
    if method == "psf":
        return PsfForecaster(window=depth, n_labels=n_labels)
    raise ValueError(f"unknown method {method!r} (expected one of {KNOWN_METHODS})")


@dataclass(frozen=True)
class BenchConfig:
    source: str = "mackey-glass"
    methods: tuple[str, ...] = KNOWN_METHODS
    depths: tuple[int, ...] = (1, 2, 3, 4, 5)
    downsample_factors: tuple[int, ...] = (1,)
    n: int = 10000
    n_labels: int = 5

    def __post_init__(self) -> None:
        if not self.methods or not self.depths:
            raise ValueError("need at least one method and one depth")
        unknown = [m for m in self.methods if m not in KNOWN_METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; expected subset of {KNOWN_METHODS}")
        for d in self.depths:
            check_positive_int(d, "depth")
        for f in self.downsample_factors:
            check_positive_int(f, "downsample factor")


@dataclass(frozen=True)
class BenchRow:
    method: str
    depth: int
    downsample: int
    n_estimated: int
    mse: float
    runtime_ms: float


@dataclass
class BenchResult:
    rows: list[BenchRow] = field(default_factory=list)

    def sorted_rows(self) -> list[BenchRow]:
        return sorted(self.rows, key=lambda r: (r.downsample, r.depth, r.method))

    def cell(self, method: str, depth: int, downsample: int = 1) -> BenchRow:
        for row in self.rows:
            if (row.method, row.depth, row.downsample) == (method, depth, downsample):
                return row
        raise KeyError(f"no cell for method={method} depth={depth} downsample={downsample}")

    def to_csv(self) -> str:
        lines = ["depth,method,downsample,mse,n,runtime_ms"]
        for r in self.sorted_rows():
            lines.append(
                f"{r.depth},{r.method},{r.downsample},{r.mse!r},{r.n_estimated},{r.runtime_ms:.3f}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "rows": [
                {
                    "method": r.method,
                    "depth": r.depth,
                    "downsample": r.downsample,
                    "n_estimated": r.n_estimated,
                    "mse": r.mse,
                    "runtime_ms": r.runtime_ms,
                }
                for r in self.sorted_rows()
            ]
        }
        return json.dumps(payload, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "BenchResult":
        payload = json.loads(text)
        rows = [
            BenchRow(
                method=r["method"],
                depth=int(r["depth"]),
                downsample=int(r["downsample"]),
                n_estimated=int(r["n_estimated"]),
                mse=float(r["mse"]),
                runtime_ms=float(r["runtime_ms"]),
            )
            for r in payload["rows"]
        ]
        return cls(rows=rows)

    def to_markdown(self) -> str:
        rows = self.sorted_rows()
        methods = sorted({r.method for r in rows}, key=KNOWN_METHODS.index)
        factors = sorted({r.downsample for r in rows})
        blocks = []
        for factor in factors:
            depths = sorted({r.depth for r in rows if r.downsample == factor})
            lines = []
            if len(factors) > 1:
                lines.append(f"Downsample factor {factor}:")
                lines.append("")
            lines.append("| Depth/Order | " + " | ".join(methods) + " |")
            lines.append("|" + "---|" * (len(methods) + 1))
            by_key = {(r.method, r.depth): r for r in rows if r.downsample == factor}
            for d in depths:
                cells = []
                for m in methods:
                    r = by_key.get((m, d))
                    cells.append(f"{r.mse:.4g}" if r is not None else "-")
                lines.append(f"| {d} | " + " | ".join(cells) + " |")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"


def run_bench(cfg: BenchConfig) -> BenchResult:
    """Run every (method, depth, factor) cell of the grid.

    Deterministic given the config; cell failures are re-raised with the
    failing cell named.
    """
    base = benchmark_series(cfg.source, cfg.n)
    result = BenchResult()
    for factor in cfg.downsample_factors:
        series = downsample(base, factor)
        for depth in cfg.depths:
            for method in cfg.methods:
                t0 = time.perf_counter()
                try:
                    forecaster = make_forecaster(method, depth, cfg.n_labels)
                    forecaster.fit(series)
                except Exception as exc:
                    raise BenchError(
                        f"cell method={method} depth={depth} downsample={factor} failed: {exc}"
                    ) from exc
                elapsed_ms = (time.perf_counter() - t0) * 1e3
                result.rows.append(
                    BenchRow(
                        method=method,
                        depth=depth,
                        downsample=factor,
                        n_estimated=forecaster.n_estimated_,
                        mse=forecaster.mse_,
                        runtime_ms=elapsed_ms,
                    )
                )
    return result


def emit_table(result: BenchResult, fmt: str, path) -> None:
    """Write a result in ``csv``, ``json``, or ``markdown`` form."""
    if not result.rows:
        raise ValueError("cannot emit an empty result")
    renderers = {"csv": result.to_csv, "json": result.to_json, "markdown": result.to_markdown}
    if fmt not in renderers:
        raise ValueError(f"format must be one of {sorted(renderers)}, got {fmt!r}")
    Path(path).write_text(renderers[fmt](), encoding="utf-8")
