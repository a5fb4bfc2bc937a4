"""Shared machinery for one-step-ahead forecasters evaluated online."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from sklearn.base import BaseEstimator

from .validation import check_series


@dataclass
class EstimationReport:
    """Per-step predictions and summary error for one method/depth run.

    ``target_index[k]`` is the 0-based position of the k-th predicted
    sample; ``depth_used[k] == 0`` marks a persistence fallback.
    """

    method: str
    depth: int
    n: int
    n_estimated: int
    mse: float
    decisions: dict[str, int]
    target_index: np.ndarray = field(repr=False)
    predictions: np.ndarray = field(repr=False)
    truths: np.ndarray = field(repr=False)
    depth_used: np.ndarray = field(repr=False)

    @property
    def errors(self) -> np.ndarray:
        return self.predictions - self.truths

    def to_dict(self, verbose: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "method": self.method,
            "depth": self.depth,
            "n": self.n,
            "n_estimated": self.n_estimated,
            "mse": self.mse,
            "decisions": dict(self.decisions),
        }
        if verbose:
            out["per_step"] = [
                {
                    "i": int(i),
                    "x": float(x),
                    "x_hat": float(xh),
                    "depth_used": int(du),
                }
                for i, x, xh, du in zip(
                    self.target_index, self.truths, self.predictions, self.depth_used
                )
            ]
        return out


class OnlineForecaster(BaseEstimator):
    """Base class for streaming one-step-ahead forecasters.

    ``fit(series)`` replays the series in arrival order: after a warmup of
    ``horizon`` samples, each remaining sample is predicted before it is
    consumed.  Subclasses implement the streaming state; the scored range
    is identical across methods at matching depth/order so reported MSEs
    are directly comparable.
    """

    method = "base"

    def _horizon(self) -> int:
        raise NotImplementedError

    def _begin(self, head: np.ndarray) -> None:
        """Consume the first ``horizon`` samples."""
        raise NotImplementedError

    def _consume(self, i: int, x: float) -> None:
        """Consume sample ``x`` at position ``i``."""
        raise NotImplementedError

    def _forecast(self) -> tuple[float, int]:
        """Predict the next sample; returns (x_hat, depth_used)."""
        raise NotImplementedError

    def _min_series_length(self, horizon: int) -> int:
        return horizon + 2

    def fit(self, series):
        horizon = self._horizon()
        x = check_series(series, min_length=self._min_series_length(horizon))
        n = x.size
        self._begin(x[:horizon])
        m = n - 1 - horizon
        preds = np.empty(m)
        used = np.empty(m, dtype=np.int64)
        n_up = n_down = n_fallback = 0
        for i in range(horizon, n - 1):
            self._consume(i, float(x[i]))
            x_hat, depth_used = self._forecast()
            k = i - horizon
            preds[k] = x_hat
            used[k] = depth_used
            if depth_used == 0:
                n_fallback += 1
            elif x_hat > x[i]:
                n_up += 1
            else:
                n_down += 1
        self._consume(n - 1, float(x[n - 1]))

        targets = np.arange(horizon + 1, n, dtype=np.int64)
        truths = x[horizon + 1 :]
        errors = preds - truths
        self.n_ = n
        self.n_estimated_ = m
        self.predictions_ = preds
        self.target_index_ = targets
        self.truths_ = truths
        self.depth_used_ = used
        self.mse_ = float(np.mean(errors * errors))
        self.decisions_ = {"up": n_up, "down": n_down, "fallback": n_fallback}
        self.report_ = EstimationReport(
            method=self.method,
            depth=horizon,
            n=n,
            n_estimated=m,
            mse=self.mse_,
            decisions=self.decisions_,
            target_index=targets,
            predictions=preds,
            truths=truths,
            depth_used=used,
        )
        return self

    def predict(self) -> float:
        """Forecast the sample following everything consumed so far."""
        if not hasattr(self, "n_"):
            raise ValueError("call fit() before predict()")
        return self._forecast()[0]
