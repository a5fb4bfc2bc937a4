"""Comparison forecasters: linear prediction and pattern-sequence matching.

Both run under the same online protocol as the pattern tree and are scored
over the identical prediction range at matching order, so reported MSEs
are directly comparable.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .base import OnlineForecaster
from .validation import check_positive_int

LP_MODES = ("nlms", "ls")


class LinearForecaster(OnlineForecaster):
    """One-step linear prediction from the last ``order`` samples.

    Two fitting modes:

    * ``"nlms"`` (default) -- normalized least-mean-squares adaptation of
      the lag coefficients, initialized at the persistence solution
      (weight 1 on the newest lag).  Step size ``mu`` in (0, 2); updates
      are scale-free, so the filter is stable on data of any magnitude.
    * ``"ls"`` -- least squares with intercept over past rows, either
      expanding (``window=None``) or over the most recent ``window`` rows.
      ``ridge`` penalizes the lag coefficients (never the intercept) to
      stabilize singular windows; persistence is used until
      ``min_history`` rows exist (default ``2 * (order + 1)``).
    """

    method = "lp"

    def __init__(
        self,
        order: int = 1,
        mode: str = "nlms",
        mu: float = 0.05,
        ridge: float = 1e-8,
        window: int | None = None,
        min_history: int | None = None,
    ):
        self.order = order
        self.mode = mode
        self.mu = mu
        self.ridge = ridge
        self.window = window
        self.min_history = min_history

    def _horizon(self) -> int:
        return check_positive_int(self.order, "order")

    def _min_series_length(self, horizon: int) -> int:
        return horizon + 3

    def _begin(self, head: np.ndarray) -> None:
        if self.mode not in LP_MODES:
            raise ValueError(f"mode must be one of {LP_MODES}, got {self.mode!r}")
        if self.ridge < 0:
            raise ValueError(f"ridge must be nonnegative, got {self.ridge}")
        p = self.order
        self._lags = list(head[-p:][::-1])  # newest first
        self._min_rows = (
            check_positive_int(self.min_history, "min_history")
            if self.min_history is not None
            else 2 * (p + 1)
        )
        if self.mode == "nlms":
            if not 0.0 < self.mu < 2.0:
                raise ValueError(f"mu must be in (0, 2), got {self.mu}")
            self._w = np.zeros(p)
            self._w[0] = 1.0
        else:
            self._rows_seen = 0
            if self.window is None:
                self._gram = np.zeros((p + 1, p + 1))
                self._moment = np.zeros(p + 1)
            else:
                check_positive_int(self.window, "window")
                self._row_feats: list[np.ndarray] = []
                self._row_targets: list[float] = []

    def _consume(self, i: int, x: float) -> None:
        # the arrival of x completes one training row: the lags ending at
        # i-1 paired with target x
        p = self.order
        feats = np.asarray(self._lags)
        if self.mode == "nlms":
            err = x - float(self._w @ feats)
            power = float(feats @ feats)
            if power > 0.0:
                self._w = self._w + self.mu * err * feats / power
        else:
            row = np.concatenate(([1.0], feats))
            if self.window is None:
                self._gram += np.outer(row, row)
                self._moment += row * x
            else:
                self._row_feats.append(row)
                self._row_targets.append(x)
                if len(self._row_feats) > self.window:
                    self._row_feats.pop(0)
                    self._row_targets.pop(0)
            self._rows_seen += 1
        self._lags.insert(0, x)
        del self._lags[p:]

    def _solve_ls(self) -> np.ndarray:
        p = self.order
        if self.window is None:
            gram = self._gram.copy()
            moment = self._moment
        else:
            feats = np.asarray(self._row_feats)
            targets = np.asarray(self._row_targets)
            gram = feats.T @ feats
            moment = feats.T @ targets
        if self.ridge > 0:
            idx = np.arange(1, p + 1)
            gram[idx, idx] += self.ridge
            try:
                return np.linalg.solve(gram, moment)
            except np.linalg.LinAlgError:
                pass
        return np.linalg.lstsq(gram, moment, rcond=None)[0]

    def _forecast(self) -> tuple[float, int]:
        p = self.order
        feats = np.asarray(self._lags)
        if self.mode == "nlms":
            return float(self._w @ feats), p
        if self._rows_seen < self._min_rows:
            return self._lags[0], 0
        coef = self._solve_ls()
        return float(coef[0] + coef[1:] @ feats), p


def lp_run_online(series, order: int, **kwargs):
    """Run linear prediction online and return its report."""
    return LinearForecaster(order=order, **kwargs).fit(series).report_


def _labels_from_sorted(order: np.ndarray, values: np.ndarray, n_labels: int) -> np.ndarray:
    ranks = np.searchsorted(order, values, side="left")
    return (n_labels * ranks) // values.size


def equal_frequency_labels(values: np.ndarray, n_labels: int) -> np.ndarray:
    """Rank-based equal-frequency labels in {0, ..., n_labels - 1}.

    Ties share a rank, so repeated values always get the same label and
    fewer than ``n_labels`` distinct values simply merge bins.  Labels are
    invariant under any strictly increasing transform of the values.
    """
    return _labels_from_sorted(np.sort(values), values, n_labels)


def _matching_positions(labels: np.ndarray, window: int) -> np.ndarray:
    """Positions whose label window equals the final one (final excluded)."""
    m = labels.size
    wins = sliding_window_view(labels, window)
    hits = np.all(wins == labels[m - window :], axis=1)
    positions = np.nonzero(hits)[0] + window - 1
    return positions[positions < m - 1]


def match_positions(values: np.ndarray, window: int, n_labels: int) -> np.ndarray:
    """Past positions whose label window equals the most recent one.

    Labels are recomputed over all of ``values``; a position ``t`` matches
    when the labels at ``t-window+1 .. t`` equal those at the end of the
    array.  The final position itself is excluded.
    """
    m = values.size
    if window < 1 or m < window + 1:
        return np.empty(0, dtype=np.int64)
    return _matching_positions(equal_frequency_labels(values, n_labels), window)


class PsfForecaster(OnlineForecaster):
    """Pattern-sequence forecasting adapted to a streaming setting.

    At every step the samples seen so far are labeled by equal-frequency
    binning (``n_labels`` bins, recomputed from scratch so the history is
    built iteratively), the most recent ``window`` labels are matched
    against all earlier label windows, and the prediction steps by the
    mean change that followed the matches.  A miss shrinks the window by
    one and retries; window 0 falls back to persistence.
    """

    method = "psf"

    def __init__(self, window: int = 1, n_labels: int = 5):
        self.window = window
        self.n_labels = n_labels

    def _horizon(self) -> int:
        return check_positive_int(self.window, "window")

    def _min_series_length(self, horizon: int) -> int:
        return horizon + 3

    def _begin(self, head: np.ndarray) -> None:
        if int(self.n_labels) < 2:
            raise ValueError(f"n_labels must be >= 2, got {self.n_labels}")
        self._buf = np.empty(max(64, 2 * head.size))
        self._buf[: head.size] = head
        self._n = head.size
        # values kept sorted incrementally; one insert beats a fresh sort
        # at every step
        self._sorted = np.sort(head)

    def _consume(self, i: int, x: float) -> None:
        if self._n == self._buf.size:
            grown = np.empty(2 * self._buf.size)
            grown[: self._n] = self._buf
            self._buf = grown
        self._buf[self._n] = x
        self._n += 1
        self._sorted = np.insert(self._sorted, np.searchsorted(self._sorted, x), x)

    def _forecast(self) -> tuple[float, int]:
        values = self._buf[: self._n]
        last = float(values[-1])
        labels = _labels_from_sorted(self._sorted, values, int(self.n_labels))
        for w in range(min(self.window, values.size - 1), 0, -1):
            positions = _matching_positions(labels, w)
            if positions.size:
                step = float(np.mean(values[positions + 1] - values[positions]))
                return last + step, w
        return last, 0


def psf_run_online(series, window: int, n_labels: int = 5):
    """Run pattern-sequence forecasting online and return its report."""
    return PsfForecaster(window=window, n_labels=n_labels).fit(series).report_
