"""Online pattern-tree estimator.

The tree keys, for every depth ``d`` up to ``d_max``, the time indices at
which each depth-``d`` dynamic pattern occurred.  One pass over the series
both fills the tree and produces one-step-ahead estimates:

* update -- compare the new sample against the last one, append the new
  bit to the rolling pattern, and record the index in the matching node at
  every depth;
* estimate -- starting from the deepest context, compare the occurrence
  counts of "context then up" vs "context then down"; the first depth with
  a strict majority decides the direction, and the estimate moves the last
  sample by the mean change recorded in the winning node.  Equal counts
  (including empty nodes) fall through to a shorter context, and depth 0
  falls back to persistence.

The estimate adds the *signed* node mean for both directions: down-node
changes are nonpositive by construction, so this equals stepping by the
magnitude in the decided direction while keeping a single code path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .base import OnlineForecaster
from .validation import check_positive_int, check_series

MAX_TREE_DEPTH = 16


@dataclass
class EstimateDecision:
    """Outcome of one estimate: direction, evidence, and magnitude.

    ``q_hat`` is 0 for up, 1 for down; ``depth_used == 0`` marks the
    persistence fallback, where ``d_hat`` is 0 and the count ratios
    ``p1``/``p0`` are undefined (None).
    """

    q_hat: int
    depth_used: int
    d_hat: float
    p1: float | None
    p0: float | None
    matched_count: int


class _Node:
    __slots__ = ("indices", "deltas", "delta_sum")

    def __init__(self) -> None:
        self.indices: deque[int] = deque()
        self.deltas: deque[float] = deque()
        self.delta_sum = 0.0

    def add(self, i: int, delta: float, cap: int | None) -> None:
        self.indices.append(i)
        self.deltas.append(delta)
        self.delta_sum += delta
        if cap is not None and len(self.indices) > cap:
            self.indices.popleft()
            self.delta_sum -= self.deltas.popleft()

    def __len__(self) -> int:
        return len(self.indices)


class PatternTree:
    """Per-depth occurrence lists of dynamic patterns, filled sample by sample.

    ``max_node_history`` optionally caps every node's index list to the
    most recent entries (ring-buffer behaviour); by default lists grow
    without bound.
    """

    def __init__(self, d_max: int, max_node_history: int | None = None) -> None:
        self.d_max = check_positive_int(d_max, "d_max", maximum=MAX_TREE_DEPTH)
        if max_node_history is not None:
            max_node_history = check_positive_int(max_node_history, "max_node_history")
        self._cap = max_node_history
        self._nodes: list[dict[tuple[int, ...], _Node]] = [{} for _ in range(self.d_max)]
        self._buffer: list[float] = []
        self._rolling: tuple[int, ...] = ()

    @property
    def n_seen(self) -> int:
        return len(self._buffer)

    @property
    def buffer(self) -> np.ndarray:
        return np.asarray(self._buffer)

    @property
    def rolling(self) -> tuple[int, ...]:
        """Most recent comparison bits, newest first (at most d_max - 1)."""
        return self._rolling

    def set_pattern(self, samples) -> "PatternTree":
        """Seed the tree with exactly ``d_max`` samples.

        Records the comparisons among them as the rolling pattern without
        creating node entries; only subsequent updates fill nodes.
        """
        if self._buffer or any(self._nodes[d] for d in range(self.d_max)):
            raise ValueError("set_pattern requires an empty tree")
        x = check_series(samples, name="initial samples")
        if x.size != self.d_max:
            raise ValueError(f"set_pattern needs exactly {self.d_max} samples, got {x.size}")
        self._buffer = [float(v) for v in x]
        self._rolling = tuple(
            1 if x[j] > x[j - 1] else 0 for j in range(x.size - 1, 0, -1)
        )
        return self

    def update(self, i: int, x: float) -> "PatternTree":
        """Consume sample ``x`` at position ``i`` (samples arrive in order).

        Appends the new comparison bit and records ``i`` in the matching
        node at every depth for which enough comparisons exist.
        """
        if i != len(self._buffer):
            raise ValueError(f"expected sample index {len(self._buffer)}, got {i}")
        x = float(x)
        if not np.isfinite(x):
            raise ValueError(f"sample at {i} is not finite")
        if self._buffer:
            last = self._buffer[-1]
            bit = 1 if x > last else 0
            delta = x - last
            full = (bit,) + self._rolling
            for d in range(1, min(self.d_max, len(full)) + 1):
                node = self._nodes[d - 1].setdefault(full[:d], _Node())
                node.add(i, delta, self._cap)
            self._rolling = full[: self.d_max - 1]
        self._buffer.append(x)
        return self

    def estimate(self) -> tuple[float, EstimateDecision]:
        """One-step-ahead estimate from the deepest decisive context."""
        if not self._buffer:
            raise ValueError("estimate requires at least one sample")
        last = self._buffer[-1]
        for d in range(self.d_max, 0, -1):
            if d - 1 > len(self._rolling):
                continue
            context = self._rolling[: d - 1]
            layer = self._nodes[d - 1]
            node_up = layer.get((1,) + context)
            node_down = layer.get((0,) + context)
            c1 = len(node_up) if node_up is not None else 0
            c0 = len(node_down) if node_down is not None else 0
            if c1 == c0:
                continue
            chosen = node_up if c1 > c0 else node_down
            q_hat = 0 if c1 > c0 else 1
            mean_delta = chosen.delta_sum / len(chosen)
            decision = EstimateDecision(
                q_hat=q_hat,
                depth_used=d,
                d_hat=abs(mean_delta),
                p1=c1 / (c1 + c0),
                p0=c0 / (c1 + c0),
                matched_count=len(chosen),
            )
            return last + mean_delta, decision
        return last, EstimateDecision(
            q_hat=0, depth_used=0, d_hat=0.0, p1=None, p0=None, matched_count=0
        )

    # -- inspection helpers ------------------------------------------------

    def node_indices(self, depth: int, pattern) -> list[int]:
        """Time indices recorded under a pattern (empty if never seen)."""
        from .patterns import as_pattern

        p = as_pattern(pattern)
        if p.depth != depth:
            raise ValueError(f"pattern depth {p.depth} does not match requested depth {depth}")
        node = self._nodes[depth - 1].get(p.bits)
        return list(node.indices) if node is not None else []

    def populated_patterns(self, depth: int) -> list[tuple[int, ...]]:
        check_positive_int(depth, "depth", maximum=self.d_max)
        return sorted(self._nodes[depth - 1])


class PatternTreeForecaster(OnlineForecaster):
    """Scikit-learn style wrapper running the pattern tree over a series.

    After ``fit`` the tree has consumed every sample, per-step predictions
    live in ``predictions_`` / ``report_``, and ``predict()`` returns the
    forecast for the next (unseen) sample.  Count ratios drive every
    decision; theoretical i.i.d. up-probabilities are available separately
    from :func:`patseries.decomposition.up_probability` for diagnostics.
    """

    method = "pt"

    def __init__(self, depth: int = 3, max_node_history: int | None = None):
        self.depth = depth
        self.max_node_history = max_node_history

    def _horizon(self) -> int:
        return check_positive_int(self.depth, "depth", maximum=MAX_TREE_DEPTH)

    def _begin(self, head: np.ndarray) -> None:
        self.tree_ = PatternTree(self.depth, self.max_node_history)
        self.tree_.set_pattern(head)

    def _consume(self, i: int, x: float) -> None:
        self.tree_.update(i, x)

    def _forecast(self) -> tuple[float, int]:
        x_hat, decision = self.tree_.estimate()
        return x_hat, decision.depth_used


def run_online(series, d_max: int, max_node_history: int | None = None):
    """Run the pattern tree online over a series and return its report."""
    forecaster = PatternTreeForecaster(depth=d_max, max_node_history=max_node_history)
    return forecaster.fit(series).report_
