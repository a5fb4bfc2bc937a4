"""Acceptance gates: every criterion runs at its stated tolerance and
prints one PASS line (run with ``pytest tests/test_acceptance.py -v -s``)."""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import chisquare

from patseries.baselines import lp_run_online
from patseries.bench import mse as bench_mse
from patseries.bench import persistence_mse
from patseries.cli import main as cli_main
from patseries.data import random_walk, save_csv
from patseries.decomposition import (
    dynamic_pattern_mixture,
    dynamic_pattern_prob_recursive,
    enumerate_exact,
    exact_pattern_mixture,
    psi,
    psi_weighted,
    static_pattern_prob,
)
from patseries.patterns import all_patterns, extract_dynamic
from patseries.tree import PatternTree, run_online

TOL = 1e-12


def _ok(label: str) -> None:
    print(f"ACCEPTANCE PASS: {label}", flush=True)


class TestClosedFormValues:
    def test_psi_worked_example(self):
        assert psi("101", "11") == pytest.approx(1 / 4, abs=TOL)
        assert psi("101", "10") == pytest.approx(0.0, abs=TOL)
        assert psi("101", "01") == pytest.approx(1.0, abs=TOL)
        assert psi("101", "00") == pytest.approx(1 / 2, abs=TOL)
        _ok("psi coefficients of the depth-3 worked example")

    def test_psi_weighted_and_mixture(self):
        assert psi_weighted("101", "11") == pytest.approx(3 / 9, abs=TOL)
        assert psi_weighted("101", "10") == pytest.approx(0.0, abs=TOL)
        assert psi_weighted("101", "01") == pytest.approx(4 / 9, abs=TOL)
        assert psi_weighted("101", "00") == pytest.approx(2 / 9, abs=TOL)
        comps = {
            (p.alpha, p.beta): w for w, p in dynamic_pattern_mixture("101", 0.0, 1.0).components
        }
        assert comps[(4, 1)] == pytest.approx(3 / 9, abs=TOL)
        assert comps[(3, 2)] == pytest.approx(4 / 9, abs=TOL)
        assert comps[(2, 3)] == pytest.approx(2 / 9, abs=TOL)
        assert len(comps) == 3
        _ok("normalized weights and mixture of the depth-3 worked example")

    def test_static_closed_forms(self):
        assert static_pattern_prob("11") == pytest.approx(1 / 3, abs=TOL)
        assert static_pattern_prob("10") == pytest.approx(1 / 6, abs=TOL)
        assert static_pattern_prob("1") == pytest.approx(1 / 2, abs=TOL)
        for depth in range(1, 11):
            total = math.fsum(static_pattern_prob(p) for p in all_patterns(depth))
            assert total == pytest.approx(1.0, abs=TOL), f"depth {depth}"
        _ok("static closed forms and normalization for depths 1..10")


class TestOracleEquivalence:
    def test_recursive_matches_exact_depths_1_and_2(self):
        for depth in (1, 2):
            for b in all_patterns(depth):
                exact = float(enumerate_exact(b).prob)
                assert dynamic_pattern_prob_recursive(b) == pytest.approx(exact, abs=TOL)
        _ok("recursive probabilities equal exact enumeration at depths 1 and 2")

    def test_depth3_both_routes_recorded(self, tmp_path):
        stats = enumerate_exact("101")
        assert stats.prob == Fraction(5, 24)
        assert stats.rank_weights == {
            2: Fraction(1, 5),
            3: Fraction(2, 5),
            4: Fraction(2, 5),
        }
        assert dynamic_pattern_prob_recursive("101") == pytest.approx(3 / 16, abs=TOL)
        rec = {
            (p.alpha, p.beta): w for w, p in dynamic_pattern_mixture("101").components
        }
        assert rec[(4, 1)] == pytest.approx(3 / 9, abs=TOL)
        assert rec[(3, 2)] == pytest.approx(4 / 9, abs=TOL)
        assert rec[(2, 3)] == pytest.approx(2 / 9, abs=TOL)

        out = tmp_path / "curve.csv"
        assert cli_main(["decompose", "--pattern", "101", "--out", str(out)]) == 0
        sidecar = json.loads((tmp_path / "curve.json").read_text())
        assert sidecar["prob_exact"] == pytest.approx(5 / 24, abs=TOL)
        assert sidecar["prob_recursive"] == pytest.approx(3 / 16, abs=TOL)
        _ok("depth-3 discrepancy: both routes asserted and recorded in the report")

    def test_monte_carlo_depth2(self):
        t0 = time.perf_counter()
        n = 1_000_000
        rng = np.random.default_rng(2024)
        w = rng.standard_normal((n, 3))
        b1 = (w[:, 2] > w[:, 1]).astype(np.int64)
        b2 = (w[:, 1] > w[:, 0]).astype(np.int64)
        idx = 2 * b1 + b2
        edges = np.concatenate(([-np.inf], np.linspace(-4.0, 4.0, 17), [np.inf]))
        for b in all_patterns(2):
            from patseries.patterns import pattern_index

            stats = enumerate_exact(b)
            p = float(stats.prob)
            sel = idx == pattern_index(b)
            freq = sel.mean()
            se = math.sqrt(p * (1 - p) / n)
            assert abs(freq - p) <= 4 * se, f"pattern {b}: freq {freq} vs {p}"

            mix = exact_pattern_mixture(b, 0.0, 1.0)
            observed, _ = np.histogram(w[sel, 2], bins=edges)
            cdf_vals = mix.cdf(edges[1:-1])
            probs = np.diff(np.concatenate(([0.0], cdf_vals, [1.0])))
            expected = probs * sel.sum()
            stat, pvalue = chisquare(observed, expected)
            assert pvalue > 0.001, f"pattern {b}: chi-square p={pvalue}"
        elapsed = time.perf_counter() - t0
        assert elapsed <= 30.0
        _ok(f"Monte-Carlo depth-2 frequencies and conditional histograms ({elapsed:.1f}s)")


class TestEstimatorBehavior:
    def test_hand_simulated_runs(self):
        const = run_online(np.full(100, 3.7), 3)
        assert const.mse == 0.0
        assert np.all(const.predictions == 3.7)

        ramp = run_online(np.arange(100, dtype=float), 2)
        assert ramp.mse == 0.0
        assert np.array_equal(ramp.predictions, np.arange(3.0, 100.0))

        period2 = run_online(np.array([0.0, 1.0] * 6), 2)
        # first decision sees only the one recorded down-move; everything
        # after locks onto the alternation
        assert np.array_equal(period2.predictions, [-1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0])
        assert period2.mse == pytest.approx(4.0 / 9.0, abs=TOL)
        _ok("hand-simulated constant, ramp, and period-2 runs reproduced exactly")

    def test_partition_and_causality_on_100_series(self):
        rng = np.random.default_rng(7)
        for trial in range(100):
            n = int(rng.integers(25, 90))
            d_max = int(rng.integers(1, 7))
            values = rng.normal(size=n)
            tree = PatternTree(d_max)
            for i, x in enumerate(values):
                tree.update(i, float(x))
            for d in range(1, d_max + 1):
                seen = {}
                for key in tree.populated_patterns(d):
                    for i in tree.node_indices(d, key):
                        assert i not in seen
                        seen[i] = key
                assert sorted(seen) == list(range(d, n))
                for i, key in seen.items():
                    assert extract_dynamic(values, i, d).bits == key
            # causality: a fresh tree fed the same prefix reproduces the estimate
            cut = int(rng.integers(d_max + 1, n))
            partial = PatternTree(d_max)
            for i in range(cut + 1):
                partial.update(i, float(values[i]))
            full_replay = PatternTree(d_max)
            for i in range(cut + 1):
                full_replay.update(i, float(values[i]))
            assert partial.estimate() == full_replay.estimate()
        _ok("partition and causality invariants on 100 randomized series")


class TestExperimentScale:
    def test_mackey_glass_grid(self, mg_grid):
        result, elapsed = mg_grid
        assert len(result.rows) == 15
        assert all(math.isfinite(r.mse) and r.mse >= 0 for r in result.rows)
        pt1 = result.cell("pt", 1).mse
        pt2 = result.cell("pt", 2).mse
        assert 1e-4 <= pt1 <= 1e-2, pt1
        assert 1e-5 <= pt2 <= 1e-3, pt2
        assert pt2 < pt1
        for depth in (2, 3, 4, 5):
            pt = result.cell("pt", depth).mse
            lp = result.cell("lp", depth).mse
            assert pt < lp, f"depth {depth}: pt {pt} vs lp {lp}"
        assert elapsed < 60.0
        _ok(
            "chaotic benchmark grid: depth-1 mse "
            f"{pt1:.2e}, depth-2 mse {pt2:.2e}, tree beats linear at depths>=2, "
            f"{elapsed:.1f}s"
        )

    def test_downsampling_study(self, mg_downsample_grid):
        result = mg_downsample_grid
        factors = (1, 2, 4, 8)
        depth1 = [result.cell("pt", 1, f).mse for f in factors]
        assert all(a <= b for a, b in zip(depth1, depth1[1:])), depth1
        depth1_increase = depth1[-1] - depth1[0]
        for depth in (3, 4, 5):
            row = [result.cell("pt", depth, f).mse for f in factors]
            assert row[-1] - row[0] < depth1_increase, (depth, row)
        _ok("downsampling: depth-1 mse non-decreasing, deeper trees degrade less")

    def test_random_walk_csv_end_to_end(self, tmp_path):
        series = random_walk(2000, sigma=1.0, seed=99, up_prob=0.9)
        path = tmp_path / "walk.csv"
        save_csv(series, path)
        report_path = tmp_path / "report.json"
        code = cli_main(
            [
                "estimate", "--input", str(path), "--method", "pt",
                "--depth", "2", "--out", str(report_path),
            ]
        )
        assert code == 0
        payload = json.loads(report_path.read_text())
        assert payload["n"] == 2000
        assert math.isfinite(payload["mse"])
        baseline = persistence_mse(series, 2)
        assert payload["mse"] <= baseline
        _ok(
            "random-walk CSV end-to-end: pt mse "
            f"{payload['mse']:.3f} <= persistence {baseline:.3f}"
        )
