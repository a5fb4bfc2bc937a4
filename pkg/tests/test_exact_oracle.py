from fractions import Fraction

import pytest

from patseries.decomposition import (
    dynamic_pattern_prob_recursive,
    enumerate_exact,
    exact_pattern_mixture,
)
from patseries.patterns import all_patterns


class TestEnumerateExact:
    def test_all_up(self):
        stats = enumerate_exact("11")
        assert stats.prob == Fraction(1, 6)
        assert stats.rank_weights == {3: Fraction(1, 1)}

    def test_up_after_down(self):
        stats = enumerate_exact("101")
        assert stats.prob == Fraction(5, 24)
        assert stats.rank_weights == {
            2: Fraction(1, 5),
            3: Fraction(2, 5),
            4: Fraction(2, 5),
        }
        assert stats.matches == 5 and stats.window == 4

    def test_up_then_was_down(self):
        # The newest sample beats its predecessor, so it is never the
        # window minimum: only ranks 2 and 3 are possible.
        stats = enumerate_exact("10")
        assert stats.prob == Fraction(1, 3)
        assert stats.rank_weights == {2: Fraction(1, 2), 3: Fraction(1, 2)}

    @pytest.mark.parametrize("depth", range(1, 9))
    def test_normalization_exact(self, depth):
        total = sum(enumerate_exact(b).prob for b in all_patterns(depth))
        assert total == Fraction(1)

    @pytest.mark.parametrize("depth", [1, 2])
    def test_recursive_agrees_at_small_depth(self, depth):
        for b in all_patterns(depth):
            exact = float(enumerate_exact(b).prob)
            assert dynamic_pattern_prob_recursive(b) == pytest.approx(exact, abs=1e-12)

    def test_documented_divergence_at_depth_three(self):
        # The two routes genuinely disagree from depth 3 on; both values
        # are part of the contract and neither is dropped.
        exact = enumerate_exact("101").prob
        recursive = dynamic_pattern_prob_recursive("101")
        assert exact == Fraction(5, 24)
        assert recursive == pytest.approx(3 / 16, abs=1e-12)
        assert float(exact) != pytest.approx(recursive, abs=1e-6)

    @pytest.mark.parametrize("depth", range(1, 7))
    def test_complement_symmetry(self, depth):
        for b in all_patterns(depth):
            fwd = enumerate_exact(b)
            rev = enumerate_exact(b.flipped())
            assert fwd.prob == rev.prob
            flipped_weights = {depth + 2 - r: w for r, w in rev.rank_weights.items()}
            assert fwd.rank_weights == flipped_weights

    def test_rank_weights_sum_to_one(self):
        for b in all_patterns(4):
            assert sum(enumerate_exact(b).rank_weights.values()) == Fraction(1)

    def test_depth_cap(self):
        with pytest.raises(ValueError):
            enumerate_exact("1" * 11)

    def test_mixture_components(self):
        comps = exact_pattern_mixture("101", 0.0, 1.0).components
        by_ab = {(p.alpha, p.beta): w for w, p in comps}
        assert by_ab[(2, 3)] == pytest.approx(1 / 5, abs=1e-15)
        assert by_ab[(3, 2)] == pytest.approx(2 / 5, abs=1e-15)
        assert by_ab[(4, 1)] == pytest.approx(2 / 5, abs=1e-15)

    @pytest.mark.parametrize("depth", [1, 2])
    def test_mixtures_match_recursive_at_small_depth(self, depth):
        from patseries.decomposition import dynamic_pattern_mixture

        for b in all_patterns(depth):
            exact = {
                (p.alpha, p.beta): w for w, p in exact_pattern_mixture(b).components
            }
            recursive = {
                (p.alpha, p.beta): w for w, p in dynamic_pattern_mixture(b).components
            }
            assert set(exact) == set(recursive)
            for key, w in exact.items():
                assert recursive[key] == pytest.approx(w, abs=1e-12)
