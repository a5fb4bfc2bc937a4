import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patseries.patterns import (
    PatternBits,
    all_patterns,
    as_pattern,
    extract_dynamic,
    extract_static,
    pattern_index,
)

finite_floats = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def series_and_window(min_depth=1, max_depth=6):
    return st.integers(min_value=min_depth, max_value=max_depth).flatmap(
        lambda d: st.tuples(
            st.lists(finite_floats, min_size=d + 1, max_size=d + 12),
            st.just(d),
        )
    )


class TestPatternBits:
    def test_round_trip_string(self):
        p = PatternBits.from_string("101")
        assert p.bits == (1, 0, 1)
        assert str(p) == "101"
        assert p.depth == 3

    def test_rejects_bad_bits(self):
        with pytest.raises(ValueError):
            PatternBits((0, 2))
        with pytest.raises(ValueError):
            PatternBits(())
        with pytest.raises(ValueError):
            PatternBits.from_string("10x")
        with pytest.raises(ValueError):
            PatternBits.from_string("")

    def test_extended_and_flipped(self):
        p = PatternBits.from_string("01")
        assert p.extended(1).bits == (1, 0, 1)
        assert p.flipped().bits == (1, 0)


class TestExtraction:
    def test_dynamic_examples(self):
        assert extract_dynamic([0, 1, 0.5, 2], 3, 3).bits == (1, 0, 1)
        assert extract_dynamic([5, 5], 1, 1).bits == (0,)
        assert extract_dynamic([1, 2, 3, 4], 3, 3).bits == (1, 1, 1)

    def test_static_examples(self):
        assert extract_static([0, 1, 0.5, 2], 3, 3).bits == (1, 1, 1)
        assert extract_static([3, 1, 2], 2, 2).bits == (1, 0)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            extract_dynamic([1, 2, 3], 2, 3)
        with pytest.raises(IndexError):
            extract_dynamic([1, 2, 3], 5, 1)
        with pytest.raises(IndexError):
            extract_static([1, 2, 3], 2, 0)

    @given(series_and_window())
    @settings(max_examples=60)
    def test_depth_one_static_equals_dynamic(self, case):
        values, _ = case
        i = len(values) - 1
        assert extract_static(values, i, 1) == extract_dynamic(values, i, 1)

    @given(series_and_window(min_depth=2))
    @settings(max_examples=60)
    def test_suffix_consistency(self, case):
        values, d = case
        i = len(values) - 1
        full = extract_dynamic(values, i, d)
        shorter = extract_dynamic(values, i - 1, d - 1)
        assert full.bits[1:] == shorter.bits

    @given(st.lists(st.integers(min_value=-50, max_value=50), min_size=4, max_size=12, unique=True))
    @settings(max_examples=60)
    def test_negation_flips_bits(self, values):
        x = [float(v) for v in values]
        i, d = len(x) - 1, 3
        neg = [-v for v in x]
        assert extract_dynamic(neg, i, d) == extract_dynamic(x, i, d).flipped()
        assert extract_static(neg, i, d) == extract_static(x, i, d).flipped()


class TestPatternIndex:
    def test_examples(self):
        assert pattern_index("101") == 5
        assert pattern_index("00") == 0
        assert pattern_index("1") == 1

    @pytest.mark.parametrize("depth", range(1, 11))
    def test_bijection(self, depth):
        seen = set()
        for p in all_patterns(depth):
            idx = pattern_index(p)
            assert PatternBits.from_index(depth, idx) == p
            seen.add(idx)
        assert seen == set(range(2**depth))

    def test_as_pattern_coercions(self):
        assert as_pattern("10") == as_pattern((1, 0)) == as_pattern(PatternBits((1, 0)))
