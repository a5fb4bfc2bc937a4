"""Binary comparison patterns over sliding windows of a time series.

A pattern of depth ``D`` is an ordered bit string ``b1 b2 ... bD`` where
``b1`` is the most recent comparison.  Two kinds of patterns are extracted
from a series at position ``i``:

* static  -- bit ``j`` compares the current sample against the sample
  ``j`` steps back: ``x[i] > x[i-j]``;
* dynamic -- bit ``j`` compares consecutive samples: ``x[i-j+1] > x[i-j]``
  (the realized up/down shape of the series).

Ties always produce bit 0 (``<=`` counts as "not up"), so extraction is
deterministic on real data with repeated values.  Pattern strings such as
``"101"`` are written most-recent-bit-first everywhere, including the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .validation import check_series


@dataclass(frozen=True)
class PatternBits:
    """An ordered, immutable bit string; ``bits[0]`` is the newest comparison."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        if len(bits) < 1:
            raise ValueError("a pattern needs at least one bit")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"pattern bits must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @property
    def depth(self) -> int:
        return len(self.bits)

    @classmethod
    def from_string(cls, text: str) -> "PatternBits":
        """Parse a literal like ``"101"`` (most recent bit first)."""
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"pattern literal must be a nonempty string of 0/1, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_index(cls, depth: int, index: int) -> "PatternBits":
        """Inverse of :func:`pattern_index` for a fixed depth."""
        if depth < 1:
            raise ValueError("depth must be >= 1")
        if not 0 <= index < (1 << depth):
            raise ValueError(f"index {index} out of range for depth {depth}")
        return cls(tuple((index >> (depth - 1 - j)) & 1 for j in range(depth)))

    def extended(self, newest_bit: int) -> "PatternBits":
        """Prepend a new most-recent comparison bit."""
        return PatternBits((newest_bit,) + self.bits)

    def flipped(self) -> "PatternBits":
        """Complement every bit (the pattern of the negated series)."""
        return PatternBits(tuple(1 - b for b in self.bits))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __len__(self) -> int:
        return len(self.bits)


def as_pattern(value: "PatternBits | str | Sequence[int]") -> PatternBits:
    """Coerce a pattern literal, bit sequence, or PatternBits to PatternBits."""
    if isinstance(value, PatternBits):
        return value
    if isinstance(value, str):
        return PatternBits.from_string(value)
    return PatternBits(tuple(value))


def pattern_index(pattern: "PatternBits | str | Sequence[int]") -> int:
    """Integer whose binary digits are the bits, newest bit most significant.

    Bijective onto ``[0, 2**depth - 1]`` for each fixed depth; used to
    address tree nodes.
    """
    p = as_pattern(pattern)
    idx = 0
    for b in p.bits:
        idx = (idx << 1) | b
    return idx


def all_patterns(depth: int) -> Iterator[PatternBits]:
    """All ``2**depth`` patterns of a given depth, in index order."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    for idx in range(1 << depth):
        yield PatternBits.from_index(depth, idx)


def _check_window(n: int, i: int, depth: int) -> None:
    if depth < 1:
        raise IndexError(f"depth must be >= 1, got {depth}")
    if i < depth or i >= n:
        raise IndexError(f"position {i} with depth {depth} out of range for length {n}")


def extract_dynamic(series, i: int, depth: int) -> PatternBits:
    """Dynamic pattern at position ``i``: bit j is 1 iff x[i-j+1] > x[i-j]."""
    x = check_series(series)
    _check_window(x.size, i, depth)
    return PatternBits(tuple(1 if x[i - j + 1] > x[i - j] else 0 for j in range(1, depth + 1)))


def extract_static(series, i: int, depth: int) -> PatternBits:
    """Static pattern at position ``i``: bit j is 1 iff x[i] > x[i-j]."""
    x = check_series(series)
    _check_window(x.size, i, depth)
    return PatternBits(tuple(1 if x[i] > x[i - j] else 0 for j in range(1, depth + 1)))
