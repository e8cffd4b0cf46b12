"""Entropy functions, Gilbert-Varshamov length solvers, Gray codes, and
adversarial codeword-pair generators.

No actual error-correcting code is ever constructed: every protocol here
only needs the minimum distance of the code, so codewords are produced
directly as worst-case pairs at a prescribed Hamming distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CodeSpec",
    "GrayMap",
    "binary_entropy",
    "gv_binary_length",
    "gv_binary_rate",
    "gv_qary_rate",
    "gv_qary_length",
    "ring_gray",
    "lattice_gray",
    "worst_case_pair",
]

_MAX_GRAY_BITS = 24


@dataclass(frozen=True)
class CodeSpec:
    """Abstract code parameters: n input bits mapped to m codeletters over a
    q-letter alphabet with relative minimum distance delta."""

    n: int
    m: int
    delta: float
    q: int = 2

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.q}")
        if not 0.0 <= self.delta < 1.0 - 1.0 / self.q:
            raise ValueError(
                f"delta={self.delta} outside [0, 1 - 1/q) for q={self.q}"
            )
        if self.q == 2 and self.delta > 0 and self.m < self.n:
            raise ValueError("binary code with delta > 0 requires m >= n")

    @property
    def min_distance(self) -> float:
        return self.m * self.delta


@dataclass(frozen=True)
class GrayMap:
    """Bijection between k-bit labels and positions on a ring or lattice.

    ``position_of[label]`` is the ring index (int) or the flattened
    ``row * cols + col`` grid index.  ``label_at`` is the inverse.
    """

    k: int
    geometry: str  # "ring" | "lattice"
    position_of: np.ndarray = field(repr=False)
    label_at: np.ndarray = field(repr=False)
    shape: tuple[int, ...] = ()

    def grid_coords(self, label: int) -> tuple[int, int]:
        if self.geometry != "lattice":
            raise ValueError("grid_coords only defined for lattice maps")
        pos = int(self.position_of[label])
        cols = self.shape[1]
        return divmod(pos, cols)


def binary_entropy(x: float) -> float:
    """Binary entropy h(x) in bits, with h(0) = h(1) = 0 by continuity."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy domain is [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def gv_binary_rate(delta: float) -> float:
    """Rate n/m of a binary code saturating the Gilbert-Varshamov bound."""
    if not 0.0 <= delta < 0.5:
        raise ValueError(f"binary GV bound requires 0 <= delta < 1/2, got {delta}")
    return 1.0 - binary_entropy(delta)


def gv_binary_length(n: int, delta: float) -> int:
    """Smallest codeword length m with n/m <= 1 - h(delta)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rate = gv_binary_rate(delta)
    if rate <= 0.0:
        raise ValueError(f"no finite length for delta={delta}")
    return math.ceil(n / rate - 1e-12)


def gv_qary_rate(delta_q: float, q: int) -> float:
    """Rate (in bits per codeletter) of a q-ary GV-saturating code."""
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if not 0.0 <= delta_q < 1.0 - 1.0 / q:
        raise ValueError(f"q-ary GV bound requires 0 <= delta < 1 - 1/q, got {delta_q}")
    return math.log2(q) - delta_q * math.log2(q - 1) - binary_entropy(delta_q)


def gv_qary_length(n: int, delta_q: float, q: int) -> int:
    """Smallest q-ary codeword length m_q with n/m_q <= GV rate."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rate = gv_qary_rate(delta_q, q)
    if rate <= 0.0:
        raise ValueError(f"no finite length for delta_q={delta_q}, q={q}")
    return math.ceil(n / rate - 1e-12)


def _reflected_gray(k: int) -> np.ndarray:
    """label_at[pos] for the k-bit binary-reflected Gray code."""
    pos = np.arange(1 << k, dtype=np.int64)
    return pos ^ (pos >> 1)


def ring_gray(k: int) -> GrayMap:
    """Binary-reflected Gray code on a ring of 2^k positions.

    Cyclically adjacent positions (including the wrap-around pair) carry
    labels at Hamming distance one.
    """
    if not 1 <= k <= _MAX_GRAY_BITS:
        raise ValueError(f"ring_gray requires 1 <= k <= {_MAX_GRAY_BITS}, got {k}")
    label_at = _reflected_gray(k)
    position_of = np.empty_like(label_at)
    position_of[label_at] = np.arange(1 << k, dtype=np.int64)
    return GrayMap(k=k, geometry="ring", position_of=position_of,
                   label_at=label_at, shape=(1 << k,))


def lattice_gray(k: int) -> GrayMap:
    """Product of two reflected Gray codes on a 2^ceil(k/2) x 2^floor(k/2) grid.

    The high ceil(k/2) bits of a label index the row, the low floor(k/2)
    bits the column; grid-adjacent labels differ in exactly one bit.
    """
    if not 2 <= k <= _MAX_GRAY_BITS:
        raise ValueError(f"lattice_gray requires 2 <= k <= {_MAX_GRAY_BITS}, got {k}")
    k_hi = (k + 1) // 2
    k_lo = k // 2
    rows, cols = 1 << k_hi, 1 << k_lo
    row_labels = _reflected_gray(k_hi)
    col_labels = _reflected_gray(k_lo)
    label_at = (row_labels[:, None] << k_lo) | col_labels[None, :]
    label_at = label_at.reshape(-1)
    position_of = np.empty_like(label_at)
    position_of[label_at] = np.arange(rows * cols, dtype=np.int64)
    return GrayMap(k=k, geometry="lattice", position_of=position_of,
                   label_at=label_at, shape=(rows, cols))


def worst_case_pair(m: int, delta: float, k: int,
                    strategy: str = "even") -> tuple[np.ndarray, np.ndarray]:
    """Two length-m bit strings differing in exactly round(m * delta) positions.

    ``consolidated`` packs all differences into the fewest leading blocks of
    size k; ``even`` spreads them so every block carries floor or ceil of the
    average number of differences.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    dist = int(round(m * delta))
    if not 0 <= dist <= m:
        raise ValueError(f"round(m*delta)={dist} outside [0, {m}]")
    x = np.zeros(m, dtype=np.uint8)
    y = np.zeros(m, dtype=np.uint8)
    if dist == 0:
        return x, y
    n_blocks = -(-m // k)
    flip = np.zeros(m, dtype=bool)
    if strategy == "consolidated":
        flip[:dist] = True
    elif strategy == "even":
        # round-robin over blocks, respecting the (possibly short) final block
        block_fill = [0] * n_blocks
        block_len = [min(k, m - j * k) for j in range(n_blocks)]
        remaining = dist
        while remaining > 0:
            progressed = False
            for j in range(n_blocks):
                if remaining == 0:
                    break
                if block_fill[j] < block_len[j]:
                    block_fill[j] += 1
                    remaining -= 1
                    progressed = True
            if not progressed:
                raise ValueError("distance exceeds codeword length")
        for j, fill in enumerate(block_fill):
            flip[j * k: j * k + fill] = True
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    y[flip] ^= 1
    return x, y
