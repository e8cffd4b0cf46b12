"""Tests for entropy helpers, GV length solvers, Gray maps, and worst-case
pair generation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfp.codes import (CodeSpec, binary_entropy, gv_binary_length,
                       gv_binary_rate, gv_qary_length, gv_qary_rate,
                       lattice_gray, ring_gray, worst_case_pair)


class TestBinaryEntropy:
    def test_endpoints(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_maximum_at_half(self):
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)

    @given(st.floats(min_value=1e-9, max_value=1.0 - 1e-9))
    def test_symmetry(self, x):
        assert binary_entropy(x) == pytest.approx(binary_entropy(1.0 - x),
                                                  rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            binary_entropy(1.5)


class TestGVLength:
    def test_zero_distance_is_identity(self):
        assert gv_binary_length(1000, 0.0) == 1000

    def test_rate_inequality_tight(self):
        for delta in (0.1, 0.25, 0.4):
            m = gv_binary_length(1000, delta)
            assert 1000 / m <= gv_binary_rate(delta) + 1e-9
            assert 1000 / (m - 1) > gv_binary_rate(delta) - 1e-9

    @given(st.integers(min_value=1, max_value=10**6),
           st.floats(min_value=0.0, max_value=0.45))
    @settings(max_examples=200)
    def test_monotone_in_delta(self, n, delta):
        assert gv_binary_length(n, delta) >= n

    def test_qary_reduces_to_binary(self):
        for delta in (0.0, 0.1, 0.3):
            assert gv_qary_rate(delta, 2) == pytest.approx(
                gv_binary_rate(delta), rel=1e-12)

    def test_qary_length_positive(self):
        assert gv_qary_length(100, 0.2, 4) >= 100 / math.log2(4)

    def test_invalid_delta(self):
        with pytest.raises(ValueError):
            gv_binary_rate(0.6)
        with pytest.raises(ValueError):
            gv_qary_rate(0.8, 4)


class TestCodeSpec:
    def test_min_distance(self):
        assert CodeSpec(n=10, m=40, delta=0.25).min_distance == 10.0

    def test_rejects_bad_alphabet(self):
        with pytest.raises(ValueError):
            CodeSpec(n=10, m=40, delta=0.25, q=1)

    def test_rejects_short_codeword(self):
        with pytest.raises(ValueError):
            CodeSpec(n=100, m=50, delta=0.2)


class TestRingGray:
    @pytest.mark.parametrize("k", range(1, 11))
    def test_cyclic_adjacency(self, k):
        gray = ring_gray(k)
        size = 1 << k
        labels = gray.label_at
        for pos in range(size):
            diff = int(labels[pos]) ^ int(labels[(pos + 1) % size])
            assert bin(diff).count("1") == 1

    @pytest.mark.parametrize("k", range(1, 11))
    def test_bijection(self, k):
        gray = ring_gray(k)
        assert sorted(gray.label_at) == list(range(1 << k))
        assert np.array_equal(gray.position_of[gray.label_at],
                              np.arange(1 << k))

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            ring_gray(0)
        with pytest.raises(ValueError):
            ring_gray(25)


class TestLatticeGray:
    @pytest.mark.parametrize("k", range(2, 11))
    def test_grid_adjacency(self, k):
        gray = lattice_gray(k)
        rows, cols = gray.shape
        grid = gray.label_at.reshape(rows, cols)
        for r in range(rows):
            for c in range(cols):
                for dr, dc in ((0, 1), (1, 0)):
                    rr, cc = r + dr, c + dc
                    if rr < rows and cc < cols:
                        diff = int(grid[r, c]) ^ int(grid[rr, cc])
                        assert bin(diff).count("1") == 1

    @pytest.mark.parametrize("k", range(2, 11))
    def test_shape(self, k):
        gray = lattice_gray(k)
        assert gray.shape == (1 << ((k + 1) // 2), 1 << (k // 2))

    def test_grid_coords_roundtrip(self):
        gray = lattice_gray(4)
        for label in range(16):
            r, c = gray.grid_coords(label)
            assert gray.label_at[r * gray.shape[1] + c] == label


class TestWorstCasePair:
    @pytest.mark.parametrize("strategy", ["even", "consolidated"])
    @pytest.mark.parametrize("m,delta,k", [(100, 0.25, 1), (100, 0.25, 3),
                                           (101, 0.3, 4), (64, 0.0, 2)])
    def test_exact_distance(self, m, delta, k, strategy):
        x, y = worst_case_pair(m, delta, k, strategy)
        assert int(np.sum(x != y)) == int(round(m * delta))

    def test_consolidated_packs_leading_blocks(self):
        x, y = worst_case_pair(100, 0.2, 4, "consolidated")
        flips = np.flatnonzero(x != y)
        assert np.array_equal(flips, np.arange(20))

    def test_even_spreads_within_one(self):
        m, k = 96, 4
        x, y = worst_case_pair(m, 0.25, k, "even")
        per_block = (x != y).reshape(-1, k).sum(axis=1)
        assert per_block.max() - per_block.min() <= 1

    def test_even_respects_short_final_block(self):
        m, k = 10, 4
        x, y = worst_case_pair(m, 0.9, k, "even")
        assert int(np.sum(x != y)) == 9

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            worst_case_pair(10, 0.2, 2, "scattered")
