"""Tests for the truncated Fock-space verification layer against the
closed-form module."""

import math

import numpy as np
import pytest

from qfp.analysis import interp_nd_prob, optimal_measurement_error_lb
from qfp.oracle import (beamsplitter_click_probs, coherent_fock,
                        cswap_antisym_prob, fock_overlap,
                        interp_measurement_oracle, optimal_projector_error,
                        qubit_from_coherent, usc_outcome_probs)


class TestCoherentStates:
    def test_overlap_closed_form(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            a = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            b = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            got = abs(fock_overlap(coherent_fock(a, 60), coherent_fock(b, 60)))
            assert got == pytest.approx(math.exp(-0.5 * abs(a - b) ** 2),
                                        abs=1e-10)

    def test_normalized(self):
        state = coherent_fock(1.2 + 0.3j)
        assert np.linalg.norm(state.amplitudes) == pytest.approx(1.0,
                                                                 abs=1e-9)

    def test_cutoff_guard(self):
        with pytest.raises(ValueError):
            coherent_fock(5.0, cutoff=10)


class TestBeamsplitter:
    def test_equal_inputs_dark_port_silent(self):
        b = 0.9
        p_dark, p_light = beamsplitter_click_probs(coherent_fock(b),
                                                   coherent_fock(b))
        assert p_dark == pytest.approx(0.0, abs=1e-12)
        assert p_light == pytest.approx(1.0 - math.exp(-2.0 * b * b),
                                        abs=1e-10)

    def test_opposite_inputs_swap_ports(self):
        b = 0.9
        p_dark, p_light = beamsplitter_click_probs(coherent_fock(b),
                                                   coherent_fock(-b))
        assert p_light == pytest.approx(0.0, abs=1e-12)
        assert p_dark == pytest.approx(1.0 - math.exp(-2.0 * b * b),
                                       abs=1e-10)

    def test_general_pair_squared_distance_law(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            b = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            p_dark, p_light = beamsplitter_click_probs(coherent_fock(a, 50),
                                                       coherent_fock(b, 50))
            assert p_dark == pytest.approx(
                1.0 - math.exp(-0.5 * abs(a - b) ** 2), abs=1e-9)
            assert p_light == pytest.approx(
                1.0 - math.exp(-0.5 * abs(a + b) ** 2), abs=1e-9)


class TestQubitReduction:
    def test_overlap_preserved(self):
        b0, b1 = 0.7, -0.7
        q0, q1, _ = qubit_from_coherent(b0, b1)
        coherent = math.exp(-0.5 * abs(b0 - b1) ** 2)
        assert float(q0 @ q1) == pytest.approx(coherent, abs=1e-12)


class TestUSC:
    @pytest.mark.parametrize("p", [0.05, 0.2, 0.35, 0.5])
    def test_outcome_statistics(self, p):
        c = 1.0 - 2.0 * p  # qubit overlap
        same = usc_outcome_probs(0, 0, p)
        diff = usc_outcome_probs(0, 1, p)
        assert same["inconclusive"] == pytest.approx(c, abs=1e-12)
        assert diff["inconclusive"] == pytest.approx(c, abs=1e-12)
        assert same["same"] == pytest.approx(1.0 - c, abs=1e-12)
        assert diff["different"] == pytest.approx(1.0 - c, abs=1e-12)
        assert abs(same["different"]) < 1e-12
        assert abs(diff["same"]) < 1e-12

    def test_probabilities_sum_to_one(self):
        for a, b in ((0, 0), (0, 1), (1, 1)):
            probs = usc_outcome_probs(a, b, 0.3)
            assert sum(probs.values()) == pytest.approx(1.0, abs=1e-12)


class TestSwapTest:
    def test_product_state_antisym_prob(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            q0 = rng.normal(size=3) + 1j * rng.normal(size=3)
            q1 = rng.normal(size=3) + 1j * rng.normal(size=3)
            q0 /= np.linalg.norm(q0)
            q1 /= np.linalg.norm(q1)
            got = cswap_antisym_prob(np.kron(q0, q1))
            want = 0.5 * (1.0 - abs(np.vdot(q0, q1)) ** 2)
            assert got == pytest.approx(want, abs=1e-12)

    def test_symmetric_state_never_fires(self):
        q = np.array([1.0, 1.0j]) / math.sqrt(2)
        assert cswap_antisym_prob(np.kron(q, q)) == pytest.approx(0.0,
                                                                  abs=1e-12)


class TestInterpOracle:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("p_k", [0.1, 0.5, 1.0])
    def test_matches_closed_form(self, k, p_k):
        x = np.zeros(k, dtype=np.uint8)
        for d in range(k + 1):
            y = x.copy()
            y[:d] = 1
            got = interp_measurement_oracle(x, y, k, p_k)[0]
            assert got == pytest.approx(interp_nd_prob(d, k, p_k), abs=1e-10)

    def test_multi_signal_codewords(self):
        k, p_k = 2, 0.4
        x = np.array([0, 0, 1, 1], dtype=np.uint8)
        y = np.array([0, 1, 1, 0], dtype=np.uint8)
        probs = interp_measurement_oracle(x, y, k, p_k)
        assert probs.shape == (2,)
        assert probs[0] == pytest.approx(interp_nd_prob(1, k, p_k), abs=1e-10)
        assert probs[1] == pytest.approx(interp_nd_prob(1, k, p_k), abs=1e-10)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            interp_measurement_oracle(np.zeros(10, dtype=np.uint8),
                                      np.zeros(10, dtype=np.uint8), 5, 0.5)


class TestOptimalProjector:
    def test_equal_probe_never_errs(self):
        rng = np.random.default_rng(2)
        states = [s / np.linalg.norm(s)
                  for s in rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))]
        for s in states:
            assert optimal_projector_error(states, s, s) == pytest.approx(
                1.0, abs=1e-10)

    def test_worst_pair_meets_lower_bound(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            dim = int(rng.integers(2, 5))
            count = int(rng.integers(2, 4))
            raw = rng.normal(size=(count, dim)) + 1j * rng.normal(size=(count, dim))
            states = [s / np.linalg.norm(s) for s in raw]
            c = max(abs(np.vdot(a, b)) for i, a in enumerate(states)
                    for b in states[i + 1:])
            worst = max(optimal_projector_error(states, states[i], states[j])
                        for i in range(count) for j in range(count) if i != j)
            assert worst >= optimal_measurement_error_lb(c) - 1e-12
