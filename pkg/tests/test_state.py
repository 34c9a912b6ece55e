import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qic.errors import IndexOutOfRange, NormCollapse, RegisterMismatch
from qic.state import (
    PhaseMask,
    Register,
    StateVector,
    apply_partial_bit_flip,
    apply_phase_mask,
    basis_state,
    fidelity,
    norm_squared,
    normalize,
    probability,
    sample,
    uniform_superposition,
)

from conftest import random_state


class TestRegister:
    def test_total_and_dimension(self):
        reg = Register(3, 2)
        assert reg.total_qubits == 5
        assert reg.dimension == 32

    def test_rejects_zero_data_qubits(self):
        with pytest.raises(ValueError):
            Register(0)

    def test_rejects_oversized_register(self):
        with pytest.raises(ValueError):
            Register(31)
        with pytest.raises(ValueError):
            Register(25, 6)

    def test_bitstring_renders_msb_first(self):
        reg = Register(3)
        assert reg.bitstring(1) == "001"
        assert reg.bitstring(6) == "110"
        with pytest.raises(IndexOutOfRange):
            reg.bitstring(8)


class TestUniformSuperposition:
    def test_three_qubits(self):
        psi = uniform_superposition(Register(3))
        expected = 1.0 / math.sqrt(8)
        assert psi.normalized
        assert np.all(psi.amplitudes == expected + 0j)

    def test_single_qubit(self):
        psi = uniform_superposition(Register(1))
        assert np.allclose(psi.amplitudes, [1 / math.sqrt(2)] * 2, atol=1e-15)

    def test_two_qubits_probabilities_sum_to_one(self):
        psi = uniform_superposition(Register(2))
        probs = np.abs(psi.amplitudes) ** 2
        assert np.all(probs == 0.25)
        assert probs.sum() == 1.0


class TestNormSquared:
    def test_uniform_is_unit(self):
        assert abs(norm_squared(uniform_superposition(Register(3))) - 1.0) < 1e-12

    def test_zero_vector(self):
        psi = StateVector(Register(2), np.zeros(4))
        assert norm_squared(psi) == 0.0

    def test_unnormalized_vector(self):
        psi = StateVector(Register(2), [2, 0, 0, 0])
        assert norm_squared(psi) == 4.0


class TestNormalize:
    def test_rescales(self):
        psi = StateVector(Register(1), [2, 0])
        out = normalize(psi)
        assert np.all(out.amplitudes == np.array([1, 0], dtype=complex))
        assert out.normalized

    def test_zero_vector_collapses(self):
        psi = StateVector(Register(2), np.zeros(4))
        with pytest.raises(NormCollapse):
            normalize(psi, tol=1e-18)

    def test_bell_like_pair(self):
        psi = StateVector(Register(2), [1, 0, 0, 1])
        out = normalize(psi)
        r = 1 / math.sqrt(2)
        assert np.allclose(out.amplitudes, [r, 0, 0, r], atol=1e-15)

    def test_input_unchanged(self):
        amps = np.array([2.0, 0.0], dtype=complex)
        psi = StateVector(Register(1), amps)
        normalize(psi)
        assert np.all(psi.amplitudes == np.array([2, 0], dtype=complex))

    def test_rejects_nonpositive_tol(self):
        with pytest.raises(ValueError):
            normalize(uniform_superposition(Register(1)), tol=0.0)


class TestProbability:
    def test_two_component_state(self):
        r = 1 / math.sqrt(2)
        psi = StateVector(Register(3), [0, r, 0, r, 0, 0, 0, 0],
                          normalized=True)
        assert abs(probability(psi, 1) - 0.5) < 1e-15
        assert probability(psi, 0) == 0.0

    def test_uniform(self):
        psi = uniform_superposition(Register(3))
        assert abs(probability(psi, 5) - 0.125) < 1e-15

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            probability(uniform_superposition(Register(2)), 4)


class TestSample:
    def test_basis_state_is_certain(self):
        psi = basis_state(Register(3), 5)
        rng = np.random.default_rng(0)
        assert all(sample(psi, rng) == 5 for _ in range(20))

    def test_two_component_frequencies(self):
        r = 1 / math.sqrt(2)
        psi = StateVector(Register(3), [0, r, 0, r, 0, 0, 0, 0],
                          normalized=True)
        rng = np.random.default_rng(7)
        draws = [sample(psi, rng) for _ in range(10_000)]
        assert set(draws) <= {1, 3}
        # 4 sigma binomial bound around p = 0.5
        assert abs(draws.count(1) / 10_000 - 0.5) < 0.02

    def test_uniform_frequencies(self):
        psi = uniform_superposition(Register(2))
        rng = np.random.default_rng(11)
        draws = [sample(psi, rng) for _ in range(10_000)]
        for i in range(4):
            assert abs(draws.count(i) / 10_000 - 0.25) < 0.02

    def test_deterministic_given_seed(self):
        psi = uniform_superposition(Register(4))
        a = [sample(psi, np.random.default_rng(123)) for _ in range(1)]
        b = [sample(psi, np.random.default_rng(123)) for _ in range(1)]
        rng1, rng2 = np.random.default_rng(9), np.random.default_rng(9)
        seq1 = [sample(psi, rng1) for _ in range(50)]
        seq2 = [sample(psi, rng2) for _ in range(50)]
        assert a == b
        assert seq1 == seq2

    def test_collapsed_state_rejected(self):
        psi = StateVector(Register(2), np.zeros(4))
        with pytest.raises(NormCollapse):
            sample(psi, np.random.default_rng(0))


class TestFidelity:
    def test_self_fidelity(self, rng):
        psi = random_state(rng, 4)
        assert abs(fidelity(psi, psi) - 1.0) < 1e-12

    def test_orthogonal_states(self):
        reg = Register(2)
        assert fidelity(basis_state(reg, 0), basis_state(reg, 3)) == 0.0

    def test_half_overlap(self):
        reg = Register(1)
        plus = uniform_superposition(reg)
        assert abs(fidelity(basis_state(reg, 0), plus) - 0.5) < 1e-12

    def test_register_mismatch(self):
        with pytest.raises(RegisterMismatch):
            fidelity(basis_state(Register(1), 0), basis_state(Register(2), 0))


class TestPhaseMask:
    def test_sign_pattern(self):
        reg = Register(3)
        psi = uniform_superposition(reg)
        mask = PhaseMask.from_indices(reg, {1, 3})
        out = apply_phase_mask(psi, mask)
        signs = np.sign(out.amplitudes.real)
        assert list(signs) == [-1, 1, -1, 1, -1, -1, -1, -1]
        assert abs(norm_squared(out) - 1.0) < 1e-12

    def test_all_valid_is_identity(self, rng):
        psi = random_state(rng, 3)
        mask = PhaseMask.from_indices(psi.register, range(8))
        out = apply_phase_mask(psi, mask)
        assert np.all(out.amplitudes == psi.amplitudes)

    def test_involution_is_exact(self, rng):
        psi = random_state(rng, 5)
        mask = PhaseMask.from_indices(psi.register,
                                      rng.choice(32, size=10, replace=False))
        back = apply_phase_mask(apply_phase_mask(psi, mask), mask)
        assert np.all(back.amplitudes == psi.amplitudes)

    def test_register_mismatch(self):
        mask = PhaseMask.from_indices(Register(2), {0})
        with pytest.raises(RegisterMismatch):
            apply_phase_mask(uniform_superposition(Register(3)), mask)

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            PhaseMask.from_indices(Register(2), {4})


class TestPartialBitFlip:
    def test_quarter_turn_on_bit0(self):
        psi = basis_state(Register(3), 0)
        out = apply_partial_bit_flip(psi, 0, math.pi / 4)
        r = 1 / math.sqrt(2)
        expected = np.zeros(8, dtype=complex)
        expected[0] = r
        expected[1] = 1j * r
        assert np.allclose(out.amplitudes, expected, atol=1e-15)

    def test_zero_angle_is_identity(self, rng):
        psi = random_state(rng, 4)
        out = apply_partial_bit_flip(psi, 2, 0.0)
        assert np.all(out.amplitudes == psi.amplitudes)

    def test_half_turn_flips_with_phase(self):
        psi = basis_state(Register(2), 0)
        out = apply_partial_bit_flip(psi, 1, math.pi / 2)
        expected = np.zeros(4, dtype=complex)
        expected[2] = 1j
        assert np.allclose(out.amplitudes, expected, atol=1e-12)

    def test_qubit_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            apply_partial_bit_flip(basis_state(Register(2), 0), 2, 0.3)


@settings(max_examples=100, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    m=st.integers(1, 10),
    data=st.data(),
)
def test_norm_preserving_ops_hold_norm(seed, m, data):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, m)
    qubit = data.draw(st.integers(0, m - 1))
    theta = data.draw(st.floats(0.0, math.pi, allow_nan=False))
    n_valid = data.draw(st.integers(0, psi.register.dimension))
    mask = PhaseMask.from_indices(
        psi.register, rng.choice(psi.register.dimension, size=n_valid,
                                 replace=False))
    for out in (apply_phase_mask(psi, mask),
                apply_partial_bit_flip(psi, qubit, theta)):
        assert abs(norm_squared(out) - 1.0) < 1e-12


@settings(max_examples=100, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    m=st.integers(1, 8),
    theta=st.floats(-math.pi, math.pi, allow_nan=False),
    qubit_pick=st.integers(0, 1000),
)
def test_partial_flip_inverts_with_negated_angle(seed, m, theta, qubit_pick):
    rng = np.random.default_rng(seed)
    psi = random_state(rng, m)
    qubit = qubit_pick % m
    there = apply_partial_bit_flip(psi, qubit, theta)
    back = apply_partial_bit_flip(there, qubit, -theta)
    assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-10


def test_sampling_matches_distribution_within_tv_bound():
    rng = np.random.default_rng(424242)
    psi = random_state(rng, 4)
    probs = np.abs(psi.amplitudes) ** 2
    draws = np.array([sample(psi, rng) for _ in range(100_000)])
    counts = np.bincount(draws, minlength=16) / 100_000
    tv = 0.5 * np.sum(np.abs(counts - probs))
    assert tv <= 0.02
