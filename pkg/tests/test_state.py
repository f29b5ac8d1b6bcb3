import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaml import StateVector, make_basis_state, norm_squared, probabilities
from qaml.errors import InvalidBitstring, QubitCountExceeded


class TestMakeBasisState:
    def test_110_maps_to_index_6(self):
        state = make_basis_state(3, "110")
        assert state.amplitudes[6] == 1.0 + 0.0j
        assert np.count_nonzero(state.amplitudes) == 1

    def test_ground_state(self):
        assert np.array_equal(make_basis_state(1, "0").amplitudes, [1.0, 0.0])

    def test_01_maps_to_index_1(self):
        # enumerate all 2-qubit labels against the big-endian convention
        for index, bits in enumerate(["00", "01", "10", "11"]):
            state = make_basis_state(2, bits)
            assert state.amplitudes[index] == 1.0

    def test_rejects_non_binary(self):
        with pytest.raises(InvalidBitstring):
            make_basis_state(2, "0a")

    def test_rejects_length_mismatch(self):
        with pytest.raises(InvalidBitstring):
            make_basis_state(3, "01")

    def test_rejects_above_ceiling(self):
        with pytest.raises(QubitCountExceeded):
            make_basis_state(25, "0" * 25)

    def test_ceiling_is_configurable(self):
        with pytest.raises(QubitCountExceeded):
            make_basis_state(5, "00000", max_qubits=4)


class TestNormSquared:
    def test_basis_state(self):
        assert norm_squared(make_basis_state(3, "110")) == 1.0

    def test_hadamard_output(self):
        inv = 1.0 / np.sqrt(2.0)
        assert norm_squared(StateVector(1, [inv, inv])) == pytest.approx(1.0, abs=1e-12)

    def test_raw_sequence(self):
        assert norm_squared([1, 1]) == 2.0


class TestProbabilities:
    def test_equal_superposition(self):
        inv = 1.0 / np.sqrt(2.0)
        assert probabilities(StateVector(1, [inv, inv])) == pytest.approx([0.5, 0.5])

    def test_basis_state(self):
        probs = probabilities(make_basis_state(3, "110"))
        assert probs[6] == 1.0
        assert probs.sum() == 1.0

    def test_amplitude_encoded_example(self):
        # oracle: squares of the raw values divided by their sum of squares
        raw = np.array([1.2, 2.7, 1.1, 0.5])
        expected = raw**2 / np.sum(raw**2)
        state = StateVector(2, raw / np.sqrt(np.sum(raw**2)))
        assert probabilities(state) == pytest.approx(expected, abs=1e-12)
        assert np.sum(raw**2) == pytest.approx(10.19)


class TestInvariants:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            StateVector(1, [1.0, 1.0])

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            StateVector(1, [np.nan, 0.0])

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            StateVector(2, [1.0, 0.0])

    def test_amplitudes_are_read_only(self):
        state = make_basis_state(1, "0")
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0.0

    @given(st.integers(1, 6), st.data())
    def test_basis_states_are_a_bijection(self, n, data):
        bits = "".join(data.draw(st.sampled_from("01")) for _ in range(n))
        probs = probabilities(make_basis_state(n, bits))
        assert np.count_nonzero(probs) == 1
        assert probs[int(bits, 2)] == 1.0
        assert abs(norm_squared(make_basis_state(n, bits)) - 1.0) < 1e-9
