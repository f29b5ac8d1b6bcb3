import numpy as np
import pytest

from qaml import Circuit, StateVector, dense_unitary


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return StateVector(n_qubits, amps / np.linalg.norm(amps))


def dense_execute(circuit: Circuit) -> np.ndarray:
    """Independent oracle: multiply explicit tensor-product matrices onto |0...0>."""
    dim = 1 << circuit.n_qubits
    state = np.zeros(dim, dtype=np.complex128)
    state[0] = 1.0
    for op in circuit.ops:
        state = dense_unitary(op.to_gate(), op.targets, circuit.n_qubits) @ state
    return state


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
