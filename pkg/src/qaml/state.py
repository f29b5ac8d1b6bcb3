"""n-qubit state vectors in the computational basis.

Amplitudes are stored as a flat complex128 array of length 2^n. The basis
label b1 b2 ... bn maps to the integer index with b1 as the most significant
bit, so |110> lives at index 6.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidBitstring, QubitCountExceeded

#: Largest register accepted by default (16M amplitudes, ~256 MB as complex128).
DEFAULT_MAX_QUBITS = 24

#: Absolute tolerance on |norm^2 - 1| for library-produced states.
NORM_ATOL = 1e-9


@dataclass(frozen=True)
class StateVector:
    """Immutable 2^n-amplitude register state.

    Construction validates shape, finiteness and normalization, so any
    StateVector in circulation satisfies the class invariants.
    """

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        dim = 1 << self.n_qubits
        if amps.shape != (dim,):
            raise ValueError(
                f"expected {dim} amplitudes for {self.n_qubits} qubits, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.sum(amps.real**2 + amps.imag**2))
        if abs(norm2 - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: |amplitudes|^2 = {norm2}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def bitstring(self, index: int) -> str:
        """Basis label for an amplitude index, big-endian."""
        return format(index, f"0{self.n_qubits}b")


def bitstring_to_index(bits: str) -> int:
    """Map a basis label to its amplitude index (first character = MSB)."""
    if not bits or any(c not in "01" for c in bits):
        raise InvalidBitstring(f"expected a non-empty binary string, got {bits!r}")
    return int(bits, 2)


def make_basis_state(
    n_qubits: int, bits: str, max_qubits: int = DEFAULT_MAX_QUBITS
) -> StateVector:
    """Prepare the computational basis state |bits> on n_qubits qubits."""
    if n_qubits < 1:
        raise InvalidBitstring(f"n_qubits must be positive, got {n_qubits}")
    if n_qubits > max_qubits:
        raise QubitCountExceeded(f"{n_qubits} qubits exceeds the ceiling of {max_qubits}")
    if len(bits) != n_qubits:
        raise InvalidBitstring(
            f"bitstring {bits!r} has length {len(bits)}, expected {n_qubits}"
        )
    index = bitstring_to_index(bits)
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def norm_squared(state) -> float:
    """Sum of squared amplitude magnitudes.

    Accepts a StateVector or any raw complex sequence, so it can be used to
    check unnormalized data as well.
    """
    amps = state.amplitudes if isinstance(state, StateVector) else np.asarray(state, dtype=np.complex128)
    return float(np.sum(amps.real**2 + amps.imag**2))


def probabilities(state: StateVector) -> np.ndarray:
    """Born-rule probability of each basis outcome, index-aligned with amplitudes."""
    amps = state.amplitudes
    return amps.real**2 + amps.imag**2
