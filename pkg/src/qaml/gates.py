"""Gate matrices and their application to state vectors.

Single- and two-qubit unitaries are applied with strided tensor kernels in
O(2^n) time; the full 2^n x 2^n operator is only ever materialized by the
small-instance test oracle `dense_unitary`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ArityMismatch,
    DuplicateTarget,
    NonFiniteAngle,
    OracleSizeExceeded,
    TargetOutOfRange,
    UnknownGate,
)
from .state import StateVector

UNITARITY_ATOL = 1e-12

ROTATION_GATES = ("RX", "RY", "RZ")
FIXED_GATES = ("H", "X", "Y", "Z", "CX")
GATE_ARITY = {"H": 1, "X": 1, "Y": 1, "Z": 1, "RX": 1, "RY": 1, "RZ": 1, "CX": 2}

_SQRT2_INV = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class GateMatrix:
    """A named unitary: 2x2 for single-qubit gates, 4x4 for CX.

    `angle` is set exactly for the rotation gates RX/RY/RZ.
    """

    name: str
    arity: int
    matrix: np.ndarray = field(repr=False)
    angle: float | None = None

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.complex128)
        dim = 2**self.arity
        if mat.shape != (dim, dim):
            raise ValueError(f"gate {self.name}: expected {dim}x{dim} matrix, got {mat.shape}")
        deviation = np.abs(mat.conj().T @ mat - np.eye(dim)).max()
        if deviation > UNITARITY_ATOL:
            raise ValueError(f"gate {self.name} is not unitary (max |U†U - I| = {deviation})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def gate_h() -> GateMatrix:
    return GateMatrix("H", 1, np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT2_INV)


def gate_x() -> GateMatrix:
    return GateMatrix("X", 1, np.array([[0, 1], [1, 0]], dtype=np.complex128))


def gate_y() -> GateMatrix:
    return GateMatrix("Y", 1, np.array([[0, -1j], [1j, 0]], dtype=np.complex128))


def gate_z() -> GateMatrix:
    return GateMatrix("Z", 1, np.array([[1, 0], [0, -1]], dtype=np.complex128))


def _check_angle(theta: float) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise NonFiniteAngle(f"rotation angle must be finite, got {theta}")
    return theta


def rotation_matrix(name: str, theta: float) -> np.ndarray:
    """Raw 2x2 rotation matrix about the named axis, angle in radians."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    if name == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if name == "RY":
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if name == "RZ":
        return np.array(
            [[complex(c, -s), 0.0], [0.0, complex(c, s)]], dtype=np.complex128
        )
    raise UnknownGate(f"unknown rotation {name!r}")


def gate_rx(theta: float) -> GateMatrix:
    theta = _check_angle(theta)
    return GateMatrix("RX", 1, rotation_matrix("RX", theta), angle=theta)


def gate_ry(theta: float) -> GateMatrix:
    theta = _check_angle(theta)
    return GateMatrix("RY", 1, rotation_matrix("RY", theta), angle=theta)


def gate_rz(theta: float) -> GateMatrix:
    theta = _check_angle(theta)
    return GateMatrix("RZ", 1, rotation_matrix("RZ", theta), angle=theta)


def gate_cx() -> GateMatrix:
    # |control,target> -> |control, target XOR control>
    mat = np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        dtype=np.complex128,
    )
    return GateMatrix("CX", 2, mat)


def gate_from_name(name: str, angle: float | None = None) -> GateMatrix:
    """Build a gate from its mnemonic, with the angle for rotation gates."""
    name = name.upper()
    if name in ROTATION_GATES:
        if angle is None:
            raise NonFiniteAngle(f"rotation gate {name} requires an angle")
        return {"RX": gate_rx, "RY": gate_ry, "RZ": gate_rz}[name](angle)
    if angle is not None:
        raise UnknownGate(f"gate {name} does not take an angle")
    builders = {"H": gate_h, "X": gate_x, "Y": gate_y, "Z": gate_z, "CX": gate_cx}
    if name not in builders:
        raise UnknownGate(f"unknown gate {name!r}")
    return builders[name]()


def _check_targets(targets, arity: int, n_qubits: int) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(targets) != arity:
        raise ArityMismatch(f"gate acts on {arity} qubit(s), got targets {targets}")
    if len(set(targets)) != len(targets):
        raise DuplicateTarget(f"duplicate qubit index in targets {targets}")
    for t in targets:
        if not 0 <= t < n_qubits:
            raise TargetOutOfRange(f"qubit index {t} outside [0, {n_qubits})")
    return targets


def apply_gate_tensor(tensor: np.ndarray, matrix: np.ndarray, axes) -> np.ndarray:
    """Contract a small unitary into the given axes of a rank-n qubit tensor.

    `tensor` has one length-2 axis per qubit (plus optionally a leading batch
    axis); `axes` names the axes the gate acts on, control first for CX.
    """
    arity = len(axes)
    gate_t = matrix.reshape((2,) * (2 * arity))
    out = np.tensordot(gate_t, tensor, axes=(list(range(arity, 2 * arity)), list(axes)))
    return np.moveaxis(out, list(range(arity)), list(axes))


def apply_gate(state: StateVector, gate: GateMatrix, targets) -> StateVector:
    """Apply a gate to the named qubits, returning a new StateVector.

    Qubit k corresponds to bit k of the basis label (qubit 0 = most
    significant bit of the amplitude index).
    """
    targets = _check_targets(targets, gate.arity, state.n_qubits)
    tensor = state.amplitudes.reshape((2,) * state.n_qubits)
    out = apply_gate_tensor(tensor, gate.matrix, targets)
    return StateVector(state.n_qubits, out.reshape(-1))


def dense_unitary(gate: GateMatrix, targets, n_qubits: int, max_qubits: int = 8) -> np.ndarray:
    """Explicit 2^n x 2^n expansion of a gate, for small-instance verification.

    Built entry by entry from the bit arithmetic of the index convention, so
    it shares no code path with `apply_gate`.
    """
    if n_qubits > max_qubits:
        raise OracleSizeExceeded(f"{n_qubits} qubits exceeds the oracle limit of {max_qubits}")
    targets = _check_targets(targets, gate.arity, n_qubits)
    dim = 1 << n_qubits
    arity = gate.arity
    full = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        col_sub = 0
        for k, q in enumerate(targets):
            col_sub = (col_sub << 1) | ((col >> (n_qubits - 1 - q)) & 1)
        for row_sub in range(1 << arity):
            amp = gate.matrix[row_sub, col_sub]
            if amp == 0:
                continue
            row = col
            for k, q in enumerate(targets):
                bit = (row_sub >> (arity - 1 - k)) & 1
                pos = n_qubits - 1 - q
                row = (row & ~(1 << pos)) | (bit << pos)
            full[row, col] += amp
    return full
