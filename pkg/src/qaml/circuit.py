"""Circuit intermediate representation, execution, and basis measurement.

Execution starts from |0...0> and folds gate applications in program order.
Measurement uses the Philox counter-based generator (platform-independent)
with inverse-CDF sampling over the cumulative probability sequence, so
identical (inputs, seed) always reproduce identical outcomes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import gates
from .errors import NonFiniteAngle, QamlError
from .state import StateVector, make_basis_state, probabilities


@dataclass(frozen=True)
class CircuitOp:
    """One gate application: mnemonic, qubit indices, optional angle."""

    gate_name: str
    targets: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        name = self.gate_name.upper()
        object.__setattr__(self, "gate_name", name)
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if name in gates.ROTATION_GATES:
            if self.angle is None:
                raise NonFiniteAngle(f"{name} op requires an angle")
        elif self.angle is not None:
            raise NonFiniteAngle(f"{name} op does not take an angle")

    def to_gate(self) -> gates.GateMatrix:
        return gates.gate_from_name(self.gate_name, self.angle)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate program on a fixed-size register."""

    n_qubits: int
    ops: tuple[CircuitOp, ...]
    measure_all: bool = False

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        ops = tuple(self.ops)
        for op in ops:
            arity = gates.GATE_ARITY.get(op.gate_name)
            if arity is None:
                raise QamlError(f"unknown gate {op.gate_name!r}")
            gates._check_targets(op.targets, arity, self.n_qubits)
        object.__setattr__(self, "ops", ops)


@dataclass(frozen=True)
class Histogram:
    """Shot counts keyed by measured bitstring."""

    shots: int
    counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("histogram counts must sum to shots")

    def to_json(self) -> str:
        return json.dumps({"shots": self.shots, "counts": self.counts}, sort_keys=True)


def execute(circuit: Circuit) -> StateVector:
    """Run the circuit from |0...0> and return the final state."""
    state = make_basis_state(circuit.n_qubits, "0" * circuit.n_qubits)
    for index, op in enumerate(circuit.ops):
        try:
            state = gates.apply_gate(state, op.to_gate(), op.targets)
        except QamlError as exc:
            exc.op_index = index
            exc.args = (f"op {index} ({op.gate_name}): {exc}",)
            raise
    return state


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def _draw_indices(state: StateVector, count: int, rng: np.random.Generator) -> np.ndarray:
    cdf = np.cumsum(probabilities(state))
    cdf[-1] = 1.0
    u = rng.random(count)
    return np.searchsorted(cdf, u, side="right")


def measure_once(state: StateVector, seed: int) -> tuple[str, StateVector]:
    """Sample one basis outcome and collapse; deterministic per (state, seed)."""
    index = int(_draw_indices(state, 1, _rng(seed))[0])
    bits = state.bitstring(index)
    return bits, make_basis_state(state.n_qubits, bits)


def sample_state(state: StateVector, shots: int, seed: int) -> Histogram:
    """Draw `shots` independent Born-rule samples from a fixed state."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    indices = _draw_indices(state, shots, _rng(seed))
    counts = np.bincount(indices, minlength=state.dim)
    result = {
        state.bitstring(i): int(c) for i, c in enumerate(counts) if c > 0
    }
    return Histogram(shots, result)


def sample(circuit: Circuit, shots: int, seed: int) -> Histogram:
    """Execute once, then draw `shots` independent Born-rule samples.

    The final state is reused across shots; it is never re-collapsed."""
    return sample_state(execute(circuit), shots, seed)
