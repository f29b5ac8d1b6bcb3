"""Hybrid quantum-classical training: Hadamard layer, parameterized ansatz,
amplitude adjustment, Z-expectation readout, gradients, and the iterative
optimization loop.

The quantum pass per sample is: optional Hadamard layer, data encoding, the
bound ansatz. The classical pass reads a single-qubit Z expectation, scores
it with mean squared error against the label, and updates the ansatz angles
by gradient descent.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import gates
from .circuit import Circuit, CircuitOp, Histogram, _rng, sample_state
from .encoding import EncodingSpec, encode_amplitude, encode_angle
from .errors import (
    ConfigError,
    EmptyDataset,
    NonFiniteParam,
    ParamCountMismatch,
    QubitMismatch,
    TargetOutOfRange,
)
from .state import StateVector, make_basis_state, probabilities

SHIFT = math.pi / 2.0

GRADIENT_METHODS = ("parameter_shift", "finite_difference")


@dataclass(frozen=True)
class AnsatzOp:
    """Template op: either a fixed gate, a literal-angle rotation, or a
    rotation whose angle is parameter slot `param`."""

    gate_name: str
    targets: tuple[int, ...]
    angle: float | None = None
    param: int | None = None

    def __post_init__(self):
        name = self.gate_name.upper()
        object.__setattr__(self, "gate_name", name)
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if name in gates.ROTATION_GATES:
            if (self.angle is None) == (self.param is None):
                raise ValueError(f"{name} op needs exactly one of angle or param slot")
        elif self.angle is not None or self.param is not None:
            raise ValueError(f"{name} op takes neither angle nor param slot")


@dataclass(frozen=True)
class AnsatzTemplate:
    """A circuit skeleton with m symbolic rotation parameters p0..p(m-1)."""

    n_qubits: int
    ops: tuple[AnsatzOp, ...]
    n_params: int

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if self.n_params < 0:
            raise ValueError("n_params must be non-negative")
        used = set()
        for op in self.ops:
            arity = gates.GATE_ARITY.get(op.gate_name)
            if arity is None:
                raise ValueError(f"unknown gate {op.gate_name!r}")
            gates._check_targets(op.targets, arity, self.n_qubits)
            if op.param is not None:
                if not 0 <= op.param < self.n_params:
                    raise ValueError(f"parameter slot p{op.param} out of range")
                used.add(op.param)
        if used != set(range(self.n_params)):
            missing = sorted(set(range(self.n_params)) - used)
            raise ValueError(f"unused parameter slots: {missing}")


def hadamard_layer(n_qubits: int) -> Circuit:
    """One H per qubit; execution yields the uniform superposition."""
    return Circuit(n_qubits, tuple(CircuitOp("H", (q,)) for q in range(n_qubits)))


def _check_params(template: AnsatzTemplate, params) -> np.ndarray:
    params = np.asarray(params, dtype=np.float64)
    if params.shape != (template.n_params,):
        raise ParamCountMismatch(
            f"expected {template.n_params} parameters, got shape {params.shape}"
        )
    if not np.all(np.isfinite(params)):
        raise NonFiniteParam(f"parameters must be finite, got {params}")
    return params


def bind(template: AnsatzTemplate, params) -> Circuit:
    """Substitute concrete angles into every parameter slot."""
    params = _check_params(template, params)
    ops = []
    for op in template.ops:
        angle = op.angle if op.param is None else float(params[op.param])
        ops.append(CircuitOp(op.gate_name, op.targets, angle))
    return Circuit(template.n_qubits, tuple(ops))


def diffusion(state: StateVector) -> StateVector:
    """Inversion about the mean: reflect amplitudes through the uniform state."""
    amps = state.amplitudes
    return StateVector(state.n_qubits, 2.0 * amps.mean() - amps)


def _z_signs(n_qubits: int, qubit: int) -> np.ndarray:
    if not 0 <= qubit < n_qubits:
        raise TargetOutOfRange(f"qubit index {qubit} outside [0, {n_qubits})")
    bits = (np.arange(1 << n_qubits) >> (n_qubits - 1 - qubit)) & 1
    return 1.0 - 2.0 * bits


def expectation_z(state: StateVector, qubit: int) -> float:
    """Z expectation of one qubit: P(bit=0) - P(bit=1)."""
    return float(probabilities(state) @ _z_signs(state.n_qubits, qubit))


@dataclass(frozen=True)
class LossSpec:
    """Readout loss over fixed encoded input states.

    With labels: mean squared error of the Z expectation against each label.
    Without labels: the mean Z expectation itself (a raw observable loss).
    """

    inputs: tuple[StateVector, ...]
    labels: tuple[float, ...] | None = None
    qubit: int = 0

    def __post_init__(self):
        inputs = tuple(self.inputs)
        if not inputs:
            raise EmptyDataset("loss needs at least one input state")
        if self.labels is not None:
            labels = tuple(float(y) for y in self.labels)
            if len(labels) != len(inputs):
                raise ParamCountMismatch("one label per input state required")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "inputs", inputs)


# ---------------------------------------------------------------------------
# Batched evaluation: all sample states advance through the ansatz together.


def _batch_tensor(states: tuple[StateVector, ...]) -> np.ndarray:
    n = states[0].n_qubits
    batch = np.stack([s.amplitudes for s in states])
    return batch.reshape((len(states),) + (2,) * n)


def _bound_angles(template: AnsatzTemplate, params: np.ndarray) -> list:
    return [
        op.angle if op.param is None else float(params[op.param])
        for op in template.ops
    ]


def _run_ansatz(tensor: np.ndarray, template: AnsatzTemplate, angles: list) -> np.ndarray:
    out = tensor
    for op, angle in zip(template.ops, angles):
        if op.gate_name in gates.ROTATION_GATES:
            matrix = gates.rotation_matrix(op.gate_name, angle)
        else:
            matrix = gates.gate_from_name(op.gate_name).matrix
        out = gates.apply_gate_tensor(out, matrix, [1 + q for q in op.targets])
    return out


def _batch_expectations(
    tensor: np.ndarray,
    template: AnsatzTemplate,
    angles: list,
    signs: np.ndarray,
    shots: int = 0,
    rng=None,
) -> np.ndarray:
    out = _run_ansatz(tensor, template, angles)
    flat = out.reshape(out.shape[0], -1)
    probs = flat.real**2 + flat.imag**2
    if shots == 0:
        return probs @ signs
    cdf = np.cumsum(probs, axis=1)
    cdf[:, -1] = 1.0
    estimates = np.empty(probs.shape[0])
    for row in range(probs.shape[0]):
        idx = np.searchsorted(cdf[row], rng.random(shots), side="right")
        estimates[row] = signs[idx].mean()
    return estimates


def _loss_and_grad_factors(expectations: np.ndarray, labels) -> tuple[float, np.ndarray]:
    m = expectations.size
    if labels is None:
        return float(expectations.mean()), np.full(m, 1.0 / m)
    residual = expectations - np.asarray(labels, dtype=np.float64)
    return float(np.mean(residual**2)), 2.0 * residual / m


def loss_value(template: AnsatzTemplate, params, loss: LossSpec) -> float:
    params = _check_params(template, params)
    tensor = _batch_tensor(loss.inputs)
    signs = _z_signs(template.n_qubits, loss.qubit)
    exps = _batch_expectations(tensor, template, _bound_angles(template, params), signs)
    return _loss_and_grad_factors(exps, loss.labels)[0]


def gradient(
    template: AnsatzTemplate,
    params,
    loss: LossSpec,
    method: str = "parameter_shift",
    fd_step: float = 1e-5,
) -> np.ndarray:
    """Gradient of the loss with respect to the ansatz parameters.

    parameter_shift evaluates each rotation occurrence at +/- pi/2 (exact for
    RX/RY/RZ generators, summed over occurrences of a shared parameter);
    finite_difference takes central differences of the full loss.
    """
    params = _check_params(template, params)
    if method not in GRADIENT_METHODS:
        raise ConfigError(f"unknown gradient method {method!r}")
    if method == "finite_difference":
        grad = np.empty(template.n_params)
        for j in range(template.n_params):
            hi, lo = params.copy(), params.copy()
            hi[j] += fd_step
            lo[j] -= fd_step
            grad[j] = (loss_value(template, hi, loss) - loss_value(template, lo, loss)) / (
                2.0 * fd_step
            )
        return grad

    tensor = _batch_tensor(loss.inputs)
    signs = _z_signs(template.n_qubits, loss.qubit)
    angles = _bound_angles(template, params)
    exps = _batch_expectations(tensor, template, angles, signs)
    _, factors = _loss_and_grad_factors(exps, loss.labels)
    d_exps = np.zeros((template.n_params, exps.size))
    for op_idx, op in enumerate(template.ops):
        if op.param is None:
            continue
        for delta, sign in ((SHIFT, 0.5), (-SHIFT, -0.5)):
            shifted = list(angles)
            shifted[op_idx] = shifted[op_idx] + delta
            d_exps[op.param] += sign * _batch_expectations(
                tensor, template, shifted, signs
            )
    return d_exps @ factors


# ---------------------------------------------------------------------------
# Training loop


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    max_iterations: int = 2000
    gradient_method: str = "parameter_shift"
    fd_step: float | None = None
    shots: int = 0
    seed: int = 0
    convergence_tol: float = 1e-6
    hadamard_layer: bool = False

    def __post_init__(self):
        if self.learning_rate < 0:
            raise ConfigError("learning_rate must be non-negative")
        if self.max_iterations < 0:
            raise ConfigError("max_iterations must be non-negative")
        if self.gradient_method not in GRADIENT_METHODS:
            raise ConfigError(f"unknown gradient method {self.gradient_method!r}")
        if self.gradient_method == "finite_difference":
            if self.fd_step is None:
                object.__setattr__(self, "fd_step", 1e-5)
            elif self.fd_step <= 0:
                raise ConfigError("fd_step must be positive")
        elif self.fd_step is not None:
            raise ConfigError("fd_step only applies to finite_difference")
        if self.shots < 0:
            raise ConfigError("shots must be >= 0")
        if self.convergence_tol < 0:
            raise ConfigError("convergence_tol must be non-negative")

    @classmethod
    def from_json(cls, text: str) -> "TrainConfig":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid config JSON: {exc}") from None
        if not isinstance(payload, dict):
            raise ConfigError("config JSON must be an object")
        known = set(cls.__dataclass_fields__)
        unknown = set(payload) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            return cls(**payload)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class TrainReport:
    loss_trace: tuple[float, ...]
    final_params: tuple[float, ...]
    iterations_run: int
    converged: bool
    final_histogram: Histogram | None = None
    circuit_depth: int = 0

    def to_json(self) -> str:
        payload = {
            "loss_trace": list(self.loss_trace),
            "final_params": list(self.final_params),
            "iterations_run": self.iterations_run,
            "converged": self.converged,
            "final_histogram": None
            if self.final_histogram is None
            else {"shots": self.final_histogram.shots, "counts": self.final_histogram.counts},
            "circuit_depth": self.circuit_depth,
        }
        return json.dumps(payload, sort_keys=True)


def _encode_sample(
    features, encoding: EncodingSpec, use_hadamard: bool
) -> tuple[StateVector, int]:
    """Encoded input state for one sample and the op count it took."""
    if encoding.method == "angle":
        circ = encode_angle(features, encoding.axis)
        n = circ.n_qubits
        if use_hadamard:
            state = _uniform_state(n)
        else:
            state = make_basis_state(n, "0" * n)
        for op in circ.ops:
            state = gates.apply_gate(state, op.to_gate(), op.targets)
        return state, len(circ.ops) + (n if use_hadamard else 0)
    if use_hadamard:
        raise ConfigError(
            f"hadamard_layer is incompatible with state-preparing encoding {encoding.method!r}"
        )
    if encoding.method == "amplitude":
        return encode_amplitude(features), 0
    # basis and superposition both read a single 0/1 feature row as one label
    bits = []
    for v in features:
        if v not in (0.0, 1.0):
            raise ConfigError(
                f"{encoding.method} encoding requires 0/1 features, got {v}"
            )
        bits.append("1" if v else "0")
    return make_basis_state(len(bits), "".join(bits)), 0


def _uniform_state(n_qubits: int) -> StateVector:
    amps = np.full(1 << n_qubits, 2.0 ** (-n_qubits / 2.0), dtype=np.complex128)
    return StateVector(n_qubits, amps)


def train(
    template: AnsatzTemplate,
    data,
    encoding: EncodingSpec,
    config: TrainConfig,
    initial_params=None,
) -> TrainReport:
    """Gradient-descent training of the ansatz angles against +/-1 labels.

    Exact-expectation mode (shots=0) is fully deterministic; sampled mode
    draws shot noise from the seeded generator.
    """
    data = list(data)
    if not data:
        raise EmptyDataset("training data must be non-empty")
    labels = []
    states = []
    encode_depth = 0
    for features, label in data:
        if label not in (-1, 1):
            raise EmptyDataset(f"label must be -1 or +1, got {label}")
        labels.append(float(label))
        state, depth = _encode_sample(features, encoding, config.hadamard_layer)
        if state.n_qubits != template.n_qubits:
            raise QubitMismatch(
                f"encoding produced {state.n_qubits} qubits, template has {template.n_qubits}"
            )
        states.append(state)
        encode_depth = depth

    tensor = _batch_tensor(tuple(states))
    signs = _z_signs(template.n_qubits, 0)
    labels_arr = np.asarray(labels)
    loss = LossSpec(tuple(states), tuple(labels), qubit=0)

    if initial_params is None:
        params = np.zeros(template.n_params)
    else:
        params = _check_params(template, initial_params)

    rng = _rng(config.seed) if config.shots > 0 else None
    trace: list[float] = []
    converged = False
    prev = None
    for _ in range(config.max_iterations):
        exps = _batch_expectations(
            tensor, template, _bound_angles(template, params), signs, config.shots, rng
        )
        value, _ = _loss_and_grad_factors(exps, labels_arr)
        trace.append(value)
        if prev is not None and abs(value - prev) < config.convergence_tol:
            converged = True
            break
        prev = value
        if config.shots > 0:
            grad = _sampled_gradient(tensor, template, params, labels_arr, signs, config, rng)
        elif config.gradient_method == "finite_difference":
            grad = gradient(template, params, loss, "finite_difference", config.fd_step)
        else:
            grad = gradient(template, params, loss, "parameter_shift")
        params = params - config.learning_rate * grad

    final_histogram = None
    if config.shots > 0:
        final_state_tensor = _run_ansatz(
            tensor[:1], template, _bound_angles(template, params)
        )
        amps = final_state_tensor.reshape(-1)
        final_state = StateVector(template.n_qubits, amps / np.linalg.norm(amps))
        final_histogram = sample_state(final_state, config.shots, config.seed)

    return TrainReport(
        loss_trace=tuple(trace),
        final_params=tuple(float(p) for p in params),
        iterations_run=len(trace),
        converged=converged,
        final_histogram=final_histogram,
        circuit_depth=encode_depth + len(template.ops),
    )


def _sampled_gradient(tensor, template, params, labels_arr, signs, config, rng):
    angles = _bound_angles(template, params)
    exps = _batch_expectations(tensor, template, angles, signs, config.shots, rng)
    _, factors = _loss_and_grad_factors(exps, labels_arr)
    d_exps = np.zeros((template.n_params, exps.size))
    for op_idx, op in enumerate(template.ops):
        if op.param is None:
            continue
        for delta, sign in ((SHIFT, 0.5), (-SHIFT, -0.5)):
            shifted = list(angles)
            shifted[op_idx] = shifted[op_idx] + delta
            d_exps[op.param] += sign * _batch_expectations(
                tensor, template, shifted, signs, config.shots, rng
            )
    return d_exps @ factors
