"""qaml: qubit state-vector simulation, data encoders, and hybrid training."""

from .circuit import (
    Circuit,
    CircuitOp,
    Histogram,
    execute,
    measure_once,
    sample,
    sample_state,
)
from .encoding import (
    EncodingSpec,
    encode_amplitude,
    encode_angle,
    encode_basis,
    encode_superposition,
)
from .gates import (
    GateMatrix,
    apply_gate,
    dense_unitary,
    gate_cx,
    gate_h,
    gate_rx,
    gate_ry,
    gate_rz,
    gate_x,
    gate_y,
    gate_z,
)
from .hybrid import (
    AnsatzOp,
    AnsatzTemplate,
    LossSpec,
    TrainConfig,
    TrainReport,
    bind,
    diffusion,
    expectation_z,
    gradient,
    hadamard_layer,
    loss_value,
    train,
)
from .state import StateVector, make_basis_state, norm_squared, probabilities

__version__ = "0.1.0"
