"""Dense statevector simulation for the image pipelines.

Only the machinery the encodings and the edge-detection scan need: state
construction, single-qubit gates, multi-controlled Ry, the cyclic
decrement permutation, and projective Z-basis measurement of one qubit.

Convention: bit k of the amplitude-array index is qubit k, so qubit 0 is
the least significant bit.  Operations return fresh states; amplitude
buffers are never shared or mutated after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as _k
from .errors import (
    ContractError,
    MeasurementError,
    QubitIndexError,
    SizeError,
    ValidationError,
)

MAX_QUBITS = 24          # desk-scale cap: 2**24 amplitudes = 256 MiB
NORM_ATOL = 1e-10        # state contract: | ||a||^2 - 1 |
UNITARY_ATOL = 1e-10
BASIS_ATOL = 1e-10       # residual amplitude allowed on a "basis" qubit
ZERO_PROB = 1e-12        # below this a measurement outcome is impossible

MEASUREMENT_POLICIES = ("forced-0", "forced-1", "max-prob", "sampled")

_SQRT1_2 = 1.0 / math.sqrt(2.0)


def hadamard() -> np.ndarray:
    return np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)


def pauli_x() -> np.ndarray:
    return np.array([[0, 1], [1, 0]], dtype=complex)


def ry(angle: float) -> np.ndarray:
    """Rotation about Y: ry(2*t)|0> = cos(t)|0> + sin(t)|1>."""
    c = math.cos(0.5 * angle)
    s = math.sin(0.5 * angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


class StateVector:
    """Normalized complex amplitudes over ``num_qubits`` qubits."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= MAX_QUBITS:
            raise SizeError(f"qubit count must be in [1, {MAX_QUBITS}], got {num_qubits}")
        num_qubits = int(num_qubits)
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amps.shape != (1 << num_qubits,):
            raise SizeError(
                f"expected {1 << num_qubits} amplitudes for {num_qubits} qubits, got {amps.shape}"
            )
        norm_sq = float(np.sum(amps.real * amps.real + amps.imag * amps.imag))
        if abs(norm_sq - 1.0) >= NORM_ATOL:
            raise ContractError(f"state norm^2 deviates from 1 by {abs(norm_sq - 1.0):.3e}")
        amps.flags.writeable = False
        self.num_qubits = num_qubits
        self.amplitudes = amps

    def copy_amplitudes(self) -> np.ndarray:
        """Writable copy of the amplitude buffer."""
        return self.amplitudes.copy()

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


@dataclass(frozen=True)
class MeasurementRecord:
    """One projective Z-basis measurement: which qubit, what came out, and
    the pre-collapse Born probability of that outcome."""

    qubit: int
    outcome: int
    probability: float


def _check_qubit(state: StateVector, q: int) -> None:
    if not isinstance(q, (int, np.integer)) or not 0 <= q < state.num_qubits:
        raise QubitIndexError(f"qubit {q} out of range for {state.num_qubits}-qubit state")


def zero_state(num_qubits: int) -> StateVector:
    """The all-zeros basis state |0...0>."""
    if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= MAX_QUBITS:
        raise SizeError(f"qubit count must be in [1, {MAX_QUBITS}], got {num_qubits}")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def apply_single_qubit(state: StateVector, qubit: int, gate: np.ndarray) -> StateVector:
    """Apply a 2x2 unitary to one qubit."""
    _check_qubit(state, qubit)
    u = np.asarray(gate, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValidationError(f"gate must be 2x2, got {u.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(2), rtol=0.0, atol=UNITARY_ATOL):
        raise ValidationError("gate is not unitary")
    arr = state.copy_amplitudes()
    _k.apply_2x2(arr, qubit, u[0, 0], u[0, 1], u[1, 0], u[1, 1])
    return StateVector(state.num_qubits, arr)


def apply_multi_controlled_ry(
    state: StateVector, controls: Sequence[int], target: int, angle: float
) -> StateVector:
    """Ry(angle) on ``target``, applied only where every control bit is 1."""
    _check_qubit(state, target)
    for c in controls:
        _check_qubit(state, c)
    if len(set(controls)) != len(controls) or target in controls:
        raise ValidationError("control/target qubits must be pairwise distinct")
    cmask = 0
    for c in controls:
        cmask |= 1 << c
    arr = state.copy_amplitudes()
    _k.apply_controlled_ry(arr, cmask, target, float(angle))
    return StateVector(state.num_qubits, arr)


def apply_decrement_permutation(state: StateVector) -> StateVector:
    """Cyclic amplitude shift: new[k] = old[(k+1) mod 2**m]."""
    arr = state.copy_amplitudes()
    _k.decrement(arr)
    return StateVector(state.num_qubits, arr)


def partial_measure(
    state: StateVector,
    qubit: int,
    policy: str = "max-prob",
    seed=None,
) -> tuple[MeasurementRecord, StateVector]:
    """Measure one qubit in the Z basis and collapse the register.

    ``policy`` selects the outcome: ``forced-0``/``forced-1`` demand it
    (and fail on zero-probability branches), ``max-prob`` deterministically
    takes the likelier outcome (ties go to 0), ``sampled`` draws it from a
    generator seeded with ``seed``.  The returned state is renormalized.
    """
    _check_qubit(state, qubit)
    if policy not in MEASUREMENT_POLICIES:
        raise ValidationError(f"unknown measurement policy {policy!r}")
    p1 = min(max(_k.born_p1(state.amplitudes, qubit), 0.0), 1.0)
    p0 = 1.0 - p1
    if policy == "forced-0" or policy == "forced-1":
        outcome = int(policy[-1])
        if (p0 if outcome == 0 else p1) <= ZERO_PROB:
            raise MeasurementError(f"outcome {outcome} has zero probability on qubit {qubit}")
    elif policy == "max-prob":
        outcome = 0 if p0 >= p1 else 1
    else:
        if seed is None:
            raise ValidationError("sampled policy requires a seed")
        rng = np.random.default_rng(seed)
        outcome = 0 if rng.random() < p0 else 1
        if (p0 if outcome == 0 else p1) <= ZERO_PROB:
            outcome = 1 - outcome
    prob = p0 if outcome == 0 else p1
    arr = state.copy_amplitudes()
    _k.collapse(arr, qubit, outcome, 1.0 / math.sqrt(prob))
    return MeasurementRecord(qubit, outcome, prob), StateVector(state.num_qubits, arr)


def discard_qubit(state: StateVector, qubit: int) -> StateVector:
    """Drop a qubit that is in a computational basis state.

    The qubit must carry no superposition: every amplitude with the
    opposite bit value has to be negligible, otherwise the remaining
    register is not a well-defined state on its own.
    """
    _check_qubit(state, qubit)
    if state.num_qubits < 2:
        raise SizeError("cannot discard the only qubit of a 1-qubit state")
    v = state.amplitudes.reshape(-1, 2, 1 << qubit)
    if np.max(np.abs(v[:, 1, :])) < BASIS_ATOL:
        value = 0
    elif np.max(np.abs(v[:, 0, :])) < BASIS_ATOL:
        value = 1
    else:
        raise ContractError(f"qubit {qubit} is entangled or in superposition")
    kept = np.ascontiguousarray(v[:, value, :]).ravel()
    kept = kept / np.linalg.norm(kept)
    return StateVector(state.num_qubits - 1, kept)


def prepend_qubit(state: StateVector, bit: int = 0) -> StateVector:
    """Tensor a fresh qubit in |bit> onto the register as new qubit 0.

    Existing qubits shift up by one: old amplitude i lands at index 2i+bit.
    """
    if bit not in (0, 1):
        raise ValidationError(f"bit must be 0 or 1, got {bit}")
    if state.num_qubits + 1 > MAX_QUBITS:
        raise SizeError(f"prepending would exceed the {MAX_QUBITS}-qubit cap")
    out = np.zeros(2 * state.amplitudes.size, dtype=np.complex128)
    out[bit::2] = state.amplitudes
    return StateVector(state.num_qubits + 1, out)
