"""Hadamard edge-detection scans over amplitude-encoded images.

The core circuit prepends an ancilla qubit, puts it in superposition with
a Hadamard, cyclically decrements the amplitude index, and applies a
second Hadamard.  For an input amplitude vector (c_0 .. c_{N-1}) the
result interleaves neighbor sums and differences:

    ((c_0+c_1)/2, (c_0-c_1)/2, (c_1+c_2)/2, (c_1-c_2)/2, ..., (c_{N-1}-c_0)/2)

so the odd slots hold the pixel-pair differences for a horizontal scan.
Vertical scans run the same circuit on the transposed image and transpose
the resulting grid back.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .encoders import GrayImage, frqi_encode, intensities_to_angles, qpie_encode
from .errors import ContractError, SizeError, ValidationError
from .statevector import (
    MEASUREMENT_POLICIES,
    MeasurementRecord,
    StateVector,
    apply_decrement_permutation,
    apply_single_qubit,
    discard_qubit,
    hadamard,
    partial_measure,
    prepend_qubit,
)

IMAG_ATOL = 1e-10

BOUNDARY_MODES = ("clipped", "cyclic")
ANCILLA_MODES = ("plus", "paper-literal")
METHODS = ("qpie", "frqi")


class ScanDirection(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass(frozen=True, eq=False)
class DifferenceGrid:
    """Signed neighbor differences from one scan, in image orientation.

    values[r, c] is the difference between pixel (r, c) and its right
    neighbor (horizontal) or the pixel below (vertical).  In clipped mode
    the entries whose pixel pair straddles a row end of the scan
    orientation, including the cyclic wrap term, are zeroed.
    """

    values: np.ndarray
    direction: ScanDirection
    boundary_mode: str

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise SizeError(f"grid must be square, got shape {v.shape}")
        side = v.shape[0]
        if side < 2 or side & (side - 1) != 0:
            raise SizeError(f"grid side must be a power of two >= 2, got {side}")
        if self.boundary_mode not in BOUNDARY_MODES:
            raise ValidationError(f"unknown boundary mode {self.boundary_mode!r}")
        if not isinstance(self.direction, ScanDirection):
            raise ValidationError("direction must be a ScanDirection")
        if self.boundary_mode == "clipped":
            edge = v[:, -1] if self.direction is ScanDirection.HORIZONTAL else v[-1, :]
            if np.any(edge != 0.0):
                raise ValidationError("clipped grids must be zero along the scan boundary")
        object.__setattr__(self, "values", v)

    @property
    def side(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.side.bit_length() - 1

    def clipped_mask(self) -> np.ndarray:
        """Boolean mask of entries zeroed by the clipped boundary rule."""
        mask = np.zeros(self.values.shape, dtype=bool)
        if self.boundary_mode == "clipped":
            if self.direction is ScanDirection.HORIZONTAL:
                mask[:, -1] = True
            else:
                mask[-1, :] = True
        return mask


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the FRQI-measure-then-scan pipeline."""

    method: str = "frqi"
    branch_policy: str = "max-prob"
    boundary_mode: str = "clipped"
    seed: int = 0
    ancilla: str = "plus"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(f"unknown method {self.method!r}")
        if self.branch_policy not in MEASUREMENT_POLICIES:
            raise ValidationError(f"unknown branch policy {self.branch_policy!r}")
        if self.boundary_mode not in BOUNDARY_MODES:
            raise ValidationError(f"unknown boundary mode {self.boundary_mode!r}")
        if self.ancilla not in ANCILLA_MODES:
            raise ValidationError(f"unknown ancilla mode {self.ancilla!r}")


def qhed_core(state: StateVector, ancilla: str = "plus") -> StateVector:
    """Run the ancilla-Hadamard / decrement / Hadamard sequence.

    The ancilla becomes qubit 0.  In ``plus`` mode it starts in |0>, which
    puts the differences in the odd output slots; ``paper-literal`` starts
    it in |1> instead, moving the differences (sign-flipped) to the even
    slots and the sums to the odd ones.
    """
    if ancilla not in ANCILLA_MODES:
        raise ValidationError(f"unknown ancilla mode {ancilla!r}")
    x = prepend_qubit(state, bit=0 if ancilla == "plus" else 1)
    x = apply_single_qubit(x, 0, hadamard())
    x = apply_decrement_permutation(x)
    return apply_single_qubit(x, 0, hadamard())


def extract_differences(
    state: StateVector,
    side: int,
    direction: ScanDirection,
    boundary_mode: str = "clipped",
    ancilla: str = "plus",
) -> DifferenceGrid:
    """Pull the neighbor differences out of a post-scan state.

    Reads the ancilla-|1> slots (or ancilla-|0> in paper-literal mode),
    which must be real up to numerical noise, reshapes them to the image
    grid, applies the boundary rule, and transposes back for vertical
    scans.
    """
    if boundary_mode not in BOUNDARY_MODES:
        raise ValidationError(f"unknown boundary mode {boundary_mode!r}")
    if ancilla not in ANCILLA_MODES:
        raise ValidationError(f"unknown ancilla mode {ancilla!r}")
    if state.amplitudes.size != 2 * side * side:
        raise ContractError(
            f"state has {state.amplitudes.size} amplitudes, expected {2 * side * side}"
        )
    slots = state.amplitudes[1::2] if ancilla == "plus" else state.amplitudes[0::2]
    if np.max(np.abs(slots.imag)) >= IMAG_ATOL:
        raise ContractError("difference amplitudes have non-negligible imaginary parts")
    grid = slots.real.reshape(side, side).copy()
    if boundary_mode == "clipped":
        grid[:, -1] = 0.0
    if direction is ScanDirection.VERTICAL:
        grid = grid.T.copy()
    return DifferenceGrid(grid, direction, boundary_mode)


def scan_qpie(
    img: GrayImage,
    direction: ScanDirection,
    boundary_mode: str = "clipped",
) -> DifferenceGrid:
    """Amplitude-encode the image and scan it in one direction."""
    work = img.transpose() if direction is ScanDirection.VERTICAL else img
    state = qhed_core(qpie_encode(work))
    return extract_differences(state, img.side, direction, boundary_mode)


def frqi_measure_and_prepare(
    img: GrayImage,
    branch_policy: str = "max-prob",
    seed=None,
) -> tuple[MeasurementRecord, StateVector]:
    """FRQI-encode the image, measure the color qubit, drop it.

    Branch 0 leaves the amplitude-encoded original image (intensities
    renormalized); branch 1 leaves the encoding of sqrt(1 - I^2), which has
    the same edge locations with opposite difference signs.  The record
    carries the Born probability of the branch taken.
    """
    state = frqi_encode(intensities_to_angles(img))
    color = state.num_qubits - 1
    record, state = partial_measure(state, color, branch_policy, seed)
    return record, discard_qubit(state, color)


def scan_frqi(
    img: GrayImage,
    direction: ScanDirection,
    config: PipelineConfig = PipelineConfig(),
) -> tuple[DifferenceGrid, MeasurementRecord]:
    """Measure-then-scan pipeline: the measured qubit is reused as ancilla.

    After the collapse the color qubit is renormalized into the ancilla
    start state (|0> in plus mode, |1> in paper-literal mode) regardless of
    the outcome, then the scan circuit runs on the collapsed register.
    Horizontal and vertical scans re-run the full encode and measurement;
    sampled branches draw from per-direction children of ``config.seed``.
    """
    work = img.transpose() if direction is ScanDirection.VERTICAL else img
    seed = None
    if config.branch_policy == "sampled":
        seed = [config.seed, 0 if direction is ScanDirection.HORIZONTAL else 1]
    record, state = frqi_measure_and_prepare(work, config.branch_policy, seed)
    state = qhed_core(state, ancilla=config.ancilla)
    grid = extract_differences(state, img.side, direction, config.boundary_mode, config.ancilla)
    return grid, record
