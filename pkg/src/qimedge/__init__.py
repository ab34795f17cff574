"""Quantum image encodings and Hadamard edge detection on a dense
statevector simulator."""

from ._kernels import BACKEND as _BACKEND
from .encoders import (
    AngleVector,
    GrayImage,
    Neqr8State,
    RgbImage,
    angle_to_rgb,
    frqi_decode,
    frqi_encode,
    intensities_to_angles,
    neqr_decode,
    neqr_encode,
    qpie_decode,
    qpie_encode,
    rgb_to_angle,
)
from .postprocess import (
    EdgeMap,
    Threshold,
    compute_threshold,
    detect_edges_modified,
    detect_edges_traditional,
    superimpose,
)
from .qhed import (
    DifferenceGrid,
    PipelineConfig,
    ScanDirection,
    extract_differences,
    frqi_measure_and_prepare,
    qhed_core,
    scan_frqi,
    scan_qpie,
)
from .statevector import (
    MeasurementRecord,
    StateVector,
    apply_decrement_permutation,
    apply_multi_controlled_ry,
    apply_single_qubit,
    discard_qubit,
    hadamard,
    partial_measure,
    pauli_x,
    prepend_qubit,
    ry,
    zero_state,
)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Which kernel implementation is active: 'cython' or 'numpy'."""
    return _BACKEND


__all__ = [
    "AngleVector",
    "DifferenceGrid",
    "EdgeMap",
    "GrayImage",
    "MeasurementRecord",
    "Neqr8State",
    "PipelineConfig",
    "RgbImage",
    "ScanDirection",
    "StateVector",
    "Threshold",
    "angle_to_rgb",
    "apply_decrement_permutation",
    "apply_multi_controlled_ry",
    "apply_single_qubit",
    "compute_threshold",
    "detect_edges_modified",
    "detect_edges_traditional",
    "discard_qubit",
    "extract_differences",
    "frqi_decode",
    "frqi_encode",
    "frqi_measure_and_prepare",
    "hadamard",
    "intensities_to_angles",
    "kernel_backend",
    "neqr_decode",
    "neqr_encode",
    "partial_measure",
    "pauli_x",
    "prepend_qubit",
    "qhed_core",
    "qpie_decode",
    "qpie_encode",
    "rgb_to_angle",
    "ry",
    "scan_frqi",
    "scan_qpie",
    "superimpose",
    "zero_state",
]
