"""Classical images to quantum states and back: QPIE, FRQI, NEQR.

QPIE stores intensities as normalized amplitudes over 2n position qubits.
FRQI stores them as rotation angles on one color qubit entangled with the
position register (color qubit on top, i.e. qubit 2n).  NEQR stores the
8-bit value as a basis bitstring on qubits 2n..2n+7.

Images are 2^n x 2^n with n >= 1; positions are flattened row-major, so
position index i is bit-for-bit the lower 2n bits of the amplitude index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .errors import ContractError, DegenerateInputError, SizeError, ValidationError
from .statevector import MAX_QUBITS, StateVector

IMAG_ATOL = 1e-10
FRQI_STRUCTURE_ATOL = 1e-8
NEQR_MAG_ATOL = 1e-12

_SQRT1_2 = 1.0 / math.sqrt(2.0)


def _side_exponent(side: int) -> int:
    n = side.bit_length() - 1
    if side < 2 or (1 << n) != side:
        raise SizeError(f"image side must be a power of two >= 2, got {side}")
    return n


@dataclass(frozen=True, eq=False)
class GrayImage:
    """2^n x 2^n grid of intensities in [0, 1], row-major."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.float64)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise SizeError(f"image must be square, got shape {p.shape}")
        _side_exponent(p.shape[0])
        if np.any(p < 0.0) or np.any(p > 1.0):
            raise ValidationError("intensities must lie in [0, 1]")
        object.__setattr__(self, "pixels", p)

    @property
    def side(self) -> int:
        return self.pixels.shape[0]

    @property
    def n(self) -> int:
        """Size exponent: side == 2**n."""
        return self.side.bit_length() - 1

    def flat(self) -> np.ndarray:
        return self.pixels.ravel()

    def transpose(self) -> "GrayImage":
        return GrayImage(self.pixels.T.copy())


@dataclass(frozen=True, eq=False)
class RgbImage:
    """2^n x 2^n grid of (R, G, B) triples, each channel an int in [0, 255]."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels)
        if p.ndim != 3 or p.shape[0] != p.shape[1] or p.shape[2] != 3:
            raise SizeError(f"expected (side, side, 3) pixels, got shape {p.shape}")
        _side_exponent(p.shape[0])
        if not np.issubdtype(p.dtype, np.integer):
            raise ValidationError("RGB channels must be integers")
        if np.any(p < 0) or np.any(p > 255):
            raise ValidationError("RGB channels must lie in [0, 255]")
        object.__setattr__(self, "pixels", p.astype(np.int64))

    @property
    def side(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True, eq=False)
class AngleVector:
    """4^n per-pixel angles in [0, pi/2], row-major."""

    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=np.float64).ravel()
        _position_exponent(a.size)
        if np.any(a < 0.0) or np.any(a > math.pi / 2):
            raise ValidationError("angles must lie in [0, pi/2]")
        object.__setattr__(self, "angles", a)

    @property
    def n(self) -> int:
        return _position_exponent(self.angles.size)


def _position_exponent(count: int) -> int:
    """n such that count == 4**n (n >= 1), else a size error."""
    if count >= 4 and count & (count - 1) == 0 and (count.bit_length() - 1) % 2 == 0:
        return (count.bit_length() - 1) // 2
    raise SizeError(f"pixel count must be a power of 4 (>= 4), got {count}")


@dataclass(frozen=True, eq=False)
class Neqr8State:
    """Statevector carrying an 8-bit image in NEQR form, plus its size exponent."""

    state: StateVector
    n: int

    def __post_init__(self):
        expected = 8 + 2 * self.n
        if self.state.num_qubits != expected:
            raise SizeError(
                f"NEQR state for n={self.n} needs {expected} qubits, got {self.state.num_qubits}"
            )
        mags = np.abs(self.state.amplitudes)
        hot = mags > NEQR_MAG_ATOL
        npix = 1 << (2 * self.n)
        if int(np.count_nonzero(hot)) != npix:
            raise ContractError(f"NEQR state must have exactly {npix} nonzero amplitudes")
        if np.any(np.abs(mags[hot] - 1.0 / (1 << self.n)) > NEQR_MAG_ATOL):
            raise ContractError("NEQR amplitudes must all have magnitude 1/2^n")


def qpie_encode(img: GrayImage) -> StateVector:
    """Encode intensities as normalized amplitudes over 2n qubits.

    Amplitude i is I_i / sqrt(sum of I_j^2); an all-black image has no
    normalization and is rejected.
    """
    flat = img.flat()
    norm = np.linalg.norm(flat)
    if norm == 0.0:
        raise DegenerateInputError("all-black image cannot be amplitude-encoded")
    return StateVector(2 * img.n, (flat / norm).astype(np.complex128))


def qpie_decode(state: StateVector) -> GrayImage:
    """Back out a grayscale image from non-negative real amplitudes.

    The global intensity scale is lost in encoding, so pixels are rescaled
    to make the brightest one 1.
    """
    if state.num_qubits % 2 != 0:
        raise ContractError("QPIE states live on an even number of qubits")
    amps = state.amplitudes
    if np.max(np.abs(amps.imag)) >= IMAG_ATOL or np.any(amps.real < -IMAG_ATOL):
        raise ContractError("amplitudes must be real and non-negative")
    vals = np.clip(amps.real, 0.0, None)
    side = 1 << (state.num_qubits // 2)
    return GrayImage((vals / vals.max()).reshape(side, side))


def intensities_to_angles(img: GrayImage) -> AngleVector:
    """Map intensity I to angle arccos(I), so white -> 0 and black -> pi/2."""
    return AngleVector(np.arccos(img.flat()))


def rgb_to_angle(r: int, g: int, b: int) -> float:
    """Pack an RGB triple into a single angle via base-256 positional weights."""
    for v in (r, g, b):
        if not isinstance(v, (int, np.integer)) or not 0 <= v <= 255:
            raise ValidationError(f"RGB channels must be integers in [0, 255], got {(r, g, b)}")
    return math.acos(r / 256 + g / 256**2 + b / 256**3)


def angle_to_rgb(angle: float) -> tuple[int, int, int]:
    """Invert :func:`rgb_to_angle` exactly on its range.

    Rounds 256^3 * cos(angle) to the nearest integer before the base-256
    digit split, which makes the roundtrip exact for every valid triple.
    """
    if not 0.0 <= angle <= math.pi / 2:
        raise ValidationError(f"angle must lie in [0, pi/2], got {angle}")
    v = round(256**3 * math.cos(angle))
    r = min(max(v // 256**2, 0), 255)
    g = min(max((v // 256) % 256, 0), 255)
    b = min(max(v % 256, 0), 255)
    return r, g, b


def frqi_encode(angles: AngleVector) -> StateVector:
    """Synthesize the FRQI state by running its preparation circuit.

    Hadamards spread the position register uniformly, then every pixel i
    gets a multi-controlled Ry(2*theta_i) on the color qubit, conjugated by
    the X pattern that maps position |i> onto the all-ones control pattern.
    Adjacent X patterns cancel pairwise, so between consecutive pixels only
    the differing position bits are flipped.
    """
    if not isinstance(angles, AngleVector):
        angles = AngleVector(np.asarray(angles))
    a = angles.angles
    n = angles.n
    npos = 2 * n
    total = npos + 1
    if total > MAX_QUBITS:
        raise SizeError(f"FRQI state for n={n} needs {total} qubits (cap is {MAX_QUBITS})")
    arr = np.zeros(1 << total, dtype=np.complex128)
    arr[0] = 1.0
    for q in range(npos):
        _k.apply_2x2(arr, q, _SQRT1_2, _SQRT1_2, _SQRT1_2, -_SQRT1_2)
    cmask = (1 << npos) - 1
    target = npos
    cur = 0
    for i in range(a.size):
        want = cmask ^ i
        flip = cur ^ want
        while flip:
            q = (flip & -flip).bit_length() - 1
            _k.apply_x(arr, q)
            flip &= flip - 1
        cur = want
        _k.apply_controlled_ry(arr, cmask, target, 2.0 * a[i])
    return StateVector(total, arr)


def frqi_decode(state: StateVector) -> AngleVector:
    """Read angles back from an FRQI state.

    Requires the FRQI structure: for every position the color-qubit pair
    must carry probability mass 1/4^n.
    """
    if state.num_qubits % 2 != 1:
        raise ContractError("FRQI states live on an odd number of qubits")
    npos = state.num_qubits - 1
    npix = 1 << npos
    amps = state.amplitudes
    if np.max(np.abs(amps.imag)) >= IMAG_ATOL:
        raise ContractError("FRQI amplitudes must be real")
    a0 = amps.real[:npix]
    a1 = amps.real[npix:]
    mass = a0 * a0 + a1 * a1
    if np.max(np.abs(mass - 1.0 / npix)) > FRQI_STRUCTURE_ATOL:
        raise ContractError("state does not have FRQI structure")
    theta = np.arctan2(a1, a0)
    return AngleVector(np.clip(theta, 0.0, math.pi / 2))


def neqr_encode(pixels: np.ndarray) -> Neqr8State:
    """Encode an 8-bit image by direct state assignment.

    Each position p with value v contributes amplitude 1/2^n on basis index
    v * 4^n + p (value bits on top of the position bits).
    """
    p = np.asarray(pixels)
    if not np.issubdtype(p.dtype, np.integer):
        raise ValidationError("NEQR pixels must be integers")
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise SizeError(f"image must be square, got shape {p.shape}")
    n = _side_exponent(p.shape[0])
    if np.any(p < 0) or np.any(p > 255):
        raise ValidationError("NEQR pixels must lie in [0, 255]")
    total = 8 + 2 * n
    if total > MAX_QUBITS:
        raise SizeError(
            f"NEQR state for side {p.shape[0]} needs {total} qubits (cap is {MAX_QUBITS})"
        )
    npix = 1 << (2 * n)
    amps = np.zeros(1 << total, dtype=np.complex128)
    idx = p.ravel().astype(np.int64) * npix + np.arange(npix, dtype=np.int64)
    amps[idx] = 1.0 / (1 << n)
    return Neqr8State(StateVector(total, amps), n)


def neqr_decode(encoded: Neqr8State) -> np.ndarray:
    """Recover the 8-bit image: one hot value bit-pattern per position."""
    n = encoded.n
    npix = 1 << (2 * n)
    mags = np.abs(encoded.state.amplitudes).reshape(256, npix)
    hot = mags > IMAG_ATOL
    counts = hot.sum(axis=0)
    if np.any(counts != 1):
        bad = int(np.flatnonzero(counts != 1)[0])
        raise ContractError(f"position {bad} has {int(counts[bad])} candidate values")
    values = np.argmax(hot, axis=0).astype(np.uint8)
    return values.reshape(1 << n, 1 << n)
