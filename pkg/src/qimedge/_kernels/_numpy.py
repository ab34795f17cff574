"""Pure-numpy statevector kernels.

Fallback for the compiled core in ``_core.pyx``; both modules expose the
same functions, operating in place on a C-contiguous complex128 amplitude
array of length 2**m.  Qubit q addresses bit q of the array index.
"""

from __future__ import annotations

import math

import numpy as np


def apply_2x2(a: np.ndarray, q: int, u00: complex, u01: complex,
              u10: complex, u11: complex) -> None:
    step = 1 << q
    v = a.reshape(-1, 2, step)
    lo = v[:, 0, :].copy()
    hi = v[:, 1, :]
    v[:, 0, :] = u00 * lo + u01 * hi
    v[:, 1, :] = u10 * lo + u11 * hi


def apply_x(a: np.ndarray, q: int) -> None:
    step = 1 << q
    v = a.reshape(-1, 2, step)
    tmp = v[:, 0, :].copy()
    v[:, 0, :] = v[:, 1, :]
    v[:, 1, :] = tmp


def apply_controlled_ry(a: np.ndarray, cmask: int, target: int, angle: float) -> None:
    # Rotate the target-bit pairs of every index whose control bits are all 1.
    m = a.size.bit_length() - 1
    tbit = 1 << target
    free = [b for b in range(m) if not (cmask >> b) & 1 and b != target]
    js = np.arange(1 << len(free), dtype=np.int64)
    idx0 = np.full(js.shape, cmask, dtype=np.int64)
    for pos, b in enumerate(free):
        idx0 |= ((js >> pos) & 1) << b
    idx1 = idx0 | tbit
    c = math.cos(0.5 * angle)
    s = math.sin(0.5 * angle)
    a0 = a[idx0].copy()
    a1 = a[idx1]
    a[idx0] = c * a0 - s * a1
    a[idx1] = s * a0 + c * a1


def decrement(a: np.ndarray) -> None:
    a[:] = np.roll(a, -1)


def born_p1(a: np.ndarray, q: int) -> float:
    step = 1 << q
    v = a.reshape(-1, 2, step)[:, 1, :]
    return float(np.sum(v.real * v.real + v.imag * v.imag))


def collapse(a: np.ndarray, q: int, outcome: int, scale: float) -> None:
    step = 1 << q
    v = a.reshape(-1, 2, step)
    v[:, 1 - outcome, :] = 0.0
    v[:, outcome, :] *= scale
