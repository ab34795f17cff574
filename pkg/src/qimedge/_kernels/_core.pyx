# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels.

Same interface as ``_numpy``; operates in place on a C-contiguous
complex128 amplitude array of length 2**m.  Qubit q addresses bit q of
the array index.
"""

from libc.math cimport cos, sin


def apply_2x2(double complex[::1] a, Py_ssize_t q,
              double complex u00, double complex u01,
              double complex u10, double complex u11):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t step = (<Py_ssize_t>1) << q
    cdef Py_ssize_t block = step << 1
    cdef Py_ssize_t base, j, i0, i1
    cdef double complex lo, hi
    for base in range(0, n, block):
        for j in range(step):
            i0 = base + j
            i1 = i0 + step
            lo = a[i0]
            hi = a[i1]
            a[i0] = u00 * lo + u01 * hi
            a[i1] = u10 * lo + u11 * hi


def apply_x(double complex[::1] a, Py_ssize_t q):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t step = (<Py_ssize_t>1) << q
    cdef Py_ssize_t block = step << 1
    cdef Py_ssize_t base, j, i0, i1
    cdef double complex tmp
    for base in range(0, n, block):
        for j in range(step):
            i0 = base + j
            i1 = i0 + step
            tmp = a[i0]
            a[i0] = a[i1]
            a[i1] = tmp


def apply_controlled_ry(double complex[::1] a, unsigned long long cmask,
                        Py_ssize_t target, double angle):
    # Rotate the target-bit pairs of every index whose control bits are all 1.
    cdef Py_ssize_t n = a.shape[0]
    cdef int m = 0
    while ((<Py_ssize_t>1) << m) < n:
        m += 1
    cdef double c = cos(0.5 * angle)
    cdef double s = sin(0.5 * angle)
    cdef Py_ssize_t tbit = (<Py_ssize_t>1) << target
    cdef Py_ssize_t free_bits[64]
    cdef int nfree = 0
    cdef int b
    for b in range(m):
        if not (cmask >> b) & 1 and b != target:
            free_bits[nfree] = (<Py_ssize_t>1) << b
            nfree += 1
    cdef Py_ssize_t total = (<Py_ssize_t>1) << nfree
    cdef Py_ssize_t base0 = <Py_ssize_t>cmask
    cdef Py_ssize_t j, k, i0, i1
    cdef double complex a0, a1
    for j in range(total):
        k = base0
        for b in range(nfree):
            if (j >> b) & 1:
                k |= free_bits[b]
        i0 = k
        i1 = k | tbit
        a0 = a[i0]
        a1 = a[i1]
        a[i0] = c * a0 - s * a1
        a[i1] = s * a0 + c * a1


def decrement(double complex[::1] a):
    cdef Py_ssize_t n = a.shape[0]
    cdef double complex first = a[0]
    cdef Py_ssize_t k
    for k in range(n - 1):
        a[k] = a[k + 1]
    a[n - 1] = first


def born_p1(const double complex[::1] a, Py_ssize_t q):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t step = (<Py_ssize_t>1) << q
    cdef Py_ssize_t block = step << 1
    cdef long double acc = 0.0
    cdef Py_ssize_t base, j
    cdef double complex v
    for base in range(0, n, block):
        for j in range(step):
            v = a[base + j + step]
            acc += <long double>(v.real * v.real + v.imag * v.imag)
    return <double>acc


def collapse(double complex[::1] a, Py_ssize_t q, int outcome, double scale):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t step = (<Py_ssize_t>1) << q
    cdef Py_ssize_t block = step << 1
    cdef Py_ssize_t keep_off = step if outcome else 0
    cdef Py_ssize_t kill_off = 0 if outcome else step
    cdef Py_ssize_t base, j
    for base in range(0, n, block):
        for j in range(step):
            a[base + j + kill_off] = 0
            a[base + j + keep_off] = a[base + j + keep_off] * scale
