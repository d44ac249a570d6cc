# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair-codegree kernels over bit-packed adjacency rows."""

from libc.stdint cimport uint64_t, int64_t, int32_t

import numpy as np

cdef extern from "popcount_kernels.h" nogil:
    void qr_common_counts(const uint64_t *bits, int64_t n, int64_t w, int32_t *out)
    int64_t qr_max_pair_int(const uint64_t *bits, int64_t n, int64_t w,
                            const int64_t *deg, int64_t num, int64_t den,
                            int64_t *bx, int64_t *by)
    double qr_max_pair_float(const uint64_t *bits, int64_t n, int64_t w,
                             const int64_t *deg, double p, int64_t *bx, int64_t *by)
    const char *qr_isa_name()
    void qr_symmetrize_upper(uint64_t *bits, int64_t n, int64_t w)

BACKEND = "compiled"


def isa():
    return qr_isa_name().decode()


def _aligned(bits):
    """Rows padded with zero words to a 64-byte stride, starting 64-byte aligned.

    Unaligned rows make every vector load straddle two cache lines.
    """
    bits = np.asarray(bits, dtype=np.uint64)
    rows, w = bits.shape
    w8 = (w + 7) & ~7
    if w8 == w and bits.flags.c_contiguous and bits.ctypes.data % 64 == 0:
        return bits
    buf = np.zeros(rows * w8 + 8, dtype=np.uint64)
    off = (-buf.ctypes.data % 64) // 8
    out = buf[off:off + rows * w8].reshape(rows, w8)
    out[:, :w] = bits
    return out


def common_counts(bits_in, Py_ssize_t n):
    cdef const uint64_t[:, ::1] bits = _aligned(bits_in)
    cdef int32_t[:, ::1] out
    result = np.zeros((n, n), dtype=np.int32)
    if n == 0:
        return result
    out = result
    with nogil:
        qr_common_counts(&bits[0, 0], n, bits.shape[1], &out[0, 0])
    return result


def max_pair_int(bits_in, const int64_t[::1] degrees, int64_t num, int64_t den):
    cdef const uint64_t[:, ::1] bits = _aligned(bits_in)
    cdef Py_ssize_t n = degrees.shape[0]
    cdef int64_t bx = -1, by = -1, best = 0
    if n < 2:
        return None
    with nogil:
        best = qr_max_pair_int(&bits[0, 0], n, bits.shape[1], &degrees[0],
                               num, den, &bx, &by)
    return int(best), int(bx), int(by)


def max_pair_float(bits_in, const int64_t[::1] degrees, double p):
    cdef const uint64_t[:, ::1] bits = _aligned(bits_in)
    cdef Py_ssize_t n = degrees.shape[0]
    cdef int64_t bx = -1, by = -1
    cdef double best = 0.0
    if n < 2:
        return None
    with nogil:
        best = qr_max_pair_float(&bits[0, 0], n, bits.shape[1], &degrees[0],
                                 p, &bx, &by)
    return float(best), int(bx), int(by)


def symmetrize_upper(uint64_t[:, ::1] bits):
    """In place: drop bits on or below the diagonal and mirror the rest."""
    cdef Py_ssize_t n = bits.shape[0]
    if n == 0:
        return
    with nogil:
        qr_symmetrize_upper(&bits[0, 0], n, bits.shape[1])
