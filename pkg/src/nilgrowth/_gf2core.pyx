# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Bit-packed GF(2) elimination kernels.

Rows are C-contiguous arrays of little-endian 64-bit words: bit ``c`` of a
vector is ``(row[c >> 6] >> (c & 63)) & 1``. The reduction convention matches
``gf2_fallback``: pivot = lowest set bit, fully reduced basis, rows sorted by
pivot.
"""

import numpy as np

cimport numpy as cnp

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long)
    int __builtin_popcountll(unsigned long long)


cdef inline Py_ssize_t _lowest_bit(u64[:, ::1] m, Py_ssize_t r, Py_ssize_t words):
    cdef Py_ssize_t k
    for k in range(words):
        if m[r, k]:
            return (k << 6) + __builtin_ctzll(m[r, k])
    return -1


cdef inline void _xor_rows(u64[:, ::1] m, Py_ssize_t dst, Py_ssize_t src,
                           Py_ssize_t start_word, Py_ssize_t words):
    cdef Py_ssize_t k
    for k in range(start_word, words):
        m[dst, k] ^= m[src, k]


def rref(u64[:, ::1] m):
    """In-place reduced row echelon form of the packed matrix ``m``.

    Returns the list of pivot bit positions (ascending). On return,
    ``m[:rank]`` holds the reduced basis sorted by pivot and the remaining
    rows are zero.
    """
    cdef Py_ssize_t nrows = m.shape[0]
    cdef Py_ssize_t words = m.shape[1]
    cdef Py_ssize_t i, b, k, lead, w0
    cdef Py_ssize_t nbasis = 0
    cdef long long[::1] piv = np.empty(nrows, dtype=np.int64)
    cdef u64 tmp

    for i in range(nrows):
        for b in range(nbasis):
            w0 = piv[b] >> 6
            if (m[i, w0] >> (piv[b] & 63)) & 1:
                _xor_rows(m, i, b, w0, words)
        lead = _lowest_bit(m, i, words)
        if lead < 0:
            continue
        w0 = lead >> 6
        for b in range(nbasis):
            if (m[b, w0] >> (lead & 63)) & 1:
                _xor_rows(m, b, i, w0, words)
        if i != nbasis:
            for k in range(words):
                tmp = m[nbasis, k]
                m[nbasis, k] = m[i, k]
                m[i, k] = tmp
        piv[nbasis] = lead
        nbasis += 1

    order = np.argsort(np.asarray(piv[:nbasis]), kind="stable")
    base = np.asarray(m)
    base[:nbasis] = base[order]
    return sorted(piv[b] for b in range(nbasis))


def reduce_vector(u64[:, ::1] basis, pivots, u64[::1] v):
    """Reduce ``v`` in place against a pivot-sorted reduced basis."""
    cdef Py_ssize_t words = basis.shape[1]
    cdef Py_ssize_t b = 0
    cdef Py_ssize_t w0, k, p
    for p in pivots:
        w0 = p >> 6
        if (v[w0] >> (p & 63)) & 1:
            for k in range(w0, words):
                v[k] ^= basis[b, k]
        b += 1


def parity_and(u64[::1] a, u64[::1] b):
    """Parity of popcount(a & b); the GF(2) pairing of two packed vectors."""
    cdef Py_ssize_t k
    cdef int acc = 0
    for k in range(a.shape[0]):
        acc ^= __builtin_popcountll(a[k] & b[k]) & 1
    return acc
