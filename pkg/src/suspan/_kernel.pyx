# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled longest-match kernel; same contract as ``_kernel_py.longest_ends``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free

from ._kernel_py import longest_ends as _py_longest_ends

cdef enum:
    MAXK = 63


def longest_ends(const unsigned char[::1] sat, Py_ssize_t n, const unsigned char[::1] ops):
    cdef Py_ssize_t k = ops.shape[0]
    if k > MAXK:
        return _py_longest_ends(bytes(sat), n, bytes(ops))
    cdef list ends = [-1] * n
    if n == 0:
        return ends
    cdef uint64_t closure[MAXK + 1]
    cdef uint64_t accept = (<uint64_t>1) << k
    cdef uint64_t star = 0
    cdef uint64_t cur, live, mask
    cdef Py_ssize_t i, j, s, best
    closure[k] = accept
    for i in range(k - 1, -1, -1):
        closure[i] = (<uint64_t>1) << i
        if ops[i] != 0:
            closure[i] |= closure[i + 1]
        if ops[i] == 2:
            star |= (<uint64_t>1) << i
    cdef uint64_t *tokmask = <uint64_t *>calloc(n, sizeof(uint64_t))
    if tokmask == NULL:
        raise MemoryError()
    try:
        for i in range(k):
            for j in range(n):
                if sat[i * n + j]:
                    tokmask[j] |= (<uint64_t>1) << i
        for s in range(n):
            cur = closure[0]
            best = -1
            j = s
            while True:
                if cur & accept:
                    best = j
                if j == n:
                    break
                live = cur & tokmask[j]
                if live == 0:
                    break
                mask = ((live & ~star) << 1) | (live & star)
                cur = 0
                i = 0
                while mask:
                    if mask & 1:
                        cur |= closure[i]
                    mask >>= 1
                    i += 1
                j += 1
            if best > s:
                ends[s] = best
    finally:
        free(tokmask)
    return ends
