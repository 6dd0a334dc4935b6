# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Z/2 column reduction kernel.

Same contract as stablevol._reduction_py.reduce_columns. Columns live in
per-column word arrays allocated when a column is stored as a death; the
work column is a dense uint64 bitset with a tracked top word.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64


cdef inline int _top_bit(u64 w) nogil:
    cdef int b = 63
    while b >= 0:
        if w >> b & 1:
            return b
        b -= 1
    return -1


def reduce_columns(columns, order, bint clearing=True, bint track_v=False):
    cdef Py_ssize_t n = len(columns)
    cdef Py_ssize_t nwords = (n + 63) >> 6 if n else 1
    cdef u64* work = <u64*> calloc(nwords, sizeof(u64))
    cdef u64* vwork = <u64*> calloc(nwords, sizeof(u64)) if track_v else NULL
    cdef u64** stored = <u64**> calloc(n, sizeof(u64*))
    cdef u64** vstored = <u64**> calloc(n, sizeof(u64*)) if track_v else NULL
    cdef long* owner = <long*> malloc(n * sizeof(long))
    cdef long* topword = <long*> calloc(n, sizeof(long))
    cdef char* isbirth = <char*> calloc(n, 1)
    cdef Py_ssize_t i, j, r, k, w, top, vtop
    cdef long low
    if work == NULL or stored == NULL or owner == NULL or topword == NULL or isbirth == NULL:
        raise MemoryError()
    for i in range(n):
        owner[i] = -1
    pairs = []
    zeros = []
    v_out = {} if track_v else None
    try:
        for j in order:
            if clearing and isbirth[j]:
                continue
            memset(work, 0, nwords * sizeof(u64))
            top = -1
            for r in columns[j]:
                work[r >> 6] |= (<u64> 1) << (r & 63)
                if (r >> 6) > top:
                    top = r >> 6
            if track_v:
                memset(vwork, 0, nwords * sizeof(u64))
                vwork[j >> 6] |= (<u64> 1) << (j & 63)
                vtop = j >> 6
            low = -1
            while True:
                while top >= 0 and work[top] == 0:
                    top -= 1
                if top < 0:
                    low = -1
                    break
                low = (top << 6) + _top_bit(work[top])
                k = owner[low]
                if k < 0:
                    break
                w = topword[k]
                while w >= 0:
                    work[w] ^= stored[k][w]
                    w -= 1
                if track_v:
                    w = nwords - 1
                    while w >= 0:
                        vwork[w] ^= vstored[k][w]
                        w -= 1
            if low >= 0:
                owner[low] = j
                isbirth[low] = 1
                stored[j] = <u64*> malloc((top + 1) * sizeof(u64))
                if stored[j] == NULL:
                    raise MemoryError()
                memcpy(stored[j], work, (top + 1) * sizeof(u64))
                topword[j] = top
                if track_v:
                    vstored[j] = <u64*> malloc(nwords * sizeof(u64))
                    if vstored[j] == NULL:
                        raise MemoryError()
                    memcpy(vstored[j], vwork, nwords * sizeof(u64))
                pairs.append((low, j))
            else:
                zeros.append(j)
        essentials = sorted(j for j in zeros if not isbirth[j])
        if track_v:
            for _, j in pairs:
                bits = []
                for w in range(nwords):
                    if vstored[j][w]:
                        for i in range(64):
                            if vstored[j][w] >> i & 1:
                                bits.append((w << 6) + i)
                v_out[j] = bits
        return pairs, essentials, v_out
    finally:
        free(work)
        if vwork != NULL:
            free(vwork)
        for i in range(n):
            if stored[i] != NULL:
                free(stored[i])
        free(stored)
        if track_v:
            for i in range(n):
                if vstored[i] != NULL:
                    free(vstored[i])
            free(vstored)
        free(owner)
        free(topword)
        free(isbirth)
