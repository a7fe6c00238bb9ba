# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels.

``rank_int64`` runs the same echelon-insertion elimination as
``_pykernels.rank_int`` on checked int64 arithmetic and returns -1 as soon
as an input or an intermediate value leaves the int64 range; the caller then
falls back to the big-integer path.  ``rank_mod_p`` works over GF(p) for
p < 2**31.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy

cdef extern from *:
    """
    static inline int dg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int dg_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int dg_mul_ovf(long long a, long long b, long long *r) nogil
    int dg_sub_ovf(long long a, long long b, long long *r) nogil


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef long long NORMALIZE_ABOVE = 1 << 20


cdef int _load(dict row, long long *v, Py_ssize_t ncols, long long p,
               Py_ssize_t *lo, Py_ssize_t *hi) except -2:
    # returns 0 on success, 1 if an entry does not fit in int64
    cdef Py_ssize_t k
    cdef long long x
    lo[0] = ncols
    hi[0] = -1
    for key, val in row.items():
        k = key
        if k < 0 or k >= ncols:
            raise IndexError("column index %d out of range" % k)
        if p:
            x = val % p
        else:
            try:
                x = val
            except OverflowError:
                return 1
        if x == 0:
            continue
        v[k] = x
        if k < lo[0]:
            lo[0] = k
        if k > hi[0]:
            hi[0] = k
    return 0


def rank_int64(list rows, Py_ssize_t ncols):
    """Rank over Q of sparse integer rows, or -1 on int64 overflow."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef Py_ssize_t maxpiv = nrows if nrows < ncols else ncols
    cdef long long *store = <long long *>malloc(maxpiv * ncols * sizeof(long long))
    cdef long long *v = <long long *>malloc(ncols * sizeof(long long))
    cdef Py_ssize_t *pcol = <Py_ssize_t *>malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t *plast = <Py_ssize_t *>malloc(maxpiv * sizeof(Py_ssize_t))
    if store == NULL or v == NULL or pcol == NULL or plast == NULL:
        free(store); free(v); free(pcol); free(plast)
        raise MemoryError()
    cdef Py_ssize_t i, k, c, lo, hi, end, slot
    cdef long long a, b, g, ma, mb, t1, t2, big
    cdef long long *prow
    cdef Py_ssize_t rank = 0
    cdef int overflow = 0
    for k in range(ncols):
        pcol[k] = -1
    try:
        for i in range(nrows):
            memset(v, 0, ncols * sizeof(long long))
            if _load(rows[i], v, ncols, 0, &lo, &hi):
                overflow = 1
                break
            c = lo
            while c <= hi:
                if v[c] == 0:
                    c += 1
                    continue
                slot = pcol[c]
                if slot < 0:
                    g = 0
                    for k in range(c, hi + 1):
                        if v[k]:
                            g = _gcd(g, v[k])
                    if g > 1:
                        for k in range(c, hi + 1):
                            v[k] //= g
                    slot = rank
                    memcpy(&store[slot * ncols], v, ncols * sizeof(long long))
                    pcol[c] = slot
                    plast[slot] = hi
                    rank += 1
                    break
                prow = &store[slot * ncols]
                a = prow[c]
                b = v[c]
                g = _gcd(a, b)
                ma = a // g
                mb = b // g
                end = hi if hi > plast[slot] else plast[slot]
                big = 0
                for k in range(c, end + 1):
                    if dg_mul_ovf(ma, v[k], &t1) or dg_mul_ovf(mb, prow[k], &t2) \
                            or dg_sub_ovf(t1, t2, &v[k]):
                        overflow = 1
                        break
                    if v[k] > big:
                        big = v[k]
                    elif -v[k] > big:
                        big = -v[k]
                if overflow:
                    break
                hi = end
                while hi >= 0 and v[hi] == 0:
                    hi -= 1
                if big > NORMALIZE_ABOVE:
                    g = 0
                    for k in range(c, hi + 1):
                        if v[k]:
                            g = _gcd(g, v[k])
                            if g == 1:
                                break
                    if g > 1:
                        for k in range(c, hi + 1):
                            v[k] //= g
                c += 1
            if overflow:
                break
    finally:
        free(store); free(v); free(pcol); free(plast)
    if overflow:
        return -1
    return rank


def rank_mod_p(list rows, Py_ssize_t ncols, long long p):
    """Rank over GF(p), p < 2**31, of sparse integer rows."""
    if p <= 1 or p >= (1 << 31):
        raise ValueError("modulus must satisfy 1 < p < 2**31")
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef Py_ssize_t maxpiv = nrows if nrows < ncols else ncols
    cdef long long *store = <long long *>malloc(maxpiv * ncols * sizeof(long long))
    cdef long long *v = <long long *>malloc(ncols * sizeof(long long))
    cdef Py_ssize_t *pcol = <Py_ssize_t *>malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t *plast = <Py_ssize_t *>malloc(maxpiv * sizeof(Py_ssize_t))
    if store == NULL or v == NULL or pcol == NULL or plast == NULL:
        free(store); free(v); free(pcol); free(plast)
        raise MemoryError()
    cdef Py_ssize_t i, k, c, lo, hi, end, slot
    cdef long long f, inv
    cdef long long *prow
    cdef Py_ssize_t rank = 0
    for k in range(ncols):
        pcol[k] = -1
    try:
        for i in range(nrows):
            memset(v, 0, ncols * sizeof(long long))
            _load(rows[i], v, ncols, p, &lo, &hi)
            c = lo
            while c <= hi:
                if v[c] == 0:
                    c += 1
                    continue
                slot = pcol[c]
                if slot < 0:
                    inv = pow(v[c], -1, p)
                    for k in range(c, hi + 1):
                        v[k] = (v[k] * inv) % p
                    slot = rank
                    memcpy(&store[slot * ncols], v, ncols * sizeof(long long))
                    pcol[c] = slot
                    plast[slot] = hi
                    rank += 1
                    break
                prow = &store[slot * ncols]
                f = v[c]
                end = hi if hi > plast[slot] else plast[slot]
                for k in range(c, end + 1):
                    v[k] = (v[k] - f * prow[k]) % p
                    if v[k] < 0:
                        v[k] += p
                hi = end
                while hi >= 0 and v[hi] == 0:
                    hi -= 1
                c += 1
    finally:
        free(store); free(v); free(pcol); free(plast)
    return rank
