# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Gauss-Jordan elimination over Z/p for p < 2**63 (compiled kernel)."""

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline unsigned long long lg_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long p) {
        return (unsigned long long)(((unsigned __int128)a * b) % p);
    }
    """
    u64 lg_mulmod(u64 a, u64 b, u64 p) nogil


cdef u64 _invmod(u64 a, u64 p) noexcept nogil:
    # p prime: a^(p-2)
    cdef u64 result = 1
    cdef u64 base = a % p
    cdef u64 e = p - 2
    while e:
        if e & 1:
            result = lg_mulmod(result, base, p)
        base = lg_mulmod(base, base, p)
        e >>= 1
    return result


def rref_mod(u64[:, ::1] a, u64 p):
    """Reduce ``a`` (entries already in [0, p)) to RREF in place; return pivots."""
    cdef Py_ssize_t nrows = a.shape[0]
    cdef Py_ssize_t ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef u64 inv, f, t, x
    pivots = []
    with nogil:
        for c in range(ncols):
            if r >= nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    x = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = x
            inv = _invmod(a[r, c], p)
            if inv != 1:
                for j in range(c, ncols):
                    if a[r, j] != 0:
                        a[r, j] = lg_mulmod(a[r, j], inv, p)
            for i in range(nrows):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    x = a[r, j]
                    if x != 0:
                        t = lg_mulmod(f, x, p)
                        if a[i, j] >= t:
                            a[i, j] = a[i, j] - t
                        else:
                            a[i, j] = a[i, j] + (p - t)
            with gil:
                pivots.append(c)
            r += 1
    return pivots
