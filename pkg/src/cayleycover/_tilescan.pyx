# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tile-scan kernel.

Mirrors ``_tilescan_py.scan_tile``.  The dispatcher in ``tiles`` only routes
inputs here when the determinant and dimension are small enough that every
intermediate of the back-substitution fits in int64.
"""

from libc.stdlib cimport calloc, free, malloc


def scan_tile(diag, flat, det, prune):
    """See ``_tilescan_py.scan_tile`` for the contract."""
    cdef Py_ssize_t n = len(diag)
    cdef long long dt = det
    cdef long long pr = prune
    cdef long long *dg = <long long *> malloc(n * sizeof(long long))
    cdef long long *B = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *stride = <long long *> malloc(n * sizeof(long long))
    cdef long long *c = <long long *> malloc(n * sizeof(long long))
    cdef long long *r = <long long *> malloc(n * sizeof(long long))
    cdef unsigned char *seen = <unsigned char *> calloc(dt, 1)
    if dg == NULL or B == NULL or stride == NULL or c == NULL or r == NULL or seen == NULL:
        free(dg); free(B); free(stride); free(c); free(r); free(seen)
        raise MemoryError()

    cdef Py_ssize_t i, j, p
    cdef long long s = 0, found = 0, diameter = 0, q, idx, rest
    points = []
    try:
        for i in range(n):
            dg[i] = diag[i]
        for i in range(n * n):
            B[i] = flat[i]
        stride[0] = 1
        for i in range(1, n):
            stride[i] = stride[i - 1] * dg[i - 1]

        while True:
            if pr >= 0 and s > pr:
                return (False, -1, ())
            if s > dt:
                raise RuntimeError("scan passed the determinant shell bound")
            for j in range(n - 1):
                c[j] = 0
            c[n - 1] = s
            while True:
                for j in range(n):
                    r[j] = c[j]
                for i in range(n - 1, -1, -1):
                    # floor division with a positive divisor
                    if r[i] >= 0:
                        q = r[i] / dg[i]
                    else:
                        q = -((-r[i] + dg[i] - 1) / dg[i])
                    if q != 0:
                        for j in range(i + 1):
                            r[j] -= q * B[i * n + j]
                idx = 0
                for j in range(n):
                    idx += r[j] * stride[j]
                if not seen[idx]:
                    seen[idx] = 1
                    found += 1
                    diameter = s
                    points.append(tuple([c[j] for j in range(n)]))
                    if found == dt:
                        return (True, diameter, tuple(points))
                p = n - 1
                while p >= 0 and c[p] == 0:
                    p -= 1
                if p <= 0:
                    break
                rest = c[p] - 1
                c[p] = 0
                c[p - 1] += 1
                c[n - 1] = rest
            s += 1
    finally:
        free(dg); free(B); free(stride); free(c); free(r); free(seen)
