# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel: brute-force solutions of a vanish/product/cross
equation system over all points of P^1(F_ell)^f.

Column codes: 0..ell-1 encode the chart [1:t], ell encodes [0:1].  A slot
(column, row) evaluates to the top (row 0) or bottom (row 1) homogeneous
coordinate in that normalization.
"""

from libc.stdlib cimport free, malloc


cdef inline int slot_value(int code, int row, int ell) nogil:
    if row == 0:
        return 1 if code < ell else 0
    return code if code < ell else 1


def solve_points(int f, int ell, vanish, prodzero, cross):
    """Return the list of satisfying code tuples, lexicographically ordered.

    vanish: flat [col, row, ...]; prodzero: flat [c1, r1, c2, r2, ...];
    cross: flat [c1, r1, c2, r2, c3, r3, c4, r4, ...] meaning
    v1*v2 == v3*v4 (mod ell).
    """
    cdef int nv = len(vanish) // 2
    cdef int np = len(prodzero) // 4
    cdef int nc = len(cross) // 8
    cdef int* van = <int*> malloc(sizeof(int) * max(1, len(vanish)))
    cdef int* prod = <int*> malloc(sizeof(int) * max(1, len(prodzero)))
    cdef int* crs = <int*> malloc(sizeof(int) * max(1, len(cross)))
    cdef int* codes = <int*> malloc(sizeof(int) * max(1, f))
    if van == NULL or prod == NULL or crs == NULL or codes == NULL:
        free(van); free(prod); free(crs); free(codes)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(len(vanish)):
        van[i] = vanish[i]
    for i in range(len(prodzero)):
        prod[i] = prodzero[i]
    for i in range(len(cross)):
        crs[i] = cross[i]
    for i in range(f):
        codes[i] = 0

    out = []
    cdef int k, ok, pos
    cdef long lhs, rhs
    try:
        while True:
            ok = 1
            for k in range(nv):
                if slot_value(codes[van[2 * k]], van[2 * k + 1], ell) != 0:
                    ok = 0
                    break
            if ok:
                for k in range(np):
                    lhs = slot_value(codes[prod[4 * k]], prod[4 * k + 1], ell)
                    lhs *= slot_value(codes[prod[4 * k + 2]], prod[4 * k + 3], ell)
                    if lhs % ell != 0:
                        ok = 0
                        break
            if ok:
                for k in range(nc):
                    lhs = slot_value(codes[crs[8 * k]], crs[8 * k + 1], ell)
                    lhs *= slot_value(codes[crs[8 * k + 2]], crs[8 * k + 3], ell)
                    rhs = slot_value(codes[crs[8 * k + 4]], crs[8 * k + 5], ell)
                    rhs *= slot_value(codes[crs[8 * k + 6]], crs[8 * k + 7], ell)
                    if (lhs - rhs) % ell != 0:
                        ok = 0
                        break
            if ok:
                out.append(tuple([codes[k] for k in range(f)]))
            # odometer, most significant column first to keep lexicographic order
            pos = f - 1
            while pos >= 0 and codes[pos] == ell:
                codes[pos] = 0
                pos -= 1
            if pos < 0:
                break
            codes[pos] += 1
    finally:
        free(van)
        free(prod)
        free(crs)
        free(codes)
    return out
