# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer elimination kernels.

Semantics match `covpkit._kernels._pykernels` exactly (same pivot order, same
gcd normalization), so the two backends are interchangeable.  Arithmetic stays
on Python ints: exactness is never traded for speed, the win comes from
removing interpreter dispatch in the inner loops.
"""

from math import gcd


def echelon(list rows, Py_ssize_t ncols):
    """Fraction-free forward elimination; see the pure twin for the contract."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, r, piv, width, j
    cdef list prow, row, new
    cdef object a, b, x, g
    pivots = []
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if (<list>rows[r])[col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = <list>rows[rank]
        a = prow[col]
        width = len(prow)
        for r in range(rank + 1, nrows):
            row = <list>rows[r]
            b = row[col]
            if b == 0:
                continue
            new = [0] * width
            for j in range(width):
                new[j] = row[j] * a - prow[j] * b
            g = 0
            for j in range(width):
                x = new[j]
                if x != 0:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g > 1:
                for j in range(width):
                    new[j] = new[j] // g
            rows[r] = new
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return pivots


def det_bareiss(list rows):
    """Bareiss determinant of a square integer matrix; mutates ``rows``."""
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef Py_ssize_t k, i, j, piv, r
    cdef int sign = 1
    cdef list pk, ri
    cdef object prev, akk, aik
    prev = 1
    for k in range(n - 1):
        if (<list>rows[k])[k] == 0:
            piv = -1
            for r in range(k + 1, n):
                if (<list>rows[r])[k] != 0:
                    piv = r
                    break
            if piv < 0:
                return 0
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = <list>rows[k]
        akk = pk[k]
        for i in range(k + 1, n):
            ri = <list>rows[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * pk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * (<list>rows[n - 1])[n - 1]
