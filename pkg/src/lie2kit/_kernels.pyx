# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free row reduction (same contract as _pykernels)."""
from fractions import Fraction
from math import gcd


cdef list _int_row(row):
    cdef object den = 1
    cdef object c, d
    for c in row:
        if c:
            d = c.denominator
            den = den * d // gcd(den, d)
    return [int(c * den) for c in row]


cdef list _primitive(list row):
    cdef object g = 0
    cdef object c
    for c in row:
        if c:
            g = gcd(g, c)
            if g == 1:
                return row
    if g > 1:
        return [c // g for c in row]
    return row


def rref(rows, Py_ssize_t ncols):
    cdef list m = [_int_row(r) for r in rows]
    m = [r for r in m if any(r)]
    cdef list pivots = []
    cdef Py_ssize_t top = 0, nrows = len(m), col, i, j, piv
    cdef list prow, row, new
    cdef object p, f, g, a, b, v, best
    for col in range(ncols):
        if top >= nrows:
            break
        piv = -1
        best = 0
        for i in range(top, nrows):
            v = (<list>m[i])[col]
            if v:
                if piv < 0 or abs(v) < best:
                    piv = i
                    best = abs(v)
                    if best == 1:
                        break
        if piv < 0:
            continue
        m[top], m[piv] = m[piv], m[top]
        prow = <list>m[top]
        p = prow[col]
        for i in range(nrows):
            if i == top:
                continue
            row = <list>m[i]
            f = row[col]
            if f:
                g = gcd(p, f)
                a = p // g
                b = f // g
                new = [None] * ncols
                for j in range(ncols):
                    new[j] = a * row[j] - b * prow[j]
                m[i] = _primitive(new)
        pivots.append(col)
        top += 1
    out = []
    for i in range(len(pivots)):
        col = pivots[i]
        row = <list>m[i]
        p = row[col]
        out.append([Fraction(x, p) if x else Fraction(0) for x in row])
    return out, pivots


def rank(rows, Py_ssize_t ncols):
    return len(rref(rows, ncols)[1])
