"""Pure-Python row reduction over the rationals.

Rows are cleared of denominators and reduced with integer arithmetic
(fraction-free Gauss-Jordan), then rescaled to Fractions at the end.
The compiled module ``_kernels`` implements the same two functions.
"""
from fractions import Fraction
from math import gcd


def _int_row(row):
    den = 1
    for c in row:
        if c:
            d = c.denominator
            den = den * d // gcd(den, d)
    return [int(c * den) for c in row]


def _primitive(row):
    g = 0
    for c in row:
        if c:
            g = gcd(g, c)
            if g == 1:
                return row
    if g > 1:
        return [c // g for c in row]
    return row


def rref(rows, ncols):
    """Reduced row echelon form of ``rows`` (sequences of rationals).

    Returns ``(reduced_rows, pivot_columns)``; only nonzero rows are kept.
    """
    m = [_int_row(r) for r in rows]
    m = [r for r in m if any(r)]
    pivots = []
    top = 0
    nrows = len(m)
    for col in range(ncols):
        if top >= nrows:
            break
        piv = -1
        best = 0
        for i in range(top, nrows):
            v = m[i][col]
            if v:
                a = abs(v)
                if piv < 0 or a < best:
                    piv, best = i, a
                    if a == 1:
                        break
        if piv < 0:
            continue
        m[top], m[piv] = m[piv], m[top]
        prow = m[top]
        p = prow[col]
        for i in range(nrows):
            if i == top:
                continue
            row = m[i]
            f = row[col]
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                m[i] = _primitive([a * x - b * y for x, y in zip(row, prow)])
        pivots.append(col)
        top += 1
    out = []
    for i, col in enumerate(pivots):
        p = m[i][col]
        out.append([Fraction(x, p) if x else Fraction(0) for x in m[i]])
    return out, pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])
