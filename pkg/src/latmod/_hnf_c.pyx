# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure-Python normal-form kernels.

Same algorithms and signatures as ``_hnf_py``; entries stay Python ints
(arbitrary precision), the speedup comes from typed loop indices and
list handling.
"""

IMPLEMENTATION = "cython"


def hnf_columns(cols, Py_ssize_t nrows):
    """Column-style Hermite normal form; see _hnf_py.hnf_columns."""
    cdef Py_ssize_t row, i, k, nlive
    cdef list work = [list(c) for c in cols if any(c)]
    cdef list fixed = []
    cdef list live, piv, c
    cdef object pv, q
    for row in range(nrows):
        live = [c for c in work if c[row] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda col: abs(col[row]))
            piv = live[0]
            pv = piv[row]
            for k in range(1, len(live)):
                c = live[k]
                q = c[row] // pv
                if q:
                    for i in range(row, nrows):
                        c[i] = c[i] - q * piv[i]
            live = [c for c in live if c[row] != 0]
        piv = live[0]
        work.remove(piv)
        if piv[row] < 0:
            piv = [-x for x in piv]
        pv = piv[row]
        for k in range(len(fixed)):
            c = fixed[k]
            q = c[row] // pv
            if q:
                for i in range(row, nrows):
                    c[i] = c[i] - q * piv[i]
        fixed.append(piv)
        if not work:
            break
    return fixed


def snf_diagonal(rows):
    """Elementary divisors of an integer matrix; see _hnf_py.snf_diagonal."""
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nr = len(m)
    cdef Py_ssize_t nc = len(m[0]) if nr else 0
    cdef list divisors = []
    cdef Py_ssize_t top = 0, i, j, bad
    cdef bint again, found
    cdef object q, p
    cdef list r, mt, mi
    while True:
        found = False
        for i in range(top, nr):
            mi = m[i]
            for j in range(top, nc):
                if mi[j] != 0:
                    found = True
                    break
            if found:
                break
        if not found:
            break
        m[top], m[i] = m[i], m[top]
        for k in range(nr):
            r = m[k]
            r[top], r[j] = r[j], r[top]
        while True:
            again = False
            mt = m[top]
            for i in range(top + 1, nr):
                mi = m[i]
                if mi[top] == 0:
                    continue
                q = mi[top] // mt[top]
                for j in range(top, nc):
                    mi[j] = mi[j] - q * mt[j]
                if mi[top] != 0:
                    m[top], m[i] = m[i], m[top]
                    mt = m[top]
                    again = True
            if again:
                continue
            mt = m[top]
            for j in range(top + 1, nc):
                if mt[j] == 0:
                    continue
                q = mt[j] // mt[top]
                for i in range(top, nr):
                    mi = m[i]
                    mi[j] = mi[j] - q * mi[top]
                if mt[j] != 0:
                    for k in range(nr):
                        r = m[k]
                        r[top], r[j] = r[j], r[top]
                    again = True
            if not again:
                break
        p = m[top][top]
        bad = -1
        for i in range(top + 1, nr):
            mi = m[i]
            for j in range(top + 1, nc):
                if mi[j] % p != 0:
                    bad = i
                    break
            if bad >= 0:
                break
        if bad >= 0:
            mt = m[top]
            mi = m[bad]
            for j in range(top, nc):
                mt[j] = mt[j] + mi[j]
            continue
        divisors.append(abs(p))
        top += 1
        if top >= nr or top >= nc:
            break
    return divisors
