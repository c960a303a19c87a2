"""Small exact linear algebra helpers over Fraction.

Matrices are tuples of rows; vectors are tuples.  Everything is immutable
and exact.  These helpers stay deliberately dumb: dimensions at desk scale
never exceed a few dozen.
"""

from fractions import Fraction


def F(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def mat(rows):
    return tuple(tuple(F(x) for x in row) for row in rows)


def identity(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def zeros(nr, nc):
    return tuple((Fraction(0),) * nc for _ in range(nr))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    c = F(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a):
    return tuple(zip(*a))


def bracket(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def is_zero(a):
    return all(x == 0 for row in a for x in row)


def mat_inv(a):
    """Inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det(a):
    n = len(a)
    m = [list(row) for row in a]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        pv = m[col][col]
        d *= pv
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / pv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return d


def rref(a):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [list(row) for row in a]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return tuple(tuple(row) for row in m), pivots


def nullspace(a):
    """Basis of the right kernel, as a tuple of vectors."""
    nc = len(a[0]) if a else 0
    red, pivots = rref(a)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def solve(a, b):
    """One solution x of a·x = b, or None if inconsistent."""
    nr = len(a)
    nc = len(a[0]) if nr else 0
    aug = [list(row) + [F(bb)] for row, bb in zip(a, b)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:nc]) and row[nc] != 0:
            return None
    x = [Fraction(0)] * nc
    for r, pc in enumerate(pivots):
        if pc < nc:
            x[pc] = red[r][nc]
    return tuple(x)


class QSpan:
    """Growable Q-subspace of Q^dim with echelon membership tests."""

    __slots__ = ("dim", "_rows")

    def __init__(self, dim):
        self.dim = dim
        self._rows = {}  # pivot index -> reduced vector

    def _reduce(self, v):
        v = list(F(x) for x in v)
        for piv in sorted(self._rows):
            if v[piv] != 0:
                f = v[piv]
                w = self._rows[piv]
                for i in range(self.dim):
                    v[i] -= f * w[i]
        return v

    def insert(self, v):
        """Add v to the span; returns True if the span grew."""
        r = self._reduce(v)
        piv = next((i for i, x in enumerate(r) if x != 0), None)
        if piv is None:
            return False
        pv = r[piv]
        self._rows[piv] = tuple(x / pv for x in r)
        return True

    def contains(self, v):
        return all(x == 0 for x in self._reduce(v))

    @property
    def rank(self):
        return len(self._rows)


def column_space_coords(basis_cols, v):
    """Coordinates of v in the span of basis_cols, or None if outside."""
    a = tuple(zip(*basis_cols))
    x = solve(a, v)
    if x is None:
        return None
    if mat_vec(a, x) != tuple(F(t) for t in v):
        return None
    return x
