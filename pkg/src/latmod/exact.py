"""Exact lattice arithmetic over Z and Z_(p).

A Lattice is a full-rank R-submodule of Q^n given by a canonical basis
matrix (columns generate).  R is either Z (prime=None) or the localization
Z_(p).  Canonical forms make equality a tuple comparison:

* global: column Hermite normal form, lower triangular, positive pivots;
* local: lower triangular with p-power pivots p^e, off-pivot entries in a
  pivot row reduced to integers in [0, p^e), the whole matrix scaled by
  the minimal p-power making the lattice p-integral.

ZSpan is the non-full-rank sibling used for spans of matrices and
constraint duals elsewhere in the package.
"""

import json
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from latmod.kernels import hnf_columns, snf_diagonal
from latmod.matrixops import F, mat_inv, mat_vec

ENUM_ORDER_CAP = 2**20


class LatticeError(ValueError):
    pass


def vp(x, p):
    """p-adic valuation of a nonzero rational."""
    x = F(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _clear_denominators(cols):
    """Scale rational columns to integers; returns (int_cols, scale d)."""
    d = 1
    for col in cols:
        for x in col:
            d = lcm(d, F(x).denominator)
    ints = [[int(F(x) * d) for x in col] for col in cols]
    return ints, d


def _canonical_global(cols, n):
    ints, d = _clear_denominators(cols)
    h = hnf_columns(ints, n)
    return [tuple(Fraction(x, d) for x in col) for col in h]


def _canonical_local_full(cols, n, p):
    """Canonical basis of the Z_(p)-lattice spanned by full-rank cols."""
    vals = [vp(x, p) for col in cols for x in col if x != 0]
    if not vals:
        raise LatticeError("degenerate basis")
    minval = min(vals)
    s = max(0, -minval)
    scaled = [[F(x) * p**s for x in col] for col in cols]
    # Prime-to-p denominators are units; clearing them keeps the lattice.
    ints, d = _clear_denominators(scaled)
    if d % p == 0:
        raise AssertionError("p-part of lattice not integral after scaling")
    h = hnf_columns(ints, n)
    if len(h) < n:
        raise LatticeError("degenerate basis")
    e = sum(vp(h[i][i], p) for i in range(n))
    # Adding p^e·Z^n trivializes the prime-to-p part without touching
    # the p-part; the Hermite form of the result is the unique integral
    # representative.
    pe = p**e
    gens = [list(c) for c in h]
    for i in range(n):
        v = [0] * n
        v[i] = pe
        gens.append(v)
    canon = hnf_columns(gens, n)
    ps = p**s
    return [tuple(Fraction(x, ps) for x in col) for col in canon]


class Lattice:
    """Full-rank lattice in Q^n over Z or Z_(p); immutable, canonical."""

    __slots__ = ("ambient", "prime", "basis")

    def __init__(self, generators, prime=None, ambient=None):
        gens = [tuple(F(x) for x in col) for col in generators]
        if not gens:
            raise LatticeError("empty generating set")
        n = ambient if ambient is not None else len(gens[0])
        if any(len(c) != n for c in gens):
            raise LatticeError("ragged generators")
        if prime is not None and (prime < 2 or any(prime % q == 0 for q in range(2, int(prime**0.5) + 1))):
            raise LatticeError("prime must be prime: %r" % (prime,))
        if prime is None:
            canon = _canonical_global(gens, n)
            if len(canon) < n:
                raise LatticeError("degenerate basis")
        else:
            canon = _canonical_local_full(gens, n, prime)
        object.__setattr__(self, "ambient", n)
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "basis", tuple(canon))

    def __setattr__(self, *a):
        raise AttributeError("Lattice is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient == other.ambient
            and self.prime == other.prime
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.prime, self.basis))

    def __repr__(self):
        ring = "Z" if self.prime is None else "Z_(%d)" % self.prime
        return "Lattice(%s, %r)" % (ring, [list(c) for c in self.basis])

    # -- core data ---------------------------------------------------

    def basis_matrix(self):
        """Basis as a matrix (rows), columns generate."""
        return tuple(zip(*self.basis))

    def covolume(self):
        """|det| of the canonical basis (product of pivots)."""
        d = Fraction(1)
        for i, col in enumerate(self.basis):
            d *= col[i]
        return d

    # -- predicates --------------------------------------------------

    def _coords(self, v):
        """Coordinates of v in the canonical (lower triangular) basis."""
        v = [F(x) for x in v]
        x = []
        for i in range(self.ambient):
            xi = (v[i] - sum(self.basis[j][i] * x[j] for j in range(i))) / self.basis[i][i]
            x.append(xi)
        return x

    def member(self, v):
        x = self._coords(v)
        if self.prime is None:
            return all(c.denominator == 1 for c in x)
        return all(c.denominator % self.prime != 0 for c in x)

    def contains(self, other):
        self._check_compatible(other)
        return all(self.member(c) for c in other.basis)

    def _check_compatible(self, other):
        if self.ambient != other.ambient or self.prime != other.prime:
            raise LatticeError("mismatched ambient dimension or ring")

    # -- module operations -------------------------------------------

    def scale(self, c):
        c = F(c)
        return Lattice([[c * x for x in col] for col in self.basis], self.prime)

    def sum(self, other):
        self._check_compatible(other)
        return Lattice(list(self.basis) + list(other.basis), self.prime)

    def dual(self):
        binv = mat_inv(self.basis_matrix())
        # Rows of B^{-1} = columns of B^{-T}.
        return Lattice(list(binv), self.prime)

    def intersect(self, other):
        self._check_compatible(other)
        return self.dual().sum(other.dual()).dual()

    def index_in(self, sup):
        """[sup : self]; p-part only over Z_(p)."""
        sup._check_compatible(self)
        if not sup.contains(self):
            raise LatticeError("index: sub is not contained in sup")
        q = abs(self.covolume() / sup.covolume())
        if self.prime is None:
            assert q.denominator == 1
            return int(q)
        return self.prime ** vp(q, self.prime)

    def apply(self, matrix):
        """Image lattice under a nonsingular rational matrix (rows)."""
        return Lattice([mat_vec(matrix, c) for c in self.basis], self.prime)

    # -- serialization -----------------------------------------------

    def to_json_obj(self):
        ring = "Z" if self.prime is None else {"Zp": self.prime}
        rows = [[str(x) for x in row] for row in self.basis_matrix()]
        return {"ambient": self.ambient, "ring": ring, "basis": rows}

    @classmethod
    def from_json_obj(cls, obj):
        ring = obj["ring"]
        prime = None if ring == "Z" else int(ring["Zp"])
        rows = [[Fraction(x) for x in row] for row in obj["basis"]]
        cols = list(zip(*rows))
        return cls(cols, prime, ambient=obj["ambient"])

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def standard_lattice(n, prime=None):
    cols = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    return Lattice(cols, prime)


# ---------------------------------------------------------------------
# Spec-level operations
# ---------------------------------------------------------------------


def hnf(generators, ambient=None):
    """Canonical basis matrix (rows) of the integer column span.

    Accepts redundant generating sets; errors when the columns do not
    span Q^n ("degenerate basis").
    """
    lat = Lattice(generators, None, ambient=ambient)
    return lat.basis_matrix()


class ElementaryDivisors:
    """Nonzero elementary divisors, each dividing the next."""

    __slots__ = ("divisors",)

    def __init__(self, divisors):
        divs = tuple(F(d) for d in divisors)
        for a, b in zip(divs, divs[1:]):
            if (b / a).denominator != 1:
                raise LatticeError("divisibility chain violated")
        object.__setattr__(self, "divisors", divs)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def __eq__(self, other):
        return isinstance(other, ElementaryDivisors) and self.divisors == other.divisors

    def __iter__(self):
        return iter(self.divisors)

    def __repr__(self):
        return "ElementaryDivisors(%s)" % (list(self.divisors),)


def snf(rows):
    """Elementary divisors of a rational matrix (rows); rank many."""
    cols = list(zip(*rows)) if rows else []
    ints, d = _clear_denominators(cols)
    divs = snf_diagonal([list(r) for r in zip(*ints)]) if ints else []
    return ElementaryDivisors([Fraction(x, d) for x in divs])


def lattice_sum(a, b):
    return a.sum(b)


def lattice_intersect(a, b):
    return a.intersect(b)


def index(sub, sup):
    return sub.index_in(sup)


def member(v, a):
    return a.member(v)


def distance(a, b):
    """Lattice distance n - m over Z_(p) (see the metric lemma)."""
    if a.prime is None or b.prime is None:
        raise LatticeError("distance requires localized lattices")
    a._check_compatible(b)
    t = [a._coords(col) for col in b.basis]  # columns of a^{-1}·b
    divs = snf(list(zip(*t)))
    vals = [vp(d, a.prime) for d in divs]
    return max(vals) - min(vals)


def _snf_with_left_transform(rows):
    """Smith form with left basis change: M = P·D·Q, returns (diag, P).

    P is unimodular; columns of P are the adapted basis in which the
    column span of M is generated by diag entries times basis vectors.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0])
    p = [[Fraction(int(i == j)) for j in range(nr)] for i in range(nr)]

    def row_op(i, k, q):
        # row_i -= q·row_k  on M  <=>  col_k += q·col_i  on P
        for j in range(nc):
            m[i][j] -= q * m[k][j]
        for r in range(nr):
            p[r][k] += q * p[r][i]

    def row_swap(i, k):
        m[i], m[k] = m[k], m[i]
        for r in range(nr):
            p[r][i], p[r][k] = p[r][k], p[r][i]

    def row_neg(i):
        for j in range(nc):
            m[i][j] = -m[i][j]
        for r in range(nr):
            p[r][i] = -p[r][i]

    def col_op(j, k, q):
        for i in range(nr):
            m[i][j] -= q * m[i][k]

    def col_swap(j, k):
        for i in range(nr):
            m[i][j], m[i][k] = m[i][k], m[i][j]

    top = 0
    diag = []
    while top < nr and top < nc:
        piv = None
        for i in range(top, nr):
            for j in range(top, nc):
                if m[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        row_swap(top, piv[0])
        col_swap(top, piv[1])
        while True:
            again = False
            for i in range(top + 1, nr):
                if m[i][top]:
                    q = m[i][top] // m[top][top]
                    row_op(i, top, q)
                    if m[i][top]:
                        row_swap(top, i)
                        again = True
            if again:
                continue
            for j in range(top + 1, nc):
                if m[top][j]:
                    q = m[top][j] // m[top][top]
                    col_op(j, top, q)
                    if m[top][j]:
                        col_swap(top, j)
                        again = True
            if not again:
                break
        pivval = m[top][top]
        bad = None
        for i in range(top + 1, nr):
            if any(m[i][j] % pivval for j in range(top + 1, nc)):
                bad = i
                break
        if bad is not None:
            row_op(top, bad, -1)  # row_top += row_bad
            continue
        if pivval < 0:
            row_neg(top)
        diag.append(m[top][top])
        top += 1
    return diag, tuple(tuple(row) for row in p)


def _subgroup_hnfs(divisors):
    """All HNF bases of subgroups between D·Z^n and Z^n.

    divisors: diagonal (d_1 | d_2 | ... | d_n).  Yields lower-triangular
    integer matrices as column lists.  Columns are produced right-to-left
    so each column can be pruned against d_j·e_j ∈ span immediately,
    keeping the search proportional to the number of actual subgroups.
    """
    n = len(divisors)
    dmax = divisors[-1] if divisors else 1
    dlist = [k for k in range(1, dmax + 1) if dmax % k == 0]
    cols = [[0] * n for _ in range(n)]

    def contains_dj(j):
        # Reduce d_j·e_j by the (already fixed) columns j..n-1.
        v = [0] * n
        v[j] = divisors[j]
        for i in range(j, n):
            if v[i] == 0:
                continue
            if v[i] % cols[i][i]:
                return False
            q = v[i] // cols[i][i]
            for r in range(i, n):
                v[r] -= q * cols[i][r]
        return True

    def gen(j):
        if j < 0:
            yield [list(c) for c in cols]
            return
        for a in dlist:
            cols[j] = [0] * n
            cols[j][j] = a
            below = list(range(j + 1, n))

            def fill(k):
                if k == len(below):
                    if contains_dj(j):
                        yield from gen(j - 1)
                    return
                i = below[k]
                for val in range(cols[i][i]):
                    cols[j][i] = val
                    yield from fill(k + 1)
                cols[j][i] = 0

            yield from fill(0)
        cols[j] = [0] * n

    yield from gen(n - 1)


def _hnf_contains_diag(cols, divisors):
    """Does the column span of lower-triangular cols contain diag(d)·Z^n?"""
    n = len(divisors)
    for j in range(n):
        v = [0] * n
        v[j] = divisors[j]
        for i in range(n):
            if v[i] == 0:
                continue
            if v[i] % cols[i][i]:
                return False
            q = v[i] // cols[i][i]
            for r in range(i, n):
                v[r] -= q * cols[i][r]
    return True


def enumerate_between(low, high):
    """All lattices M with low ⊆ M ⊆ high, each exactly once."""
    high._check_compatible(low)
    if not high.contains(low):
        raise LatticeError("enumerate_between: low is not contained in high")
    n = high.ambient
    t = [high._coords(col) for col in low.basis]
    # Integer matrix for the transition (clear unit denominators locally).
    ints, d = _clear_denominators(t)
    if high.prime is not None and d % high.prime == 0:
        raise AssertionError("transition matrix not p-integral")
    rows = [list(r) for r in zip(*ints)]
    diag, p_trans = _snf_with_left_transform(rows)
    if len(diag) < n:
        raise LatticeError("degenerate transition")
    if high.prime is not None:
        diag = [high.prime ** vp(x, high.prime) for x in diag]
    order = 1
    for x in diag:
        order *= x
    if order > ENUM_ORDER_CAP:
        raise LatticeError("quotient order %d exceeds cap %d" % (order, ENUM_ORDER_CAP))
    # Adapted basis of `high`: columns of B_high · P.
    bh = high.basis_matrix()
    adapted = [mat_vec(bh, col) for col in zip(*p_trans)]  # list of columns

    out = []
    for cols in _subgroup_hnfs(diag):
        assert _hnf_contains_diag(cols, diag)
        gens = []
        for col in cols:
            vec = [sum(F(col[i]) * adapted[i][r] for i in range(n)) for r in range(n)]
            gens.append(vec)
        out.append(Lattice(gens, high.prime))
    # The HNF parametrization is injective, but dedupe defensively for
    # the local ring where unit scalings can collide.
    seen = set()
    uniq = []
    for lat in out:
        if lat not in seen:
            seen.add(lat)
            uniq.append(lat)
    return uniq


def subgroup_count_of_quotient(divisors):
    """Number of subgroups of ⊕ Z/d_i, by brute force over small orders."""
    order = 1
    for d in divisors:
        order *= int(d)
    if order > 2**12:
        raise LatticeError("brute-force subgroup count capped")
    import itertools

    elems = list(itertools.product(*[range(int(d)) for d in divisors]))
    subgroups = set()
    frontier = {frozenset([tuple(0 for _ in divisors)])}
    # Closure-based enumeration: grow subgroups one generator at a time.
    while frontier:
        nxt = set()
        for sg in frontier:
            if sg not in subgroups:
                subgroups.add(sg)
                for g in elems:
                    if g in sg:
                        continue
                    new = set(sg)
                    stack = [g]
                    while stack:
                        x = stack.pop()
                        if x in new:
                            continue
                        new.add(x)
                        for y in list(new):
                            z = tuple((a + b) % int(d) for a, b, d in zip(x, y, divisors))
                            if z not in new:
                                stack.append(z)
                    nxt.add(frozenset(new))
        frontier = nxt - subgroups
    return len(subgroups)


# ---------------------------------------------------------------------
# ZSpan: finitely generated R-submodule of Q^m of any rank
# ---------------------------------------------------------------------


class ZSpan:
    """R-span of a finite set of vectors in Q^m; canonical HNF basis."""

    __slots__ = ("ambient", "prime", "basis", "pivots")

    def __init__(self, vectors, ambient, prime=None):
        gens = [tuple(F(x) for x in v) for v in vectors]
        gens = [g for g in gens if any(g)]
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "prime", prime)
        if not gens:
            object.__setattr__(self, "basis", ())
            object.__setattr__(self, "pivots", ())
            return
        canon = _canonical_global(gens, ambient)
        pivots = tuple(next(i for i, x in enumerate(col) if x != 0) for col in canon)
        if prime is not None:
            r = len(canon)
            proj = [[col[i] for i in pivots] for col in canon]
            local = _canonical_local_full(proj, r, prime)
            # Lift through the pivot-coordinate isomorphism of the span.
            hp = tuple(tuple(F(canon[j][i]) for j in range(r)) for i in pivots)
            lift_coeff = mat_inv(hp)
            lifted = []
            for lc in local:
                coeff = mat_vec(lift_coeff, lc)
                vec = tuple(
                    sum(coeff[j] * canon[j][i] for j in range(r))
                    for i in range(ambient)
                )
                lifted.append(vec)
            canon = lifted
        object.__setattr__(self, "basis", tuple(canon))
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, *a):
        raise AttributeError("ZSpan is immutable")

    @property
    def rank(self):
        return len(self.basis)

    def coords(self, v):
        """Coordinates of v in the basis, or None if v is outside."""
        v = tuple(F(x) for x in v)
        if not self.basis:
            return () if not any(v) else None
        x = []
        for k, col in enumerate(self.basis):
            piv = self.pivots[k]
            xi = (v[piv] - sum(self.basis[j][piv] * x[j] for j in range(k))) / col[piv]
            x.append(xi)
        # Verify against all coordinates, not just pivots.
        for i in range(self.ambient):
            if sum(self.basis[j][i] * x[j] for j in range(len(x))) != v[i]:
                return None
        return tuple(x)

    def member(self, v):
        x = self.coords(v)
        if x is None:
            return False
        if self.prime is None:
            return all(c.denominator == 1 for c in x)
        return all(c.denominator % self.prime != 0 for c in x)

    def add(self, other):
        return ZSpan(list(self.basis) + list(other.basis), self.ambient, self.prime)

    def add_vectors(self, vectors):
        return ZSpan(list(self.basis) + [tuple(v) for v in vectors], self.ambient, self.prime)

    def __eq__(self, other):
        return (
            isinstance(other, ZSpan)
            and self.ambient == other.ambient
            and self.prime == other.prime
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.prime, self.basis))

    def __repr__(self):
        return "ZSpan(rank %d in Q^%d)" % (self.rank, self.ambient)
