"""End-to-end case studies.

1. Imaginary quadratic fields: lattices in F = Q(sqrt(D)) whose multiplier
   ring is the maximal order, counted up to F*-scaling.  The count equals
   the class number, computed here by exhaustive ideal enumeration below
   the Minkowski bound.

2. The rank-1 adjoint group acting on the symmetric square over Z_(2):
   two lattices of index 2 apart generate the same bounded-degree Hopf
   order and the same Lie-lattice invariants, yet lie in different group
   orbits because symmetric squares of pure lattices only produce indices
   with valuation divisible by 3.
"""

import math
from fractions import Fraction

from latmod.exact import Lattice, vp
from latmod.matrixops import F, mat, mat_inv, mat_mul, mat_vec
from latmod.models import hopf_generators, lie_invariants, lie_model, order_equal_bounded
from latmod.reps import build_irrep
from latmod.rootdata import build_chevalley


class CaseStudyError(ValueError):
    pass


# -----------------------------------------------------------------------
# Imaginary quadratic fields
# -----------------------------------------------------------------------


def is_fundamental(disc):
    if disc >= 0:
        return False
    if disc % 4 == 1:
        return _squarefree(-disc)
    if disc % 4 == 0:
        m = disc // 4
        return _squarefree(-m) and (m % 4) in (2, 3)
    return False


def _squarefree(n):
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadField:
    """Q(sqrt(D)) for a negative discriminant D, with ring basis (1, w),
    w = (D + sqrt(D))/2, so w² = D·w + (D - D²)/4."""

    __slots__ = ("disc", "_c")

    def __init__(self, disc):
        if disc >= 0 or disc % 4 not in (0, 1) or disc < -10**4:
            raise CaseStudyError("expected a negative discriminant = 0,1 mod 4")
        object.__setattr__(self, "disc", disc)
        object.__setattr__(self, "_c", Fraction(disc - disc * disc, 4))
        # Associativity spot-check of the multiplication table.
        xs = [(1, 0), (0, 1), (2, -1), (1, 3)]
        for a in xs:
            for b in xs:
                for c in xs:
                    lhs = self.mul(self.mul(a, b), c)
                    rhs = self.mul(a, self.mul(b, c))
                    if lhs != rhs:
                        raise AssertionError("multiplication table inconsistent")

    def __setattr__(self, *a):
        raise AttributeError("QuadField is immutable")

    def mul(self, x, y):
        u1, v1 = x
        u2, v2 = y
        u = F(u1) * u2 + F(v1) * v2 * self._c
        v = F(u1) * v2 + F(u2) * v1 + F(v1) * v2 * self.disc
        return (u, v)

    def norm(self, x):
        u, v = x
        # N(u + v·w) = (u + v·w)(u + v·w̄), w + w̄ = D, w·w̄ = (D² - D)/4.
        return F(u) ** 2 + F(u) * F(v) * self.disc - F(v) ** 2 * self._c

    def mul_matrix(self, x):
        """Matrix of multiplication by x on the basis (1, w), columns."""
        u, v = x
        return mat(
            [
                [F(u), F(v) * self._c],
                [F(v), F(u) + F(v) * self.disc],
            ]
        )

    def minkowski_bound(self):
        """Every ideal class contains an integral ideal of norm at most
        (2/pi)·sqrt(|disc|)."""
        return int(2 * math.sqrt(-self.disc) / math.pi) + 1


def multiplier_ring(field, lat):
    """{x in F : x·Lambda ⊆ Lambda} as a lattice in the (1, w) basis."""
    if lat.ambient != 2:
        raise CaseStudyError("fractional ideals of a quadratic field are rank 2")
    b = lat.basis_matrix()
    binv = mat_inv(b)
    one = field.mul_matrix((1, 0))
    omega = field.mul_matrix((0, 1))
    rows = []
    for g in (one, omega):
        conj = mat_mul(binv, mat_mul(g, b))
        # Condition on (u, v): u·conj(one) + v·conj(omega) integral.
        rows.append(conj)
    constraint_rows = []
    for i in range(2):
        for j in range(2):
            row = (rows[0][i][j], rows[1][i][j])
            if any(row):
                constraint_rows.append(row)
    ring = Lattice(constraint_rows, lat.prime, ambient=2).dual()
    # The result is a unital subring: verify both properties.
    if not ring.member((1, 0)):
        raise AssertionError("multiplier ring does not contain 1")
    for a in ring.basis:
        for b2 in ring.basis:
            if not ring.member(field.mul(a, b2)):
                raise AssertionError("multiplier ring not closed under product")
    return ring


def _ideal_lattices_of_norm(field, n):
    """Index-n sublattices of O_F closed under multiplication by w."""
    omega = field.mul_matrix((0, 1))
    out = []
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        for b in range(a):
            cols = [[a, 0], [b, d]]
            lat = Lattice(cols)
            if all(lat.member(mat_vec(omega, col)) for col in lat.basis):
                out.append(lat)
    return out


def _scaling_equivalent(field, lat1, lat2):
    """Is lat2 = x·lat1 for some x in F*?"""
    ratio = lat2.covolume() / lat1.covolume()
    # Candidate multipliers lie in {y : y·lat1 ⊆ lat2} with N(y) = ratio.
    b1 = lat1.basis_matrix()
    b2inv = mat_inv(lat2.basis_matrix())
    one = field.mul_matrix((1, 0))
    omega = field.mul_matrix((0, 1))
    rows = []
    for g in (one, omega):
        conj = mat_mul(b2inv, mat_mul(g, b1))
        rows.append(conj)
    constraint_rows = []
    for i in range(2):
        for j in range(2):
            row = (rows[0][i][j], rows[1][i][j])
            if any(row):
                constraint_rows.append(row)
    quot = Lattice(constraint_rows, ambient=2).dual()
    # The norm form is positive definite, so Q(s,t) = ratio confines the
    # basis coefficients to |s|² <= ratio·c/det(Q), |t|² <= ratio·a/det(Q).
    b0, b1 = quot.basis
    qa = field.norm(b0)
    qc = field.norm(b1)
    qb = (field.norm(tuple(x + y for x, y in zip(b0, b1))) - qa - qc) / 2
    det_q = qa * qc - qb * qb
    smax = math.isqrt(int(ratio * qc / det_q)) + 1
    tmax = math.isqrt(int(ratio * qa / det_q)) + 1
    for s in range(-smax, smax + 1):
        for t in range(-tmax, tmax + 1):
            if s == 0 and t == 0:
                continue
            y = tuple(s * b0[i] + t * b1[i] for i in range(2))
            if field.norm(y) != ratio:
                continue
            moved = lat1.apply(field.mul_matrix(y))
            if moved == lat2:
                return True
    return False


def class_orbit_count(disc):
    """Number of F*-classes of lattices with maximal multiplier ring,
    with one representative ideal per class."""
    if not is_fundamental(disc):
        raise CaseStudyError("class group of non-maximal orders out of scope")
    field = QuadField(disc)
    maximal = Lattice([[1, 0], [0, 1]])
    bound = field.minkowski_bound()
    classes = []
    for n in range(1, bound + 1):
        for ideal in _ideal_lattices_of_norm(field, n):
            if multiplier_ring(field, ideal) != maximal:
                continue
            if any(_scaling_equivalent(field, rep, ideal) for rep in classes):
                continue
            classes.append(ideal)
    return len(classes), classes


def reduced_forms_count(disc):
    """Independent oracle: reduced binary quadratic forms (a, b, c) with
    b² - 4ac = disc, |b| <= a <= c, and b >= 0 when |b| = a or a = c."""
    count = 0
    a = 1
    while 4 * a * a <= -disc * Fraction(4, 3):
        for b in range(-a, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == -b or a == c):
                continue
            count += 1
        a += 1
    return count


# -----------------------------------------------------------------------
# Rank-1 adjoint group in the symmetric square over Z_(2)
# -----------------------------------------------------------------------


def pgl2_sym2_report():
    """Four checkable facts about the two lattices Z³ and Z⊕2Z⊕Z in the
    symmetric square: equal bounded-degree Hopf orders, quotient of order
    2, the cube-valuation purity obstruction separating the orbits, and
    matching Lie-lattice invariants."""
    cb = build_chevalley("A", 1)
    sym2 = build_irrep(cb, (2,))
    lam = Lattice([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    lam2 = Lattice([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    report = {"assertions": {}, "status": "pass"}

    def record(name, ok, data):
        report["assertions"][name] = {"pass": bool(ok), **data}
        if not ok:
            report["status"] = "fail"

    g1 = hopf_generators(sym2, lam)
    g2 = hopf_generators(sym2, lam2)
    orders = order_equal_bounded(g1, g2, 4, 2)
    record(
        "hopf_orders_equal",
        orders["status"] == "equal",
        {
            "degree_bound": 4,
            "prime": 2,
            "certificates": len(orders["certificates"]),
        },
    )

    idx = lam2.index_in(lam)
    record("quotient_order", idx == 2, {"index": int(idx)})

    # Purity obstruction: the symmetric square of c·M' inside Sym²(M) has
    # index c³·#(M/M')³, whose 2-adic valuation is divisible by 3; the
    # observed index 2 has valuation 1.
    ok = True
    witness = None
    for k in range(1, 33):
        for j in range(-4, 5):
            val = 3 * (j + vp(k, 2))
            if val % 3 != 0:
                ok = False
                witness = {"index": k, "scale_valuation": j, "valuation": val}
    obstruction = ok and (vp(idx, 2) % 3 != 0)
    record(
        "purity_obstruction",
        obstruction,
        {
            "pure_index_valuations_mod_3": 0,
            "observed_index_valuation": vp(idx, 2),
            "witness": witness,
        },
    )

    inv1 = lie_invariants(lie_model(sym2, lam))
    inv2 = lie_invariants(lie_model(sym2, lam2))
    record(
        "lie_invariants_agree",
        inv1 == inv2,
        {"invariants": inv1},
    )
    return report
