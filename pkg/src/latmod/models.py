"""Computable shadows of an integral model attached to a lattice: the Lie
lattice {X in g : X·Lambda ⊆ Lambda}, its basis-change invariants, and
bounded-degree Hopf-order generators for the rank-1 adjoint case.

Hopf orders are handled through explicit matrix-coefficient polynomials in
the group coordinates, reduced modulo the determinant relation
x11·x22 = 1 + x12·x21; equality of two orders is decided by exact linear
algebra on reduced monomials up to a degree bound, with an explicit
integral certificate for every positive answer.
"""

from fractions import Fraction

from latmod.exact import Lattice, LatticeError, snf, vp
from latmod.matrixops import F, bracket, mat, mat_inv, mat_mul, trace


class ModelError(ValueError):
    pass


# -----------------------------------------------------------------------
# Lie lattices
# -----------------------------------------------------------------------


class LieLattice:
    """Lattice in the Lie algebra, coordinates in the Chevalley basis."""

    __slots__ = ("cb", "lattice")

    def __init__(self, cb, lattice, check=True):
        object.__setattr__(self, "cb", cb)
        object.__setattr__(self, "lattice", lattice)
        if check and not self.bracket_closed():
            raise ModelError("lattice is not closed under the bracket")

    def __setattr__(self, *a):
        raise AttributeError("LieLattice is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LieLattice)
            and self.cb is other.cb
            and self.lattice == other.lattice
        )

    def element(self, coords):
        """Realization matrix of a coordinate vector."""
        return self.cb.from_coords(coords)

    def bracket_closed(self):
        mats = [self.element(col) for col in self.lattice.basis]
        for i, a in enumerate(mats):
            for b in mats[i + 1 :]:
                coords = self.cb.coords_of(bracket(a, b))
                if coords is None or not self.lattice.member(coords):
                    return False
        return True

    def to_json_obj(self):
        return {
            "rootsystem": self.cb.rs.to_json_obj(),
            "basis": self.lattice.to_json_obj(),
        }


def lie_model(rep, lat):
    """The Lie lattice {X in g : rho(X)·Lambda ⊆ Lambda}."""
    cb = rep.cb
    if lat.ambient != rep.dim:
        raise ModelError("lattice lives in the wrong space")
    b = lat.basis_matrix()
    binv = mat_inv(b)
    keys = cb.basis_order()
    m = len(keys)
    cols = []
    for key in keys:
        conj = mat_mul(binv, mat_mul(rep.action[key], b))
        cols.append(tuple(conj[r][c] for r in range(rep.dim) for c in range(rep.dim)))
    # Faithfulness: the coordinate map g -> End(V) must be injective.
    from latmod.matrixops import rref

    _, pivots = rref(mat(cols))
    if len(pivots) != m:
        raise ModelError("representation is not faithful on the Lie algebra")
    # {c : sum_k c_k·cols[k] integral} is the dual of the row lattice.
    rows = [tuple(col[i] for col in cols) for i in range(rep.dim * rep.dim)]
    rows = [r for r in rows if any(r)]
    model = Lattice(rows, lat.prime, ambient=m).dual()
    return LieLattice(cb, model)


_KILLING_CACHE = {}


def killing_gram(cb):
    """Gram matrix of the Killing form on the Chevalley coordinate basis."""
    key = id(cb)
    if key in _KILLING_CACHE:
        return _KILLING_CACHE[key]
    mats = cb.basis_matrices()
    m = len(mats)
    ad = []
    for g in mats:
        cols = [cb.coords_of(bracket(g, h)) for h in mats]
        ad.append(tuple(zip(*cols)))
    gram = tuple(
        tuple(trace(mat_mul(ad[i], ad[j])) for j in range(m)) for i in range(m)
    )
    _KILLING_CACHE[key] = gram
    return gram


def lie_invariants(model):
    """Basis-change invariants: elementary divisors of the Killing Gram
    and of the flattened bracket structure tensor in a model basis."""
    cb = model.cb
    gram = killing_gram(cb)
    basis = model.lattice.basis  # columns, coords in cb basis
    m = len(basis)
    g_lat = tuple(
        tuple(
            sum(basis[i][a] * gram[a][b] * basis[j][b] for a in range(m) for b in range(m))
            for j in range(m)
        )
        for i in range(m)
    )
    mats = [model.element(col) for col in basis]
    binv = mat_inv(model.lattice.basis_matrix())
    from latmod.matrixops import mat_vec

    tensor_rows = []
    for i in range(m):
        for j in range(m):
            coords = cb.coords_of(bracket(mats[i], mats[j]))
            tensor_rows.append(mat_vec(binv, coords))
    return {
        "killing_divisors": [str(d) for d in snf(g_lat)],
        "bracket_divisors": [str(d) for d in snf(tensor_rows)],
    }


# -----------------------------------------------------------------------
# Polynomials in the group coordinates
# -----------------------------------------------------------------------

PGL2_VARS = ("x11", "x12", "x21", "x22")


def poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb_ in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb_
    return {e: c for e, c in out.items() if c}


def poly_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, Fraction(0)) + c
    return {e: c for e, c in out.items() if c}


def poly_scale(c, a):
    c = F(c)
    return {e: c * x for e, x in a.items()} if c else {}


def poly_reduce_det(a):
    """Rewrite x11·x22 -> 1 + x12·x21 until no monomial has both."""
    work = dict(a)
    out = {}
    while work:
        e, c = work.popitem()
        if e[0] > 0 and e[3] > 0:
            base = (e[0] - 1, e[1], e[2], e[3] - 1)
            for extra in (base, (base[0], base[1] + 1, base[2] + 1, base[3])):
                cur = work.get(extra, Fraction(0)) + c
                if cur:
                    work[extra] = cur
                elif extra in work:
                    del work[extra]
        else:
            out[e] = out.get(e, Fraction(0)) + c
    return {e: c for e, c in out.items() if c}


def poly_str(a):
    terms = []
    for e in sorted(a, reverse=True):
        c = a[e]
        mono = "*".join(
            v if k == 1 else "%s^%d" % (v, k)
            for v, k in zip(PGL2_VARS, e)
            if k
        )
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append("%s*%s" % (c, mono))
    return " + ".join(terms) if terms else "0"


class HopfOrderGenerators:
    """Matrix-coefficient polynomials generating an order, plus metadata."""

    __slots__ = ("variables", "generators", "degree_bound")

    def __init__(self, generators, degree_bound=4):
        object.__setattr__(self, "variables", PGL2_VARS)
        object.__setattr__(
            self, "generators", tuple(poly_reduce_det(g) for g in generators)
        )
        object.__setattr__(self, "degree_bound", degree_bound)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def to_json_obj(self):
        return {
            "variables": list(self.variables),
            "generators": [
                {",".join(map(str, e)): str(c) for e, c in g.items()}
                for g in self.generators
            ],
            "degree_bound": self.degree_bound,
        }


def _sym2_symbolic():
    """The symmetric-square action matrix with polynomial entries, in the
    monomial basis e1^2, e1e2, e2^2."""

    def v(i):
        e = [0, 0, 0, 0]
        e[i] = 1
        return {tuple(e): Fraction(1)}

    a, b, c, d = v(0), v(1), v(2), v(3)
    two = {(0, 0, 0, 0): Fraction(2)}
    return (
        (poly_mul(a, a), poly_mul(a, b), poly_mul(b, b)),
        (
            poly_mul(two, poly_mul(a, c)),
            poly_add(poly_mul(a, d), poly_mul(b, c)),
            poly_mul(two, poly_mul(b, d)),
        ),
        (poly_mul(c, c), poly_mul(c, d), poly_mul(d, d)),
    )


def hopf_generators(rep, lat):
    """Matrix coefficients of the symmetric-square action in a lattice
    basis, as reduced polynomials in the group coordinates."""
    cb = rep.cb
    if cb.rs.type_label != "A" or cb.rs.rank != 1 or rep.dim != 3:
        raise ModelError("unsupported group presentation")
    if lat.ambient != 3 or lat.prime is not None:
        raise ModelError("expected a global lattice in the 3-dimensional space")
    s = _sym2_symbolic()
    b = lat.basis_matrix()
    binv = mat_inv(b)
    gens = []
    for i in range(3):
        for j in range(3):
            entry = {}
            for k in range(3):
                for l in range(3):
                    coef = binv[i][k] * b[l][j]
                    if coef:
                        entry = poly_add(entry, poly_scale(coef, s[k][l]))
            gens.append(entry)
    return HopfOrderGenerators(gens)


def torus_generators(weights, lat=None):
    """Matrix coefficients of a diagonal torus action in a lattice basis,
    as Laurent polynomials {exponent: coefficient} in one parameter."""
    n = len(weights)
    if lat is None:
        lat = Lattice([[Fraction(int(i == j)) for i in range(n)] for j in range(n)])
    if lat.ambient != n:
        raise ModelError("lattice has the wrong ambient dimension")
    b = lat.basis_matrix()
    binv = mat_inv(b)
    gens = []
    for i in range(n):
        for j in range(n):
            entry = {}
            for k in range(n):
                coef = binv[i][k] * b[k][j]
                if coef:
                    entry[weights[k]] = entry.get(weights[k], Fraction(0)) + coef
            entry = {e: c for e, c in entry.items() if c}
            if entry:
                gens.append(entry)
    # Deduplicate deterministically.
    seen = []
    for g in gens:
        if g not in seen:
            seen.append(g)
    return seen


# -----------------------------------------------------------------------
# Bounded-degree order comparison
# -----------------------------------------------------------------------


def _monomial_products(gens, degree_bound):
    """All products of generators with reduced ambient degree within the
    bound, as (polynomial, multiset of generator indices)."""
    out = [({(0, 0, 0, 0): Fraction(1)}, ())]
    frontier = [({(0, 0, 0, 0): Fraction(1)}, ())]
    while frontier:
        nxt = []
        for poly, word in frontier:
            start = word[-1] if word else 0
            for k in range(start, len(gens)):
                prod = poly_reduce_det(poly_mul(poly, gens[k]))
                if not prod:
                    continue
                deg = max(sum(e) for e in prod)
                if deg > degree_bound:
                    continue
                item = (prod, word + (k,))
                out.append(item)
                nxt.append(item)
        frontier = nxt
    return out


def _tracked_membership(products, target, p):
    """Decide membership of target in the Z_(p)-span of the product
    polynomials; returns (status, combination or witness).

    status: "member" with an integral combination [(coeff, word)],
    "excluded" with the offending p-denominator, or "outside" when the
    target is not even in the Q-span.
    """
    monomials = sorted({e for poly, _ in products for e in poly} | set(target))
    ix = {e: i for i, e in enumerate(monomials)}
    n = len(monomials)
    cols = []
    for poly, word in products:
        v = [Fraction(0)] * n
        for e, c in poly.items():
            v[ix[e]] = c
        cols.append((v, word))
    # Column echelon over Q with combination tracking; clear denominators
    # first so the echelon basis is an integral-combination basis.
    from math import lcm

    den = 1
    for v, _ in cols:
        for x in v:
            den = lcm(den, x.denominator)
    for poly, _ in [(target, None)]:
        for x in poly.values():
            den = lcm(den, x.denominator)
    work = []
    for k, (v, word) in enumerate(cols):
        combo = [Fraction(0)] * len(cols)
        combo[k] = Fraction(1)
        work.append(([x * den for x in v], combo))
    t = [Fraction(0)] * n
    for e, c in target.items():
        t[ix[e]] = c * den
    # Integer column echelon with combination tracking (denominators were
    # cleared, so all vector entries are integers throughout).
    ech = {}  # pivot row -> (vector, combination)
    for vec, combo in work:
        v = list(vec)
        c = list(combo)
        while True:
            piv = next((i for i, x in enumerate(v) if x != 0), None)
            if piv is None:
                break
            if v[piv] < 0:
                v = [-x for x in v]
                c = [-x for x in c]
            if piv not in ech:
                ech[piv] = (v, c)
                break
            w, wc = ech[piv]
            q = v[piv] // w[piv]
            v = [a - q * b for a, b in zip(v, w)]
            c = [a - q * b for a, b in zip(c, wc)]
            if v[piv] != 0:
                # Remainder became the smaller pivot: swap and continue.
                ech[piv], v, c = (v, c), w, wc
    echelon = sorted(ech.items())
    # Forward substitution of the target on the echelon columns.
    resid = list(t)
    combo = [Fraction(0)] * len(cols)
    bad_val = None
    for piv, (w, wc) in echelon:
        if resid[piv] != 0:
            q = resid[piv] / w[piv]
            if p is not None and vp(q, p) < 0:
                bad_val = q
            resid = [a - q * b for a, b in zip(resid, w)]
            combo = [a + q * b for a, b in zip(combo, wc)]
    if any(resid):
        return "outside", None
    if bad_val is not None:
        return "excluded", bad_val
    out = [
        (c, cols[k][1]) for k, c in enumerate(combo) if c
    ]
    return "member", out


def order_equal_bounded(g1, g2, degree_bound, p):
    """Tri-state bounded-degree equality of two orders.

    Returns a dict: status "equal" (with mutual certificates), "not_equal"
    (with a p-adic valuation witness), or "undecided" (a generator escapes
    the rational span at this bound).
    """
    report = {"status": "equal", "certificates": [], "witness": None}
    for left, right, direction in ((g1, g2, "1in2"), (g2, g1, "2in1")):
        products = _monomial_products(right.generators, degree_bound)
        for gi, gen in enumerate(left.generators):
            status, data = _tracked_membership(products, gen, p)
            if status == "member":
                report["certificates"].append(
                    {
                        "direction": direction,
                        "generator": gi,
                        "target": poly_str(gen),
                        "combination": [
                            {"coeff": str(c), "word": list(w)} for c, w in data
                        ],
                    }
                )
            elif status == "excluded":
                return {
                    "status": "not_equal",
                    "certificates": [],
                    "witness": {
                        "direction": direction,
                        "generator": gi,
                        "coefficient": str(data),
                    },
                }
            else:
                return {
                    "status": "undecided",
                    "certificates": [],
                    "witness": {"direction": direction, "generator": gi},
                }
    return report
