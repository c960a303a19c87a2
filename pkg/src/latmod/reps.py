"""Highest-weight representations with exact rational action matrices.

A Representation carries the action of every Chevalley generator in a
weight-adapted basis: each basis vector is a weight vector, assigned to an
isotypic component, so the (psi, chi) blocks are plain index lists and the
projections onto them are 0/1 diagonal matrices.

Irreducibles are built inside tensor products of symmetric and exterior
powers of the defining realization: locate a highest-weight vector as a
joint kernel of the raising operators, then take the cyclic span under the
lowering operators.  The symmetric-power path keeps the classical monomial
basis (e1^k, e1^{k-1}e2, ...) so rank-1 symmetric powers come out in the
textbook coordinates.
"""

import itertools
import json
from fractions import Fraction
from math import lcm

from latmod.exact import ZSpan
from latmod.matrixops import (
    F,
    QSpan,
    bracket,
    identity,
    mat,
    mat_inv,
    mat_mul,
    mat_vec,
    solve,
    zeros,
)


class RepError(ValueError):
    pass


# -----------------------------------------------------------------------
# Raw action triples (dim, action dict, weights) used during construction
# -----------------------------------------------------------------------


def _defining_raw(cb):
    action = dict(cb.x)
    for i, hm in enumerate(cb.h):
        action[("h", i)] = hm
    weights = tuple(
        tuple(int(cb.h[i][k][k]) for i in range(cb.rs.rank)) for k in range(cb.N)
    )
    return (cb.N, action, weights)


def _trivial_raw(cb):
    rank = cb.rs.rank
    action = {a: zeros(1, 1) for a in cb.rs.all_roots}
    for i in range(rank):
        action[("h", i)] = zeros(1, 1)
    return (1, action, ((0,) * rank,))


def _tensor_raw(r1, r2):
    d1, a1, w1 = r1
    d2, a2, w2 = r2
    d = d1 * d2
    action = {}
    for key in a1:
        g1 = a1[key]
        g2 = a2[key]
        m = [[Fraction(0)] * d for _ in range(d)]
        for i1 in range(d1):
            for j1 in range(d1):
                if g1[i1][j1]:
                    for k in range(d2):
                        m[i1 * d2 + k][j1 * d2 + k] += g1[i1][j1]
        for i2 in range(d2):
            for j2 in range(d2):
                if g2[i2][j2]:
                    for k in range(d1):
                        m[k * d2 + i2][k * d2 + j2] += g2[i2][j2]
        action[key] = mat(m)
    weights = tuple(
        tuple(x + y for x, y in zip(w1[i], w2[j]))
        for i in range(d1)
        for j in range(d2)
    )
    return (d, action, weights)


def _sym_power_raw(raw, k):
    """Symmetric power on the monomial basis, generators as derivations."""
    d0, a0, w0 = raw
    basis = sorted(
        (m for m in itertools.product(range(k + 1), repeat=d0) if sum(m) == k),
        reverse=True,
    )
    idx = {m: i for i, m in enumerate(basis)}
    d = len(basis)
    action = {}
    for key, g in a0.items():
        m = [[Fraction(0)] * d for _ in range(d)]
        for src, mono in enumerate(basis):
            for j in range(d0):
                if mono[j] == 0:
                    continue
                for i in range(d0):
                    if g[i][j] == 0:
                        continue
                    tgt = list(mono)
                    tgt[j] -= 1
                    tgt[i] += 1
                    m[idx[tuple(tgt)]][src] += mono[j] * g[i][j]
        action[key] = mat(m)
    weights = tuple(
        tuple(sum(e * w0[j][i] for j, e in enumerate(mono)) for i in range(len(w0[0])))
        for mono in basis
    )
    return (d, action, weights)


def _ext_power_raw(raw, k):
    d0, a0, w0 = raw
    basis = list(itertools.combinations(range(d0), k))
    idx = {s: i for i, s in enumerate(basis)}
    d = len(basis)
    action = {}
    for key, g in a0.items():
        m = [[Fraction(0)] * d for _ in range(d)]
        for src, sub in enumerate(basis):
            for t, j in enumerate(sub):
                for i in range(d0):
                    if g[i][j] == 0 or (i in sub and i != j):
                        continue
                    new = list(sub)
                    new[t] = i
                    # Re-sort and track the permutation sign.
                    sign = 1
                    pos = t
                    while pos > 0 and new[pos - 1] > new[pos]:
                        new[pos - 1], new[pos] = new[pos], new[pos - 1]
                        pos -= 1
                        sign = -sign
                    while pos < k - 1 and new[pos + 1] < new[pos]:
                        new[pos + 1], new[pos] = new[pos], new[pos + 1]
                        pos += 1
                        sign = -sign
                    m[idx[tuple(new)]][src] += sign * g[i][j]
        action[key] = mat(m)
    weights = tuple(
        tuple(sum(w0[j][i] for j in sub) for i in range(len(w0[0])))
        for sub in basis
    )
    return (d, action, weights)


# -----------------------------------------------------------------------
# Representation
# -----------------------------------------------------------------------


def _primitive_vec(v):
    from math import gcd

    den = 1
    for x in v:
        den = lcm(den, F(x).denominator)
    ints = [int(F(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


class Representation:
    """Weight-adapted representation of a Chevalley basis.

    action maps each generator key (root fund-coords tuple, or ("h", i))
    to a dim×dim rational matrix; weights[i] is the weight of basis vector
    i; psi_of[i] names its isotypic component; blocks[(psi, chi)] lists the
    basis indices of the chi-weight space of the psi-component.
    """

    __slots__ = ("cb", "dim", "action", "weights", "psi_of", "blocks", "highest_weights")

    def __init__(self, cb, action, check=True):
        rank = cb.rs.rank
        dim = len(next(iter(action.values())))
        for i in range(rank):
            hm = action[("h", i)]
            for r in range(dim):
                for c in range(dim):
                    if r != c and hm[r][c] != 0:
                        raise RepError("Cartan generators must act diagonally")
                    if r == c and hm[r][c].denominator != 1:
                        raise RepError("non-integral weight")
        if check:
            self._check_homomorphism(cb, action, dim)
        raw_weights = tuple(
            tuple(int(action[("h", i)][k][k]) for i in range(rank)) for k in range(dim)
        )
        basis_cols, psi_of = self._adapt(cb, action, raw_weights, dim)
        b = tuple(zip(*basis_cols))  # dim×dim, columns are the new basis
        binv = mat_inv(b)
        new_action = {
            key: mat_mul(binv, mat_mul(g, b)) for key, g in action.items()
        }
        weights = tuple(
            tuple(int(new_action[("h", i)][k][k]) for i in range(rank))
            for k in range(dim)
        )
        blocks = {}
        for i in range(dim):
            blocks.setdefault((psi_of[i], weights[i]), []).append(i)
        hw = sorted((psi for psi in psi_of if True), reverse=True)
        # Multiset of highest weights: one entry per 1-dim highest block copy.
        mult = {}
        for psi in set(psi_of):
            mult[psi] = len(blocks[(psi, psi)])
        hws = []
        for psi in sorted(mult, reverse=True):
            hws.extend([psi] * mult[psi])
        self.cb = cb
        self.dim = dim
        self.action = new_action
        self.weights = weights
        self.psi_of = tuple(psi_of)
        self.blocks = {k: tuple(v) for k, v in blocks.items()}
        self.highest_weights = tuple(hws)

    @staticmethod
    def _check_homomorphism(cb, action, dim):
        keys = cb.basis_order()
        mats = cb.basis_matrices()

        def lift(m):
            coords = cb.coords_of(m)
            if coords is None:
                raise RepError("bracket escapes the Lie algebra")
            out = [[Fraction(0)] * dim for _ in range(dim)]
            for c, key in zip(coords, keys):
                if c:
                    g = action[key]
                    for r in range(dim):
                        for s in range(dim):
                            out[r][s] += c * g[r][s]
            return mat(out)

        for i, ki in enumerate(keys):
            for j in range(i + 1, len(keys)):
                expect = lift(bracket(mats[i], mats[j]))
                got = bracket(action[ki], action[keys[j]])
                if got != expect:
                    raise RepError("not a representation")

    @staticmethod
    def _adapt(cb, action, weights, dim):
        """Adapted basis columns and per-column isotypic labels."""
        rank = cb.rs.rank
        raising = [action[a] for a in cb.rs.simple]
        lowering = [action[tuple(-c for c in a)] for a in cb.rs.simple]
        # Highest-weight vectors, per ambient weight, echelon order.
        from latmod.matrixops import nullspace

        hw_vectors = []
        for w in sorted(set(weights), reverse=True):
            cols = [i for i in range(dim) if weights[i] == w]
            rows = []
            for g in raising:
                for r in range(dim):
                    rows.append(tuple(g[r][c] for c in cols))
            ker = nullspace(mat(rows)) if rows else ()
            for kv in ker:
                full = [Fraction(0)] * dim
                for c, x in zip(cols, kv):
                    full[c] = x
                hw_vectors.append((w, tuple(full)))
        if any(c < 0 for w, _ in hw_vectors for c in w):
            raise RepError("non-dominant highest weight: not completely adapted")
        basis_cols = []
        psi_of = []
        span = QSpan(dim)
        for psi, v in hw_vectors:
            queue = [_primitive_vec(v)]
            local = []
            while queue:
                vec = queue.pop(0)
                if not span.insert(vec):
                    continue
                local.append(vec)
                for g in lowering:
                    img = mat_vec(g, vec)
                    if any(img):
                        queue.append(_primitive_vec(img))
            basis_cols.extend(local)
            psi_of.extend([psi] * len(local))
        if span.rank != dim:
            raise RepError("cyclic spans do not exhaust the space")
        return basis_cols, psi_of

    # -- queries -------------------------------------------------------

    def block(self, psi, chi):
        return self.blocks.get((tuple(psi), tuple(chi)), ())

    def distinct_highest_weights(self):
        return tuple(sorted(set(self.highest_weights), reverse=True))

    def rho_lift(self, m):
        """Action matrix of an arbitrary element of the Lie algebra."""
        coords = self.cb.coords_of(m)
        if coords is None:
            raise RepError("element outside the Lie algebra")
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for c, key in zip(coords, self.cb.basis_order()):
            if c:
                g = self.action[key]
                for r in range(self.dim):
                    for s in range(self.dim):
                        out[r][s] += c * g[r][s]
        return mat(out)

    def to_json_obj(self):
        def m2s(m):
            return [[str(x) for x in row] for row in m]

        def key2s(k):
            if isinstance(k, tuple) and k and k[0] == "h":
                return "h%d" % k[1]
            return ",".join(map(str, k))

        return {
            "dim": self.dim,
            "rootsystem": self.cb.rs.to_json_obj(),
            "action": {key2s(k): m2s(v) for k, v in self.action.items()},
            "weights": [list(w) for w in self.weights],
            "highest_weights": [list(w) for w in self.highest_weights],
            "blocks": {
                "%s|%s" % (",".join(map(str, p)), ",".join(map(str, c))): list(ix)
                for (p, c), ix in sorted(self.blocks.items())
            },
        }


# -----------------------------------------------------------------------
# Constructors
# -----------------------------------------------------------------------


def build_irrep(cb, psi):
    """Irreducible representation with highest weight psi (fund coords)."""
    psi = tuple(int(x) for x in psi)
    rank = cb.rs.rank
    if len(psi) != rank or any(x < 0 for x in psi):
        raise RepError("highest weight must be a dominant integer vector")
    defining = _defining_raw(cb)
    ambient = _trivial_raw(cb)
    if psi[0]:
        ambient = _tensor_raw(ambient, _sym_power_raw(defining, psi[0]))
    for i in range(1, rank):
        ext = _ext_power_raw(defining, i + 1)
        for _ in range(psi[i]):
            ambient = _tensor_raw(ambient, ext)
    d, action, weights = ambient
    # Highest-weight vector of weight psi: joint kernel of the raising
    # operators inside the psi weight space.
    cols = [i for i in range(d) if weights[i] == psi]
    if not cols:
        raise RepError("highest weight %r not reachable in this realization" % (psi,))
    from latmod.matrixops import nullspace

    rows = []
    for a in cb.rs.simple:
        g = action[a]
        for r in range(d):
            rows.append(tuple(g[r][c] for c in cols))
    ker = nullspace(mat(rows))
    if not ker:
        raise RepError("highest weight %r not reachable in this realization" % (psi,))
    v = [Fraction(0)] * d
    for c, x in zip(cols, ker[0]):
        v[c] = x
    # Cyclic span under the lowering operators.
    lowering = [action[tuple(-c for c in a)] for a in cb.rs.simple]
    span = QSpan(d)
    basis_cols = []
    queue = [_primitive_vec(v)]
    while queue:
        vec = queue.pop(0)
        if not span.insert(vec):
            continue
        basis_cols.append(vec)
        for g in lowering:
            img = mat_vec(g, vec)
            if any(img):
                queue.append(_primitive_vec(img))
    if len(basis_cols) == d:
        # Ambient is already irreducible; keep its natural (monomial) basis.
        return Representation(cb, action)
    bmat = tuple(zip(*basis_cols))  # d × r
    sub_action = {}
    for key, g in action.items():
        cols_out = []
        for b in basis_cols:
            img = mat_vec(g, b)
            coords = solve(bmat, img)
            if coords is None:
                raise RepError("cyclic span not invariant (construction bug)")
            cols_out.append(coords)
        sub_action[key] = tuple(zip(*cols_out))
    return Representation(cb, sub_action)


def direct_sum(reps):
    if not reps:
        raise RepError("empty direct sum")
    cb = reps[0].cb
    if any(r.cb is not cb for r in reps):
        raise RepError("direct sum requires a common Chevalley basis")
    dim = sum(r.dim for r in reps)
    action = {}
    for key in reps[0].action:
        m = [[Fraction(0)] * dim for _ in range(dim)]
        off = 0
        for r in reps:
            g = r.action[key]
            for i in range(r.dim):
                for j in range(r.dim):
                    m[off + i][off + j] = g[i][j]
            off += r.dim
        action[key] = mat(m)
    return Representation(cb, action, check=False)


def tensor_product(r1, r2):
    if r1.cb is not r2.cb:
        raise RepError("tensor product requires a common Chevalley basis")
    d, action, _ = _tensor_raw(
        (r1.dim, r1.action, r1.weights), (r2.dim, r2.action, r2.weights)
    )
    return Representation(r1.cb, action, check=False)


def decompose(rep):
    """Multiset of highest weights as sorted (psi, multiplicity) pairs."""
    out = {}
    for psi in rep.highest_weights:
        out[psi] = out.get(psi, 0) + 1
    return sorted(out.items(), reverse=True)


def projector(rep, psi, chi):
    """0/1 diagonal projection onto the (psi, chi) block; zero if absent."""
    ix = set(rep.block(psi, chi))
    return tuple(
        tuple(Fraction(int(i == j and i in ix)) for j in range(rep.dim))
        for i in range(rep.dim)
    )


# -----------------------------------------------------------------------
# Surjectivity of graded enveloping-algebra maps
# -----------------------------------------------------------------------


def _root_coords(cb, fund_diff):
    """Simple-root coordinates of a fund-coords vector, or None."""
    # fund(sum m_j alpha_j)_i = sum_j cartan[i][j] m_j
    x = solve(mat(cb.rs.cartan_matrix), [F(t) for t in fund_diff])
    if x is None or any(t.denominator != 1 for t in x):
        return None
    return tuple(int(t) for t in x)


def check_transition_surjectivity(rep, psi, chi, sign):
    """Do graded generator words span Hom(highest block, chi block)?

    sign -1 uses lowering words mapping the psi block to the chi block;
    sign +1 uses raising words mapping the chi block back up.  Returns
    (surjective, rank).
    """
    psi = tuple(psi)
    chi = tuple(chi)
    cb = rep.cb
    src = rep.block(psi, psi)
    tgt = rep.block(psi, chi)
    if not src or not tgt:
        raise RepError("chi is not a weight of the psi component")
    m = _root_coords(cb, tuple(a - b for a, b in zip(psi, chi)))
    if m is None or any(x < 0 for x in m):
        raise RepError("chi not under psi in the root order")
    letters = []
    for i, a in enumerate(cb.rs.simple):
        key = a if sign > 0 else tuple(-c for c in a)
        letters.extend([key] * m[i])
    if sign > 0:
        rows_ix, cols_ix = src, tgt
    else:
        rows_ix, cols_ix = tgt, src
    target_dim = len(rows_ix) * len(cols_ix)
    span = QSpan(target_dim)
    for word in set(itertools.permutations(letters)):
        prod = identity(rep.dim)
        for key in word:
            prod = mat_mul(rep.action[key], prod)
        flat = tuple(prod[r][c] for r in rows_ix for c in cols_ix)
        span.insert(flat)
    return span.rank == target_dim, span.rank


# -----------------------------------------------------------------------
# Projector constant
# -----------------------------------------------------------------------


def projector_constant(rep, scales=None):
    """Minimal positive r with r·pr_(psi),chi in the degree-0 generator span.

    The span is the Z-lattice of endomorphisms generated by products of the
    Chevalley-lattice generators (root vectors optionally rescaled by
    `scales`, plus the Cartan lattice), graded by root-lattice degree;
    degree-0 products of length up to the certified cap.
    """
    cb = rep.cb
    scales = scales or {}
    d = rep.dim
    rank = cb.rs.rank
    gens = []  # (degree root-coords, matrix)
    for a in cb.rs.all_roots:
        deg = cb.rs.expansion(a)
        g = rep.action[a]
        s = F(scales.get(a, 1))
        if s != 1:
            g = tuple(tuple(s * x for x in row) for row in g)
        gens.append((deg, g))
    for col in cb.cartan_lattice.basis:
        m = [[Fraction(0)] * d for _ in range(d)]
        for i, c in enumerate(col):
            if c:
                hm = rep.action[("h", i)]
                for r in range(d):
                    m[r][r] += c * hm[r][r]
        gens.append(((0,) * rank, mat(m)))
    # Degrees that can act nonzero: differences of weights, in root coords.
    allowed = set()
    for w1 in set(rep.weights):
        for w2 in set(rep.weights):
            rc = _root_coords(cb, tuple(a - b for a, b in zip(w1, w2)))
            if rc is not None:
                allowed.add(rc)
    zero = (0,) * rank
    flat_id = tuple(identity(d)[r][c] for r in range(d) for c in range(d))
    spans = {zero: ZSpan([flat_id], d * d)}
    heights = [
        sum(_root_coords(cb, tuple(a - b for a, b in zip(psi, chi))))
        for (psi, chi) in rep.blocks
    ]
    cap = max(heights) + 2
    stabilized_at = None
    for step in range(1, cap + 1):
        grew = False
        items = list(spans.items())
        for deg, sp in items:
            for gdeg, g in gens:
                nd = tuple(a + b for a, b in zip(deg, gdeg))
                if nd not in allowed:
                    continue
                new_vecs = []
                for v in sp.basis:
                    vm = tuple(tuple(v[r * d + c] for c in range(d)) for r in range(d))
                    prod = mat_mul(g, vm)
                    new_vecs.append(
                        tuple(prod[r][c] for r in range(d) for c in range(d))
                    )
                old = spans.get(nd)
                merged = (
                    old.add_vectors(new_vecs)
                    if old is not None
                    else ZSpan(new_vecs, d * d)
                )
                if merged != old:
                    spans[nd] = merged
                    grew = True
        if not grew:
            stabilized_at = step
            break
    if stabilized_at is None:
        raise RepError("degree-0 span did not stabilize within the length cap")
    deg0 = spans[zero]
    r_total = 1
    for (psi, chi) in rep.blocks:
        pr = projector(rep, psi, chi)
        flat = tuple(pr[r][c] for r in range(d) for c in range(d))
        coords = deg0.coords(flat)
        if coords is None:
            raise RepError("projector outside the rational degree-0 span")
        r_total = lcm(r_total, *[c.denominator for c in coords]) if coords else r_total
    return r_total
