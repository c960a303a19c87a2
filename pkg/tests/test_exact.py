"""Exact lattice arithmetic: canonical forms, distance metric, enumeration.

Oracles used here are independent of the implementation paths they check:
brute-force membership boxes for HNF/intersection, a direct two-containment
search for the distance formula, and a closure-based subgroup counter for
enumerate_between.
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latmod.exact import (
    ElementaryDivisors,
    Lattice,
    LatticeError,
    ZSpan,
    distance,
    enumerate_between,
    hnf,
    index,
    lattice_intersect,
    lattice_sum,
    member,
    snf,
    standard_lattice,
    subgroup_count_of_quotient,
    vp,
)


def rnd_lattice(rng, n, prime=None, span=4):
    while True:
        cols = [[rng.randint(-span, span) for _ in range(n)] for _ in range(n)]
        try:
            return Lattice(cols, prime)
        except LatticeError:
            continue


def box_members(lat, radius):
    """All integer vectors in [-radius, radius]^n lying in lat."""
    n = lat.ambient
    out = []
    for v in itertools.product(range(-radius, radius + 1), repeat=n):
        if lat.member(v):
            out.append(v)
    return out


# -- hnf ----------------------------------------------------------------


def test_hnf_identity():
    assert hnf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    )


def test_hnf_index_two_covolume():
    lat = Lattice([[2, 0], [1, 1]])
    assert abs(lat.covolume()) == 2
    # Covolume equals the index: count residues of Z^2 mod the lattice
    # by brute force over one fundamental box.
    residues = set()
    for v in itertools.product(range(8), repeat=2):
        for r in list(residues):
            if lat.member([a - b for a, b in zip(v, r)]):
                break
        else:
            residues.add(v)
    assert len(residues) == 2


def test_hnf_redundant_generators():
    assert Lattice([[1, 0], [0, 1], [1, 1]]) == standard_lattice(2)


def test_hnf_generator_set_independence():
    rng = random.Random(7)
    for _ in range(25):
        lat = rnd_lattice(rng, 3)
        # Rebuild from random small integer combinations of the basis.
        while True:
            coeffs = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(4)]
            gens = [
                [
                    sum(Fraction(c[j]) * lat.basis[j][i] for j in range(3))
                    for i in range(3)
                ]
                for c in coeffs
            ]
            try:
                lat2 = Lattice(gens)
            except LatticeError:
                continue
            if lat.contains(lat2) and lat2.contains(lat):
                assert lat2 == lat
                break


def test_hnf_membership_box_oracle():
    rng = random.Random(11)
    for _ in range(10):
        lat = rnd_lattice(rng, 2, span=3)
        # x in lat iff adjoining x does not change the canonical form.
        for v in itertools.product(range(-3, 4), repeat=2):
            grown = Lattice(list(lat.basis) + [list(v)])
            assert lat.member(v) == (grown == lat)


def test_hnf_degenerate():
    with pytest.raises(LatticeError, match="degenerate basis"):
        Lattice([[1, 2], [2, 4]])


def test_hnf_idempotent():
    rng = random.Random(3)
    for _ in range(20):
        lat = rnd_lattice(rng, 3)
        assert Lattice(lat.basis) == lat


# -- snf ----------------------------------------------------------------


def test_snf_examples():
    assert list(snf([[1, 0], [0, 1]])) == [1, 1]
    assert list(snf([[2, 1], [0, 2]])) == [1, 4]
    assert list(snf([[2, 0], [0, 4]])) == [2, 4]


def test_snf_chain_and_det():
    rng = random.Random(5)
    for _ in range(30):
        rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        divs = list(snf(rows))
        for a, b in zip(divs, divs[1:]):
            assert b % a == 0
        from latmod.matrixops import det, mat

        d = det(mat(rows))
        if d != 0:
            prod = 1
            for x in divs:
                prod *= x
            assert prod == abs(d)


def test_elementary_divisors_validation():
    with pytest.raises(LatticeError):
        ElementaryDivisors([2, 3])
    assert list(ElementaryDivisors([1, 2, 4])) == [1, 2, 4]


# -- sum / intersect / index / member ------------------------------------


def test_intersect_example():
    a = Lattice([[2, 0], [0, 1]])
    b = Lattice([[1, 0], [0, 2]])
    assert lattice_intersect(a, b) == Lattice([[2, 0], [0, 2]])


def test_intersect_box_oracle():
    rng = random.Random(13)
    for _ in range(10):
        a = rnd_lattice(rng, 2, span=3)
        b = rnd_lattice(rng, 2, span=3)
        c = lattice_intersect(a, b)
        for v in itertools.product(range(-4, 5), repeat=2):
            assert c.member(v) == (a.member(v) and b.member(v))
        s = lattice_sum(a, b)
        # Sum contains both and is contained in anything containing both.
        assert s.contains(a) and s.contains(b)
        assert s.contains(c)


def test_sum_idempotent():
    lat = Lattice([[2, 1], [0, 3]])
    assert lattice_sum(lat, lat) == lat


def test_index_scalar():
    assert index(standard_lattice(2).scale(2), standard_lattice(2)) == 4


def test_index_multiplicative():
    rng = random.Random(17)
    for _ in range(20):
        c = rnd_lattice(rng, 3, span=2)
        b = c.scale(rng.choice([1, 2, 3]))
        a = b.scale(rng.choice([1, 2]))
        assert index(a, c) == index(a, b) * index(b, c)


def test_modular_identity():
    rng = random.Random(19)
    for _ in range(20):
        lam = rnd_lattice(rng, 3, span=2)
        m = rnd_lattice(rng, 3, span=2)
        assert lattice_intersect(lam, lattice_sum(lam, m)) == lam
        assert lattice_sum(lam, lattice_intersect(lam, m)) == lam


def test_mismatch_errors():
    with pytest.raises(LatticeError):
        lattice_sum(standard_lattice(2), standard_lattice(3))
    with pytest.raises(LatticeError):
        lattice_sum(standard_lattice(2), standard_lattice(2, prime=2))
    with pytest.raises(LatticeError):
        index(standard_lattice(2), standard_lattice(2).scale(2))


# -- local canonical form -------------------------------------------------


def test_local_units_collapse():
    assert Lattice([[3, 0], [0, 5]], prime=2) == standard_lattice(2, prime=2)
    assert Lattice([[Fraction(1, 3), 0], [0, 1]], prime=2) == standard_lattice(2, prime=2)


def test_local_equality_is_mutual_containment():
    rng = random.Random(23)
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        a = rnd_lattice(rng, 2, prime=p, span=3)
        b = rnd_lattice(rng, 2, prime=p, span=3)
        same = a.contains(b) and b.contains(a)
        assert (a == b) == same


def test_local_member_units():
    lat = standard_lattice(2, prime=2)
    assert lat.member([Fraction(1, 3), Fraction(2, 5)])
    assert not lat.member([Fraction(1, 2), 0])


# -- distance --------------------------------------------------------------


def distance_oracle(a, b, bound=12):
    """Defining search: minimal n with p^n·a ⊆ b, maximal m with b ⊆ p^m·a."""
    p = a.prime
    n = None
    for k in range(-bound, bound + 1):
        if b.contains(a.scale(Fraction(p) ** k)):
            n = k
            break
    m = None
    for k in range(bound, -bound - 1, -1):
        if a.scale(Fraction(p) ** k).contains(b):
            m = k
            break
    assert n is not None and m is not None
    return n - m


def test_distance_examples():
    lat = standard_lattice(2, prime=2)
    assert distance(lat, lat) == 0
    assert distance(lat, lat.scale(2)) == 0
    assert distance(lat, Lattice([[1, 0], [0, 4]], prime=2)) == 2


def test_distance_formula_vs_containment_search():
    rng = random.Random(29)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        n = rng.choice([1, 2, 3])
        a = rnd_lattice(rng, n, prime=p, span=4)
        b = rnd_lattice(rng, n, prime=p, span=4)
        assert distance(a, b) == distance_oracle(a, b)


def test_distance_metric_axioms():
    rng = random.Random(31)
    triples = 0
    while triples < 100:
        p = rng.choice([2, 3, 5])
        n = rng.choice([2, 3, 4])
        a = rnd_lattice(rng, n, prime=p, span=3)
        b = rnd_lattice(rng, n, prime=p, span=3)
        c = rnd_lattice(rng, n, prime=p, span=3)
        dab, dbc, dac = distance(a, b), distance(b, c), distance(a, c)
        assert dab >= 0
        assert dab == distance(b, a)
        assert dac <= dab + dbc
        # Identity of indiscernibles up to p-power scaling.
        if dab == 0:
            assert any(
                a.scale(Fraction(p) ** k) == b for k in range(-10, 11)
            )
        assert distance(a, a.scale(Fraction(p) ** rng.randint(-3, 3))) == 0
        triples += 1


# -- enumerate_between ------------------------------------------------------


def test_enumerate_between_trivial():
    lat = standard_lattice(2, prime=2)
    assert enumerate_between(lat, lat) == [lat]


def test_enumerate_between_examples():
    z2 = standard_lattice(2, prime=2)
    mids = enumerate_between(z2.scale(2), z2)
    assert len(mids) == 5
    z1 = standard_lattice(1)
    assert len(enumerate_between(z1.scale(4), z1)) == 3


def test_enumerate_between_unique_and_bounded():
    rng = random.Random(37)
    for _ in range(10):
        p = rng.choice([2, 3])
        high = rnd_lattice(rng, 2, prime=p, span=2)
        low = high.scale(p ** rng.choice([1, 2]))
        mids = enumerate_between(low, high)
        assert len(set(mids)) == len(mids)
        for m in mids:
            assert high.contains(m) and m.contains(low)


def test_enumerate_between_count_oracle():
    cases = [
        ([2, 2], None),
        ([1, 4], None),
        ([2, 4], None),
        ([3, 3], None),
        ([1, 8], None),
    ]
    for divs, _ in cases:
        n = len(divs)
        high = standard_lattice(n, prime=None)
        low = Lattice(
            [[divs[j] if i == j else 0 for i in range(n)] for j in range(n)]
        )
        got = len(enumerate_between(low, high))
        assert got == subgroup_count_of_quotient(divs)


def test_enumerate_between_errors():
    z = standard_lattice(2)
    with pytest.raises(LatticeError):
        enumerate_between(z, z.scale(2))


# -- serialization ----------------------------------------------------------


def test_json_roundtrip():
    rng = random.Random(41)
    for prime in (None, 2, 5):
        lat = rnd_lattice(rng, 3, prime=prime)
        assert Lattice.from_json(lat.to_json()) == lat
    obj = standard_lattice(2, prime=3).to_json_obj()
    assert obj["ring"] == {"Zp": 3}
    assert standard_lattice(2).to_json_obj()["ring"] == "Z"


# -- ZSpan -------------------------------------------------------------------


def test_zspan_membership():
    sp = ZSpan([[2, 0, 2], [0, 3, 3]], 3)
    assert sp.rank == 2
    assert sp.member([2, 3, 5])
    assert not sp.member([1, 0, 1])
    assert not sp.member([0, 0, 1])
    loc = ZSpan([[2, 0, 2], [0, 3, 3]], 3, prime=3)
    assert loc.member([1, 0, 1])  # 2 is a unit at p=3
    assert not loc.member([0, 1, 1])


def test_zspan_add():
    a = ZSpan([[1, 0]], 2)
    b = ZSpan([[0, 1]], 2)
    assert a.add(b).rank == 2
    assert a.add_vectors([[0, 2]]).member([1, 2])


# -- hypothesis property tests ------------------------------------------------


small_col = st.lists(st.integers(-6, 6), min_size=2, max_size=2)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_col, min_size=2, max_size=4))
def test_hnf_canonical_under_append(cols):
    try:
        lat = Lattice(cols)
    except LatticeError:
        return
    v = [sum(Fraction(x) for x in xs) for xs in zip(*lat.basis)]
    assert Lattice(list(lat.basis) + [v]) == lat


@settings(max_examples=60, deadline=None)
@given(
    st.lists(small_col, min_size=2, max_size=2),
    st.lists(small_col, min_size=2, max_size=2),
)
def test_sum_absorbs_intersection(c1, c2):
    try:
        a = Lattice(c1)
        b = Lattice(c2)
    except LatticeError:
        return
    i = lattice_intersect(a, b)
    s = lattice_sum(a, b)
    assert lattice_sum(a, i) == a
    assert lattice_intersect(a, s) == a
    assert index(i, a) * index(a, s) == index(i, b) * index(b, s)


def test_vp():
    assert vp(Fraction(8, 3), 2) == 3
    assert vp(Fraction(3, 8), 2) == -3
    assert vp(5, 5) == 1
    with pytest.raises(ValueError):
        vp(0, 2)
