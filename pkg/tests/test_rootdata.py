"""Root systems and Chevalley bases: structure constants, coroots, lattices.

The ChevalleyBasis constructor verifies every bracket identity eagerly, so
these tests mostly pin down the public data (counts, Cartan matrices,
specific structure constants) and exercise the lattice-closure invariant.
"""

from fractions import Fraction

import pytest

from latmod.matrixops import bracket, mat_scale, mat_sub, zeros
from latmod.rootdata import (
    ChevalleyBasis,
    RootDataError,
    build_chevalley,
    build_root_system,
    killing_h,
)

ROOT_COUNTS = {
    ("A", 1): 2,
    ("A", 2): 6,
    ("A", 3): 12,
    ("A", 4): 20,
    ("B", 2): 8,
    ("B", 3): 18,
    ("B", 4): 32,
    ("C", 2): 8,
    ("C", 3): 18,
    ("C", 4): 32,
    ("D", 3): 12,
    ("D", 4): 24,
}


def test_unsupported():
    with pytest.raises(RootDataError):
        build_root_system("E", 6)
    with pytest.raises(RootDataError):
        build_root_system("A", 5)
    with pytest.raises(RootDataError):
        build_root_system("D", 2)


def test_root_counts_and_symmetry():
    for (t, r), count in ROOT_COUNTS.items():
        rs = build_root_system(t, r)
        assert len(rs.all_roots) == count
        negs = {tuple(-c for c in a) for a in rs.all_roots}
        assert negs == set(rs.all_roots)
        for beta in rs.all_roots:
            exp = rs.expansion(beta)
            assert all(c >= 0 for c in exp) or all(c <= 0 for c in exp)


def test_a1():
    rs = build_root_system("A", 1)
    assert rs.cartan_matrix == ((2,),)
    assert set(rs.all_roots) == {(2,), (-2,)}


def test_a2_cartan():
    rs = build_root_system("A", 2)
    assert rs.cartan_matrix == ((2, -1), (-1, 2))


def test_a2_closure_oracle():
    # Brute-force closure of {±α₁, ±α₂, ±(α₁+α₂)} under root addition:
    # the only sums of roots that are roots stay in that six-element set.
    rs = build_root_system("A", 2)
    exps = {rs.expansion(b) for b in rs.all_roots}
    assert exps == {(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)}
    for a in exps:
        for b in exps:
            s = tuple(x + y for x, y in zip(a, b))
            if any(s) and (all(c >= 0 for c in s) or all(c <= 0 for c in s)):
                if max(abs(c) for c in s) <= 1:
                    assert s in exps


def test_c2_long_root():
    rs = build_root_system("C", 2)
    assert len(rs.all_roots) == 8
    exps = {rs.expansion(b) for b in rs.positive}
    assert (2, 1) in exps  # the long root 2α₁ + α₂


def test_positive_roots_height_ordered():
    for t, r in ROOT_COUNTS:
        rs = build_root_system(t, r)
        heights = [rs.height(b) for b in rs.positive]
        assert heights == sorted(heights)
        assert heights[: rs.rank].count(1) == rs.rank


# -- Chevalley bases ---------------------------------------------------------


def test_a1_chevalley_matrices():
    cb = build_chevalley("A", 1)
    alpha = cb.rs.positive[0]
    e12 = ((0, 1), (0, 0))
    e21 = ((0, 0), (1, 0))
    h = ((1, 0), (0, -1))
    assert tuple(tuple(int(x) for x in row) for row in cb.x[alpha]) == e12
    assert tuple(tuple(int(x) for x in row) for row in cb.x[(-2,)]) == e21
    assert tuple(tuple(int(x) for x in row) for row in cb.h[0]) == h
    assert bracket(cb.x[alpha], cb.x[(-2,)]) == cb.h[0]


def test_a2_simple_bracket_unit_constant():
    cb = build_chevalley("A", 2)
    a1, a2 = cb.rs.simple
    c = cb.structure_constant(a1, a2)
    assert abs(c) == 1 and c.denominator == 1


def test_c2_has_constant_two():
    cb = build_chevalley("C", 2)
    found = {
        abs(cb.structure_constant(a, b))
        for a in cb.rs.all_roots
        for b in cb.rs.all_roots
    }
    assert Fraction(2) in found


def test_construction_verifies_all_types():
    # The constructor raises on any failed bracket identity; success here
    # is the full quadratic sweep for every supported small type.
    for t, r in (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("D", 3)):
        cb = build_chevalley(t, r)
        assert cb.N >= r + 1


def test_structure_constants_integral():
    for t, r in (("A", 2), ("B", 2), ("C", 2)):
        cb = build_chevalley(t, r)
        for a in cb.rs.all_roots:
            for b in cb.rs.all_roots:
                c = cb.structure_constant(a, b)
                assert c.denominator == 1


# -- coroots and the Cartan lattice ------------------------------------------


def test_killing_h_a1():
    rs = build_root_system("A", 1)
    alpha = rs.positive[0]
    cb = build_chevalley("A", 1)
    coords = killing_h(rs, alpha)
    assert cb.pairing(alpha, coords) == 2


def test_killing_h_a2():
    rs = build_root_system("A", 2)
    cb = build_chevalley("A", 2)
    a1, a2 = rs.simple
    assert cb.pairing(a1, killing_h(rs, a2)) == -1


def test_killing_h_c2():
    rs = build_root_system("C", 2)
    cb = build_chevalley("C", 2)
    short, long_ = rs.simple
    assert rs.expansion(long_) in ((0, 1),)
    assert cb.pairing(short, killing_h(rs, long_)) == -1
    assert cb.pairing(long_, killing_h(rs, short)) == -2


def test_pairing_integral_over_all_roots():
    for t, r in (("A", 3), ("B", 3), ("C", 3), ("D", 3)):
        cb = build_chevalley(t, r)
        for alpha in cb.rs.all_roots:
            coords = cb.h_alpha_coords(alpha)
            assert all(c.denominator == 1 for c in coords)
            for beta in cb.rs.all_roots:
                assert cb.pairing(beta, coords).denominator == 1


def test_chevalley_lattice_bracket_closed():
    # C(x) = 𝔗₀ ⊕ ⊕ Z·x_α closed under bracket: bracket all generator
    # pairs and test integrality of the coordinates.
    for t, r in (("A", 2), ("C", 2)):
        cb = build_chevalley(t, r)
        gens = cb.basis_matrices()
        for a in gens:
            for b in gens:
                coords = cb.coords_of(bracket(a, b))
                assert coords is not None
                assert all(c.denominator == 1 for c in coords)


def test_coords_roundtrip():
    cb = build_chevalley("B", 2)
    for m in cb.basis_matrices():
        coords = cb.coords_of(m)
        assert cb.from_coords(coords) == m
    # Something outside the algebra has no coordinates.
    outside = tuple(
        tuple(Fraction(int(i == 0 and j == 0)) for j in range(cb.N))
        for i in range(cb.N)
    )
    assert cb.coords_of(outside) is None


def test_isogeny_flag():
    sc = build_chevalley("A", 1, "sc")
    adj = build_chevalley("A", 1, "adjoint")
    assert sc.cartan_lattice.basis == ((Fraction(1),),)
    assert adj.cartan_lattice.basis == ((Fraction(1, 2),),)
    with pytest.raises(RootDataError):
        ChevalleyBasis(build_root_system("A", 1), "foo")


def test_cartan_acts_integrally_on_cartan_lattice():
    # [t, x_α] ∈ Z·x_α for t in the Cartan lattice basis requires integer
    # α(t); with the simply connected default this is the Cartan pairing.
    cb = build_chevalley("C", 2)
    for col in cb.cartan_lattice.basis:
        for alpha in cb.rs.all_roots:
            val = cb.pairing(alpha, col)
            assert val.denominator == 1


def test_json_roundtrip_smoke():
    import json

    cb = build_chevalley("A", 2)
    obj = cb.to_json_obj()
    text = json.dumps(obj)
    back = json.loads(text)
    assert back["rootsystem"]["cartan_matrix"] == [[2, -1], [-1, 2]]
    assert back["defining_dim"] == 3
    assert len(back["x"]) == 6
