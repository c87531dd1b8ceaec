import math
import random

import pytest

from conftest import random_arrangement
from recfree.arrangement import make_arrangement
from recfree.catalog import builtin
from recfree.exactfield import QQ
from recfree.lattice import (
    CharPoly, IntersectionLattice, NotDivisibleByTMinus1, build_lattice, char_poly, check_bijection,
    extend_lattice, factor_exponents, invariants, lattice_isomorphic,
)


def test_flats_examples():
    L = build_lattice(builtin("boolean3"))
    assert len(L.flats) == 3 and L.flat_sizes() == [2, 2, 2]
    L = build_lattice(builtin("A_H3_27"))
    assert len(L.flats) == 91
    assert sorted(build_lattice(builtin("near_pencil4")).flat_sizes()) == [2, 2, 2, 3]


def test_char_poly_examples():
    assert char_poly(build_lattice(builtin("A_H3_27"))).coefficients == [1, -27, 191, -165]
    assert char_poly(build_lattice(builtin("boolean3"))).coefficients == [1, -3, 3, -1]
    assert char_poly(build_lattice(builtin("near_pencil4"))).coefficients == [1, -4, 5, -2]
    assert char_poly(build_lattice(builtin("generic4"))).coefficients == [1, -4, 6, -3]
    assert str(CharPoly(1, -27, 191, -165)) == "t^3 - 27t^2 + 191t - 165"


def test_factor_examples():
    assert factor_exponents(CharPoly(1, -27, 191, -165)) == (1, 11, 15)
    assert factor_exponents(CharPoly(1, -3, 3, -1)) == (1, 1, 1)
    assert factor_exponents(CharPoly(1, -4, 6, -3)) is None
    with pytest.raises(NotDivisibleByTMinus1):
        factor_exponents(CharPoly(1, 0, 0, 1))


def test_invariants_examples():
    hs, ps = invariants(builtin("A_H3_27"))
    assert hs == {10: 15, 11: 12} and ps == {2: 15, 3: 70, 7: 6}
    assert invariants(builtin("B_F11_27")) == (hs, ps)


def _check_lattice(L):
    assert L.pair_count_ok()
    assert sum(math.comb(s, 2) for s in L.flat_sizes()) == math.comb(L.n, 2)
    c = char_poly(L)
    assert c(1) == 0 and c.c2 == -L.n
    exps = factor_exponents(c)
    if exps is not None:
        _, d1, d2 = exps
        assert 1 + d1 + d2 == L.n and d1 * d2 == -c.c0
        assert [c(t) for t in range(-3, 4)] == [(t - 1) * (t - d1) * (t - d2) for t in range(-3, 4)]


def test_pair_counting_random():
    rng = random.Random(7)
    for i in range(50):
        p = (5, 7, 11)[i % 3]
        _check_lattice(build_lattice(random_arrangement(rng, p, rng.randint(3, 12))))


def test_pair_counting_builtins():
    for name in ("A_H3_27", "B_F11_27", "B_F11_plus_7", "braid6", "generic4"):
        _check_lattice(build_lattice(builtin(name)))


def test_extend_matches_rebuild():
    rng = random.Random(11)
    for _ in range(20):
        a = random_arrangement(rng, 7, rng.randint(4, 10))
        b = random_arrangement(rng, 7, 3)
        for h in b:
            if h in a:
                continue
            L1 = extend_lattice(build_lattice(a), a, h.normal)
            L2 = build_lattice(a.add(h))
            assert sorted(f.incident for f in L1.flats) == sorted(f.incident for f in L2.flats)


def test_delete_matches_rebuild():
    a = builtin("A_H3_27")
    L = build_lattice(a)
    from recfree.arrangement import delete
    for h in (0, 13, 26):
        L1 = L.delete(h)
        L2 = build_lattice(delete(a, h))
        assert sorted(f.incident for f in L1.flats) == sorted(f.incident for f in L2.flats)


def test_iso_a_b():
    LA, LB = build_lattice(builtin("A_H3_27")), build_lattice(builtin("B_F11_27"))
    sigma = lattice_isomorphic(LA, LB)
    assert sigma is not None and check_bijection(LA, LB, sigma)


def test_iso_self_and_relabel():
    rng = random.Random(3)
    for name in ("A_H3_27", "braid6", "near_pencil4"):
        L = build_lattice(builtin(name))
        sigma = lattice_isomorphic(L, L)
        assert check_bijection(L, L, sigma)
        perm = list(range(L.n))
        rng.shuffle(perm)
        M = IntersectionLattice.from_incidence(L.n, [[perm[i] for i in f.incident] for f in L.flats])
        tau = lattice_isomorphic(L, M)
        assert tau is not None and check_bijection(L, M, tau)


def test_iso_absent():
    Q = QQ()
    boolean = build_lattice(builtin("boolean3"))
    # a pencil of three planes: one flat containing all three
    pencil = IntersectionLattice.from_incidence(3, [(0, 1, 2)])
    assert not pencil.is_rank3()
    assert lattice_isomorphic(boolean, pencil) is None
    L1 = build_lattice(builtin("generic4"))
    L2 = build_lattice(make_arrangement(Q, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)]))
    assert lattice_isomorphic(L1, L2) is None


def test_iso_random_pairs_agree_with_invariants():
    rng = random.Random(5)
    for _ in range(15):
        a = random_arrangement(rng, 5, 7)
        b = random_arrangement(rng, 5, 7)
        La, Lb = build_lattice(a), build_lattice(b)
        sigma = lattice_isomorphic(La, Lb)
        if sigma is None:
            continue
        assert check_bijection(La, Lb, sigma)
        assert invariants(La) == invariants(Lb)


def test_check_bijection_rejects_bad_maps():
    L = build_lattice(builtin("near_pencil4"))
    # the triple point is on hyperplanes 0, 1, 2; sending 2 to 3 breaks it
    assert not check_bijection(L, L, [0, 1, 3, 2])
    assert not check_bijection(L, L, [0, 0, 1, 2])
