import random
from collections import Counter

import pytest

from conftest import random_arrangement
from recfree.arrangement import (
    Arrangement, ArrangementError, DuplicateSeed, RankDeficient, ZeroNormal, delete, disjoint_union,
    localization_sizes, make_arrangement, orbit_arrangement, restrict_count, vec_times_matrix,
    canonical, ziegler_restrict,
)
from recfree.catalog import B_F11_NORMALS, UnknownName, builtin, h3_generators, h3_orbits
from recfree.exactfield import FieldElement, QQ, prime_field

Q = QQ()
F11 = prime_field(11)


def boolean():
    return builtin("boolean3")


def test_make_arrangement_scaling_and_duplicates():
    a = make_arrangement(Q, [(0, 0, 2)])
    assert len(a) == 1 and a[0].normal == (Q(0).payload, Q(0).payload, Q(1).payload)
    assert len(make_arrangement(Q, [(1, 0, 0), (2, 0, 0)])) == 1
    b = make_arrangement(F11, B_F11_NORMALS)
    assert len(b) == 27


def test_zero_normal_rejected():
    with pytest.raises(ZeroNormal):
        make_arrangement(Q, [(0, 0, 0)])


def test_delete():
    a = boolean()
    smaller = delete(a, 2)
    assert smaller.same_set(make_arrangement(Q, [(1, 0, 0), (0, 1, 0)]))
    A = builtin("A_H3_27")
    for h in range(len(A)):
        assert len(delete(A, h)) == 26
    again = delete(A, 5).add(A[5])
    assert again.same_set(A) and again != A
    with pytest.raises(IndexError):
        delete(a, 3)
    with pytest.raises(ArrangementError):
        a.add((1, 0, 0))


def test_restrict_count_examples():
    A = builtin("A_H3_27")
    assert Counter(restrict_count(A, h) for h in range(27)) == Counter({10: 15, 11: 12})
    assert [restrict_count(boolean(), h) for h in range(3)] == [2, 2, 2]
    g = builtin("generic4")
    assert [restrict_count(g, h) for h in range(4)] == [3, 3, 3, 3]


def test_rank_deficient():
    pencil = make_arrangement(Q, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(RankDeficient):
        restrict_count(pencil, 0)


def test_localization_sizes_examples():
    assert localization_sizes(builtin("A_H3_27")) == Counter({2: 15, 3: 70, 7: 6})
    assert localization_sizes(boolean()) == Counter({2: 3})
    assert localization_sizes(builtin("near_pencil4")) == Counter({3: 1, 2: 3})


def test_ziegler_restrict_examples():
    M = ziegler_restrict(boolean(), 2)
    assert sorted(m for _, m in M.forms) == [1, 1]
    A = builtin("A_H3_27")
    for h in range(27):
        assert ziegler_restrict(A, h).total == 26
    M = ziegler_restrict(builtin("near_pencil4"), 3)
    assert sorted(m for _, m in M.forms) == [1, 1, 1]


def test_orbits():
    roots, other = h3_orbits()
    assert len(roots) == 15 and len(other) == 12
    assert not set(roots.normals) & set(other.normals)
    K, gens = h3_generators()
    for part in (roots, other):
        for h in part:
            for g in gens:
                assert canonical(K, vec_times_matrix(K, h.normal, g)) in part
    seed = orbit_arrangement(Q, [], [(0, 3, 6)])
    assert len(seed) == 1 and seed[0].normal == make_arrangement(Q, [(0, 1, 2)])[0].normal
    with pytest.raises(DuplicateSeed):
        disjoint_union(roots, roots)


def test_builtins():
    A = builtin("A_H3_27")
    assert len(A) == 27 and A.field.descriptor() == {"kind": "cyclotomic", "n": 5}
    B = builtin("B_F11_27")
    assert B.field.descriptor() == {"kind": "prime", "p": 11}
    assert B.same_set(make_arrangement(F11, B_F11_NORMALS))
    assert len(builtin("B_F11_plus_7")) == 34
    with pytest.raises(UnknownName):
        builtin("nope")


@pytest.mark.parametrize("p", [5, 7, 11])
def test_canonicalization_invariant(p):
    rng = random.Random(p)
    F = prime_field(p)
    for _ in range(30):
        v = [rng.randrange(p) for _ in range(3)]
        if not any(v):
            continue
        k = rng.randrange(1, p)
        assert make_arrangement(F, [v]) == make_arrangement(F, [[k * x for x in v]])


def test_canonicalization_over_q_and_cyclotomic():
    assert make_arrangement(Q, [("1/3", -2, 5)]) == make_arrangement(Q, [(-3, 18, -45)])
    A = builtin("A_H3_27")
    K = A.field
    z = K([0, 1, 0, 0])
    scaled = [[FieldElement(K, x) * z * 3 for x in h.normal] for h in A]
    assert make_arrangement(K, scaled) == A


@pytest.mark.parametrize("p", [5, 7, 11])
def test_ziegler_sum_and_restrict_count(p):
    rng = random.Random(100 + p)
    for _ in range(10):
        a = random_arrangement(rng, p, rng.randint(4, 12))
        for h in range(len(a)):
            M = ziegler_restrict(a, h)
            assert M.total == len(a) - 1
            assert restrict_count(a, h) == len(M)


def test_ziegler_sum_on_builtins():
    for name in ("A_H3_27", "B_F11_27", "B_F11_plus_7", "braid6"):
        a = builtin(name)
        for h in range(len(a)):
            M = ziegler_restrict(a, h)
            assert M.total == len(a) - 1 and len(M) == restrict_count(a, h)
