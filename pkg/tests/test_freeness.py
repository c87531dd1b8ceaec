import random

import pytest
import sympy

from conftest import random_arrangement
from recfree.arrangement import MultiArrangement2D, make_arrangement, ziegler_restrict
from recfree.catalog import builtin
from recfree.exactfield import QQ, FieldElement, prime_field
from recfree.freeness import (
    CHI_DOES_NOT_SPLIT, DegreeMismatch, EmptyMultiarrangement, ExponentPair, FREE, derivation_space_dim,
    free_exponents, is_free_rank3, is_logarithmic, multi_exponents, multi_exponents_direct, saito_verify,
)

Q = QQ()


def sympy_dim(forms, d):
    """Degree-d derivations f ds + g dt with alpha^m | alpha(f, g), solved by sympy over Q."""
    s, t = sympy.symbols("s t")
    fc = sympy.symbols(f"f0:{d + 1}")
    gc = sympy.symbols(f"g0:{d + 1}")
    f = sum(c * s ** i * t ** (d - i) for i, c in enumerate(fc))
    g = sum(c * s ** i * t ** (d - i) for i, c in enumerate(gc))
    eqs = []
    for (a, b), m in forms:
        a, b = sympy.Rational(a), sympy.Rational(b)
        var = s if a != 0 else t
        r = sympy.rem(sympy.expand(a * f + b * g), sympy.expand((a * s + b * t) ** m), var)
        eqs += sympy.Poly(r, s, t).coeffs() if r != 0 else []
    unknowns = list(fc) + list(gc)
    if not eqs:
        return len(unknowns)
    A, _ = sympy.linear_eq_to_matrix(eqs, unknowns)
    return len(unknowns) - A.rank()


def sympy_exponents(forms):
    total = sum(m for _, m in forms)
    for d in range(total + 1):
        if sympy_dim(forms, d):
            return d, total - d


def multi(F, forms):
    return MultiArrangement2D(F, forms)


def test_multi_exponents_examples():
    assert multi_exponents(multi(Q, [((1, 0), 1), ((0, 1), 1), ((1, -1), 1)])) == ExponentPair(1, 2)
    assert multi_exponents(multi(Q, [((1, 0), 3)])) == ExponentPair(0, 3)
    forms = [((1, 0), 2), ((0, 1), 2), ((1, -1), 2)]
    assert multi_exponents(multi(Q, forms)) == ExponentPair(3, 3)
    assert sympy_exponents(forms) == (3, 3)
    assert [sympy_dim(forms, d) for d in range(4)] == [0, 0, 0, 2]


def test_empty_multiarrangement():
    with pytest.raises(EmptyMultiarrangement):
        multi_exponents(multi(Q, []))


def test_derivation_dim_matches_sympy():
    rng = random.Random(2)
    for _ in range(12):
        k = rng.randint(1, 4)
        forms = [((1, rng.randint(-3, 3)), rng.randint(1, 3)) for _ in range(k)]
        if rng.random() < 0.5:
            forms.append(((0, 1), rng.randint(1, 3)))
        M = multi(Q, forms)
        forms_q = [((Q.to_str(f[0]), Q.to_str(f[1])), m) for f, m in M.forms]
        forms_q = [((sympy.Rational(a), sympy.Rational(b)), m) for (a, b), m in forms_q]
        for d in range(M.total // 2 + 2):
            assert derivation_space_dim(M, d) == sympy_dim(forms_q, d)


def _graded_check(M):
    d1, d2 = multi_exponents(M)
    assert d1 + d2 == M.total and d1 <= d2
    for d in (d1 - 1, d1, d1 + 1):
        expect = max(0, d - d1 + 1) + max(0, d - d2 + 1)
        assert derivation_space_dim(M, d) == expect
    if d1 < d2:
        assert derivation_space_dim(M, d1) == 1


@pytest.mark.parametrize("p", [5, 7, 11, 0])
def test_graded_dimension_and_direct(p):
    rng = random.Random(30 + p)
    F = prime_field(p) if p else Q
    for _ in range(40):
        forms = []
        for _ in range(rng.randint(1, 6)):
            form = (1, rng.randrange(p or 9) - (0 if p else 4)) if rng.random() < 0.85 else (0, 1)
            forms.append((form, rng.randint(1, 5)))
        M = multi(F, forms)
        _graded_check(M)
        assert multi_exponents(M) == multi_exponents_direct(M)


def test_ziegler_exponents_all_witnesses_builtins():
    for name in ("B_F11_27", "B_F11_plus_3", "B_F11_plus_7", "braid6", "boolean3", "near_pencil4"):
        a = builtin(name)
        reports = [is_free_rank3(a, witness=h) for h in range(len(a))]
        assert all(r.free for r in reports), name
        exps = reports[0].exponents
        for h, r in enumerate(reports):
            assert r.exponents == exps
            assert tuple(r.ziegler_exponents) == exps[1:]
            assert multi_exponents(ziegler_restrict(a, h)) == ExponentPair(*exps[1:])


def test_free_examples():
    r = is_free_rank3(builtin("A_H3_27"))
    assert r.free and r.exponents == (1, 11, 15) and r.reason == FREE
    assert r.ziegler_exponents.product == 165
    for k in range(8):
        name = "B_F11_27" if k == 0 else f"B_F11_plus_{k}"
        assert free_exponents(builtin(name)) == (1, 11, 15 + k)
    r = is_free_rank3(builtin("generic4"))
    assert not r.free and r.reason == CHI_DOES_NOT_SPLIT
    assert free_exponents(builtin("braid6")) == (1, 2, 3)


def test_witness_independence_random():
    rng = random.Random(9)
    for _ in range(25):
        a = random_arrangement(rng, 7, rng.randint(4, 10))
        verdicts = {(r.free, r.exponents) for r in (is_free_rank3(a, witness=h) for h in range(len(a)))}
        assert len(verdicts) == 1


def test_scaling_invariance():
    rng = random.Random(4)
    for p in (5, 7, 11):
        F = prime_field(p)
        for _ in range(10):
            a = random_arrangement(rng, p, rng.randint(4, 9))
            ks = [rng.randrange(1, p) for _ in a]
            scaled = make_arrangement(F, [[FieldElement(F, x) * k for x in h.normal] for h, k in zip(a, ks)])
            for w in range(len(a)):
                assert is_free_rank3(a, w).to_json() == is_free_rank3(scaled, w).to_json()


def test_saito_examples():
    b = builtin("boolean3")
    assert saito_verify(b, [["x", "0", "0"], ["0", "y", "0"], ["0", "0", "z"]])
    assert not saito_verify(b, [["x", "0", "0"], ["x", "0", "0"], ["0", "0", "z"]])
    braid = builtin("braid6")
    basis = [[f"x^{k}", f"y^{k}", f"z^{k}"] for k in (1, 2, 3)]
    assert saito_verify(braid, basis)
    # wrong degree pattern: z^3 replaced by x^3 breaks logarithmicity along y - z
    assert not saito_verify(braid, [["x", "y", "z"], ["x^2", "y^2", "z^2"], ["x^3", "y^3", "x^3"]])


def test_euler_derivation_is_logarithmic():
    rng = random.Random(1)
    for _ in range(10):
        a = random_arrangement(rng, 7, rng.randint(3, 8))
        assert is_logarithmic(a, ["x", "y", "z"])
    assert not is_logarithmic(builtin("boolean3"), ["y", "x", "z"])
    # Euler in place of the first basis element keeps a Saito basis
    assert saito_verify(builtin("boolean3"), [["x", "y", "z"], ["0", "y", "0"], ["0", "0", "z"]])


def test_saito_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        saito_verify(builtin("boolean3"), [["x", "y^2", "0"], ["0", "y", "0"], ["0", "0", "z"]])
