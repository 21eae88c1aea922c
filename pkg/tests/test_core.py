import random

import pytest
from fractions import Fraction

from dpirred.core import (
    DirichletPoly,
    GF,
    MultivariatePoly,
    QQ,
    UnfactoredResidueError,
    ZZ,
    divisors,
    factor_integer,
    phi_inverse,
    phi_map,
    valuation,
)

FIG1 = DirichletPoly({4: 4, 6: 4, 8: 2, 9: 1, 10: 4, 12: 1, 15: 2})
G_FACTOR = DirichletPoly({2: 2, 3: 1, 4: 1, 5: 2})
H_FACTOR = DirichletPoly({2: 2, 3: 1})


def rand_poly(rng, max_terms=6, max_index=30, coeff=9, ring=ZZ):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        c = rng.randint(-coeff, coeff)
        if c:
            terms[rng.randint(1, max_index)] = c
    return DirichletPoly(terms, ring)


def test_product_disjoint_primes():
    f = DirichletPoly({1: 1, 2: 1})
    g = DirichletPoly({1: 1, 3: 1})
    assert (f * g).terms == {1: 1, 2: 1, 3: 1, 6: 1}


def test_product_reproduces_worked_factorization():
    assert G_FACTOR * H_FACTOR == FIG1


def test_product_identity_and_degrees():
    f = DirichletPoly({3: 5, 7: -2})
    assert f * DirichletPoly({1: 1}) == f
    g = DirichletPoly({2: 1, 5: 3})
    assert (f * g).degree == f.degree * g.degree
    assert (f * g).deg_min == f.deg_min * g.deg_min


def test_ring_mismatch_rejected():
    with pytest.raises(ValueError):
        DirichletPoly({1: 1}) * DirichletPoly({1: 1}, GF(3))


def test_algebra_properties_random():
    rng = random.Random(7)
    for _ in range(200):
        f, g, h = (rand_poly(rng) for _ in range(3))
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        if not f.is_zero() and not g.is_zero():
            assert (f * g).degree == f.degree * g.degree
            assert (f * g).deg_min == f.deg_min * g.deg_min


def test_normalize_examples():
    c, prim, d, alg = DirichletPoly({2: 2, 4: 4}).normalize()
    assert (c, d) == (2, 2)
    assert prim == DirichletPoly({2: 1, 4: 2})
    assert alg == DirichletPoly({1: 1, 2: 2})

    c, prim, d, alg = FIG1.normalize()
    assert (c, d) == (1, 1) and prim == FIG1 and alg == FIG1

    c, prim, d, alg = DirichletPoly({1: 3}).normalize()
    assert (c, d) == (3, 1) and prim == DirichletPoly({1: 1})


def test_primitive_product_is_primitive():
    rng = random.Random(11)
    for _ in range(100):
        f, g = rand_poly(rng), rand_poly(rng)
        if f.is_zero() or g.is_zero():
            continue
        fa = f.normalize()[3]
        ga = g.normalize()[3]
        assert (fa * ga).is_algebraically_primitive()


def test_phi_map_examples():
    F = phi_map(DirichletPoly({1: 1, 12: 1}))
    assert F.terms == {(): 1, (2, 1): 1}
    F = phi_map(DirichletPoly({1: 5}))
    assert F.terms == {(): 5}
    assert phi_inverse(phi_map(FIG1)) == FIG1


def test_phi_is_ring_homomorphism():
    rng = random.Random(13)
    for _ in range(60):
        f, g = rand_poly(rng), rand_poly(rng)
        assert phi_map(f * g) == phi_map(f) * phi_map(g)


def test_factor_integer():
    assert factor_integer(12) == [(2, 2), (3, 1)]
    assert factor_integer(1) == []
    assert factor_integer(65537) == [(65537, 1)]
    with pytest.raises(UnfactoredResidueError):
        factor_integer((10**9 + 7) * (10**9 + 9), cap=10**5)
    assert valuation(48, 2) == 4
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_evaluate_at_negative():
    f = DirichletPoly({1: 1, 4: 1})
    assert f.evaluate_at_negative(4) == 257
    assert f.evaluate_at_negative(8) == 65537
    g = DirichletPoly({2: 3, 5: -1})
    assert g.evaluate_at_negative(0) == 2
    rng = random.Random(17)
    for _ in range(50):
        a, b = rand_poly(rng), rand_poly(rng)
        t = rng.randint(0, 4)
        assert (a * b).evaluate_at_negative(t) == \
            a.evaluate_at_negative(t) * b.evaluate_at_negative(t)


def test_reduce_mod():
    assert DirichletPoly({1: 3, 2: 5}).reduce_mod(3) == DirichletPoly({2: 2}, GF(3))
    assert DirichletPoly({1: 3, 2: 6}).reduce_mod(3).is_zero()
    assert FIG1.reduce_mod(2) == DirichletPoly({9: 1, 12: 1}, GF(2))


def test_height():
    assert FIG1.height() == 4
    assert DirichletPoly({1: 1, 4: 1}).height() == 1
    assert DirichletPoly({3: -7}).height() == 7


def test_text_round_trip():
    s = FIG1.text()
    assert s == "4/4^s + 4/6^s + 2/8^s + 1/9^s + 4/10^s + 1/12^s + 2/15^s"
    assert DirichletPoly.parse(s) == FIG1
    f = DirichletPoly({1: -3, 2: 5, 7: -1})
    assert DirichletPoly.parse(f.text()) == f
    g = DirichletPoly({1: Fraction(3, 2), 4: Fraction(-1, 6)}, QQ)
    assert DirichletPoly.parse(g.text()) == g
    assert DirichletPoly.parse("1 + 1/2^s + 1/3^s") == DirichletPoly({1: 1, 2: 1, 3: 1})


def test_json_round_trip():
    for f in (FIG1, DirichletPoly({2: 1, 3: 2}, GF(5)),
              DirichletPoly({1: Fraction(1, 3)}, QQ)):
        assert DirichletPoly.from_json(f.to_json()) == f
    assert DirichletPoly.from_json('{"ring":"Z","terms":[[4,4],[6,4]]}') == \
        DirichletPoly({4: 4, 6: 4})
