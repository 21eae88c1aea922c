import pytest
from fractions import Fraction

from dpirred.core import GF, QQ
from dpirred.multivariate import MultiDirichletPoly


def test_product_and_degrees():
    f = MultiDirichletPoly({(2, 1): 1, (1, 3): 2}, ("s", "t"))
    g = MultiDirichletPoly({(2, 1): 1, (3, 1): -1}, ("s", "t"))
    fg = f * g
    assert fg.terms == {(4, 1): 1, (6, 1): -1, (2, 3): 2, (3, 3): -2}
    assert fg.total_degree() == 9
    assert fg.degree_in("s") == 6
    assert fg.degree_in("t") == 3


def test_algebraic_primitivity():
    f = MultiDirichletPoly({(2, 3): 1, (4, 3): 1}, ("s", "t"))
    assert f.algebraic_shift() == (2, 3)
    assert not f.is_algebraically_primitive()
    g = f.algebraically_primitive_part()
    assert g.terms == {(1, 1): 1, (2, 1): 1}


def test_coefficient_split():
    f = MultiDirichletPoly(
        {(1, 1): 1, (8, 1): 1, (8, 2): 1, (16, 32): 1}, ("s", "t"))
    coeffs = f.coefficient_polys("s")
    assert sorted(coeffs) == [1, 8, 16]
    assert coeffs[8].terms == {(1,): 1, (2,): 1}
    assert coeffs[8].degree_in("t") == 2


def test_json_round_trip():
    cases = [
        MultiDirichletPoly({(8, 2): 1, (1, 5): -3}, ("s1", "s2")),
        MultiDirichletPoly({(2,): Fraction(1, 3)}, ("s",), QQ),
        MultiDirichletPoly({(3, 4): 2}, ("u", "v"), GF(5)),
    ]
    for f in cases:
        assert MultiDirichletPoly.from_json(f.to_json()) == f
    s = '{"vars":["s1","s2"],"terms":[{"indices":[8,2],"coeff":1}]}'
    f = MultiDirichletPoly.from_json(s)
    assert f.terms == {(8, 2): 1}
    assert f.to_json() == s


def test_validation():
    with pytest.raises(ValueError):
        MultiDirichletPoly({(0, 1): 1}, ("s", "t"))
    with pytest.raises(ValueError):
        MultiDirichletPoly({(1,): 1}, ("s", "t"))
    a = MultiDirichletPoly({(2, 1): 1}, ("s", "t"))
    b = MultiDirichletPoly({(2,): 1}, ("s",))
    with pytest.raises(ValueError):
        a * b
