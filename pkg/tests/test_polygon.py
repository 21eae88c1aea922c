import random
from fractions import Fraction

import pytest

from dpirred.core import DirichletPoly
from dpirred.polygon import (
    build_polygon,
    candidate_relative_degrees,
    lone_slope_combination_test,
    combination_degree_exclusions,
    dumas_equal_height_test,
    dumas_test,
    slope_exclusions,
    merge_vector_systems,
    multi_prime_test,
    segment_point_count,
    total_factor_bound,
    vector_system,
)
from dpirred import report

FIG1 = DirichletPoly({4: 4, 6: 4, 8: 2, 9: 1, 10: 4, 12: 1, 15: 2})
G_FACTOR = DirichletPoly({2: 2, 3: 1, 4: 1, 5: 2})
H_FACTOR = DirichletPoly({2: 2, 3: 1})


def test_figure1_polygon():
    poly = build_polygon(FIG1, 2)
    assert poly.vertices == ((4, 2), (9, 0), (12, 0), (15, 1))
    assert poly.edges[0].points == ((4, 2), (6, 1), (9, 0))
    assert poly.edges[0].delta == 2
    assert poly.validate()


def test_two_term_polygon_single_edge():
    f = DirichletPoly({3: 1, 7: 5})
    poly = build_polygon(f, 5)
    assert poly.single_edge()
    assert poly.vertices == ((3, 0), (7, 1))


def test_factor_polygon_g():
    poly = build_polygon(G_FACTOR, 2)
    assert poly.vertices == ((2, 1), (3, 0), (4, 0), (5, 1))


def test_segment_point_count_examples():
    delta, pts = segment_point_count(4, 2, 9, 0)
    assert delta == 2 and pts == [(4, 2), (6, 1), (9, 0)]
    delta, pts = segment_point_count(2, 0, 3, 1)
    assert delta == 1 and pts == [(2, 0), (3, 1)]
    delta, pts = segment_point_count(4, 0, 36, 2)
    assert delta == 2 and pts == [(4, 0), (12, 1), (36, 2)]
    with pytest.raises(ValueError):
        segment_point_count(4, 1, 9, 1)


def test_segment_points_match_brute_force_sample():
    from dpirred.oracle import enumerate_segment_points_brute

    cases = [(4, 2, 9, 0), (2, 0, 3, 1), (4, 0, 36, 2), (8, 0, 27, 3), (2, -2, 32, 3)]
    for x1, y1, x2, y2 in cases:
        _, pts = segment_point_count(x1, y1, x2, y2)
        assert pts[1:-1] == enumerate_segment_points_brute(x1, y1, x2, y2)


def test_total_factor_bound_figure1():
    # 2 + 3 + 1: the horizontal edge (9, 0)-(12, 0) passes through the
    # log-integral points at 10 and 11, so it carries three segments
    assert total_factor_bound(FIG1, 2) == 6
    f = DirichletPoly({3: 1, 7: 5})
    assert total_factor_bound(f, 5) == 1
    # a flat polygon cannot bound better than one segment per index step
    zeta6 = DirichletPoly({i: 1 for i in range(1, 7)})
    assert total_factor_bound(zeta6, 7) == 5


def test_vector_merge_on_figure1():
    vf = vector_system(build_polygon(FIG1, 2))
    vg = vector_system(build_polygon(G_FACTOR, 2))
    vh = vector_system(build_polygon(H_FACTOR, 2))
    assert merge_vector_systems(vg, vh) == vf


def test_dumas_examples():
    # two terms, coprime degrees, a prime of multiplicity one in the product
    f = DirichletPoly({2: 3, 5: 7})
    assert dumas_test(f, 7).verdict == report.IRREDUCIBLE
    # Eisenstein-high instance
    g = DirichletPoly({2: 7, 3: 7, 5: 1})
    rep = dumas_test(g, 7)
    assert rep.verdict == report.IRREDUCIBLE
    # equal endpoint valuations: inconclusive
    h = DirichletPoly({2: 3, 3: 1, 5: 3})
    assert dumas_test(h, 3).verdict == report.INCONCLUSIVE


def test_dumas_worked_odd_multiplicity_example():
    f = DirichletPoly({2: 4, 3: 8, 5: 1})
    assert dumas_test(f, 2).verdict == report.IRREDUCIBLE


def test_dumas_equal_height_twist():
    # |a_m| = |a_n|: the t = 1 twist with p = 2 certifies 1 + ... + 1/2^s forms
    f = DirichletPoly({1: 1, 2: 1})
    rep = dumas_equal_height_test(f)
    assert rep.verdict == report.IRREDUCIBLE


def test_candidate_degrees_two_segment_profile():
    cands, profile, capped = candidate_relative_degrees(FIG1, 2)
    assert not capped
    # sloped edges give 3/2 twice and 5/4; the horizontal edge (9, 0)-(12, 0)
    # splits at the integer points 10 and 11
    assert sorted(profile) == sorted(
        [Fraction(3, 2), Fraction(3, 2), Fraction(10, 9), Fraction(11, 10),
         Fraction(12, 11), Fraction(5, 4)])
    prod = Fraction(1)
    for r in profile:
        prod *= r
    assert prod == Fraction(15, 4)
    assert Fraction(3, 2) in cands


def test_multi_prime_example_two_primes():
    f = DirichletPoly({10: 15, 15: 5, 18: 3, 38: 15})
    rep = multi_prime_test(f, [3, 5])
    assert rep.verdict == report.IRREDUCIBLE


def test_multi_prime_single_edge_coprime():
    f = DirichletPoly({2: 3, 5: 7})
    rep = multi_prime_test(f, [3])
    assert rep.verdict == report.IRREDUCIBLE


def test_lone_slope_positive_variant():
    f = DirichletPoly({1: 1, 2: 1})
    g = DirichletPoly({1: 2, 3: 1})
    rep = lone_slope_combination_test(f, g, 5, 1)
    assert rep.verdict == report.IRREDUCIBLE
    assert rep.certificate["variant"] == "positive"


def test_lone_slope_squarefree_degrees_any_k():
    f = DirichletPoly({1: 1, 2: 1})
    g = DirichletPoly({1: 2, 3: 1})
    for k in range(1, 6):
        assert lone_slope_combination_test(f, g, 5, k).verdict == report.IRREDUCIBLE


def test_lone_slope_negative_variant():
    f = DirichletPoly({3: 1, 4: 1})
    g = DirichletPoly({2: 1, 4: 1})
    rep = lone_slope_combination_test(f, g, 7, 1)
    assert rep.verdict == report.IRREDUCIBLE
    assert rep.certificate["variant"] == "negative"


def test_lone_slope_non_coprime_inconclusive():
    f = DirichletPoly({1: 1, 2: 1})
    g = DirichletPoly({1: 1, 4: 1})
    assert lone_slope_combination_test(f, g, 5, 1).verdict == report.INCONCLUSIVE


def test_slope_exclusion_low_side_example():
    # 1/m^s + p/i^s + p^2/n^s with m < i < sqrt(mn)
    f = DirichletPoly({2: 1, 3: 7, 9: 49})
    _, rep = slope_exclusions(f, 7)
    assert rep.verdict == report.IRREDUCIBLE
    assert rep.rule == "right-slope-exclusion"


def test_slope_exclusion_high_side_example():
    f = DirichletPoly({2: 49, 7: 7, 9: 1})
    _, rep = slope_exclusions(f, 7)
    assert rep.verdict == report.IRREDUCIBLE
    assert rep.rule == "left-slope-exclusion"


def test_combination_degree_exclusion_intervals():
    # f of degree t = 2 with constant term, g of degree 12: h = f + p g
    f = DirichletPoly({1: 1, 2: 1})
    g = DirichletPoly({1: 1, 12: 1})
    intervals, rep = combination_degree_exclusions(f, g, 5, 1)
    lohi = {(iv.lo, iv.hi) for iv in intervals}
    assert (Fraction(3), Fraction(3)) in lohi or any(
        iv.lo <= 3 <= iv.hi for iv in intervals)


def test_hull_domination_random():
    rng = random.Random(37)
    for _ in range(150):
        f = _rand_primitive(rng)
        for p in (2, 3, 5):
            assert build_polygon(f, p).validate(), (f.text(), p)


def test_merge_invariant_random_products():
    rng = random.Random(31)
    for _ in range(120):
        g = _rand_primitive(rng)
        h = _rand_primitive(rng)
        f = g * h
        for p in f.relevant_primes():
            vf = vector_system(build_polygon(f, p))
            merged = merge_vector_systems(
                vector_system(build_polygon(g, p)),
                vector_system(build_polygon(h, p)),
            )
            assert vf == merged, (g.text(), h.text(), p)


def _rand_primitive(rng):
    while True:
        terms = {}
        for _ in range(rng.randint(2, 5)):
            c = rng.randint(-9, 9)
            if c:
                terms[rng.randint(1, 30)] = c
        if len(terms) < 2:
            continue
        f = DirichletPoly(terms)
        if f.is_constant():
            continue
        return f.normalize()[3]
