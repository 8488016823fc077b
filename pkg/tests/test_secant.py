import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from logfano.secant import (
    JoinLabel,
    NotAUnionOfJoins,
    RationalPoint,
    contains,
    cremona_form,
    coordinate_stratum_point,
    hankel_rank,
    hyperplane_through,
    hypersurface_multiplicity,
    intersect,
    intersect_offset,
    intersect_same_dim,
    join_hypersurface_form,
    join_multiplicity,
    join_profile,
    join_rank,
    nu,
    project_from,
    random_direction,
    sample_join_point,
    vanishing_order,
)
from logfano.polynomial import Polynomial
from logfano.weightspace import SubsetIndex


def S(n, *pts):
    return SubsetIndex.of(n + 3, pts)


def Y(n, pts, d):
    return JoinLabel.with_dim(n, pts, d)


def all_joins(n):
    out = []
    for r in range(n + 1):
        for pts in combinations(range(1, n + 4), r):
            for k in range(0, (n - r) // 2 + 1):
                if k == 0 and r == 0:
                    continue
                out.append(JoinLabel.of(n, pts, k))
    return out


def test_label_basics():
    sec2 = JoinLabel.of(6, [], 2)
    assert str(sec2) == "sec_2" and sec2.dim == 3 and sec2.degree == comb(5, 2)
    y = Y(8, [1, 2], 5)
    assert y.k == 2 and str(y) == "Y_{1,2}^5"
    assert join_profile(y).singular_locus == Y(8, [1, 2], 3)
    with pytest.raises(ValueError):
        Y(8, [1, 2], 4)
    with pytest.raises(ValueError):
        JoinLabel.of(4, [], 3)
    with pytest.raises(ValueError):
        JoinLabel.of(4, [], 0)


def test_singular_loci():
    assert JoinLabel.of(6, [], 1).singular_locus is None
    assert JoinLabel.of(6, [], 3).singular_locus == JoinLabel.of(6, [], 2)
    # a cone over the curve is singular exactly along its vertex span
    assert JoinLabel.of(6, [1, 2], 1).singular_locus == JoinLabel.of(6, [1, 2], 0)
    assert JoinLabel.of(6, [1, 2], 0).singular_locus is None


def test_join_multiplicity_rule():
    big, small = Y(8, [], 7), Y(8, [], 3)
    assert join_multiplicity(big, small) == 3
    with pytest.raises(ValueError):
        join_multiplicity(small, big)
    with pytest.raises(ValueError):
        join_multiplicity(Y(8, [1], 6), Y(8, [], 3))
    with pytest.raises(ValueError):
        join_multiplicity(Y(7, [], 5), Y(7, [], 3))


@pytest.mark.parametrize("n", [4, 6, 8])
def test_hankel_rank_of_secant_samples(n):
    rng = random.Random(n)
    assert hankel_rank(nu(Fraction(3, 7), n)) == 1
    for k in range(1, n // 2 + 1):
        for _ in range(3):
            assert hankel_rank(sample_join_point(JoinLabel.of(n, [], k), seed=rng)) == k


@pytest.mark.parametrize("n", [5, 6, 7])
def test_join_rank_recovers_secant_index(n):
    rng = random.Random(100 + n)
    for y in all_joins(n):
        if rng.random() < 0.15:
            assert join_rank(sample_join_point(y, seed=rng), y.points) == y.k


def test_projection_sends_curve_to_curve():
    params = [Fraction(1), Fraction(2)]
    t = Fraction(5, 3)
    image = project_from(nu(t, 6), params)
    g = (t - 1) * (t - 2)
    assert image == tuple(g * c for c in nu(t, 4))
    assert join_rank(nu(1, 6), [1]) == 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_hypersurface_multiplicity_matches_vanishing_order(n):
    rng = random.Random(7 * n)
    hypers = [y for y in all_joins(n) if y.is_hypersurface]
    centers = all_joins(n)
    checked = 0
    for div in hypers:
        form = join_hypersurface_form(div)
        for center in rng.sample(centers, 6):
            if center.dim >= div.dim:
                continue
            p = sample_join_point(center, seed=rng)
            v = random_direction(n, rng)
            expected = hypersurface_multiplicity(div, center)
            assert vanishing_order(form, p, v) == expected, (str(div), str(center))
            checked += 1
    assert checked > 20


def test_hypersurface_multiplicity_errors():
    with pytest.raises(ValueError):
        hypersurface_multiplicity(Y(6, [], 3), Y(6, [], 1))
    assert hypersurface_multiplicity(Y(6, [1, 2], 5), Y(6, [3, 4, 5], 2)) == 0


def test_containment():
    assert contains(Y(6, [], 5), Y(6, [1, 2], 3))
    assert contains(Y(6, [1, 2], 5), Y(6, [1], 2))
    assert not contains(Y(6, [1, 2], 5), Y(6, [3, 4, 5], 4))


def in_join(p, y):
    return join_rank(p, y.points) <= y.k


@pytest.mark.parametrize("n", [5, 6])
def test_intersection_components_lie_in_both(n):
    rng = random.Random(n)
    joins = all_joins(n)
    for _ in range(40):
        a, b = rng.sample(joins, 2)
        if a.dim + b.dim < n:
            continue
        try:
            comps = intersect(a, b)
        except NotAUnionOfJoins:
            continue
        for c in comps:
            p = sample_join_point(c, seed=rng)
            assert in_join(p, a) and in_join(p, b)


def test_intersection_dimension_floor():
    outcomes = {"joins": 0, "other": 0}
    rng = random.Random(0)
    for n in (5, 6, 7):
        hypers = [y for y in all_joins(n) if y.is_hypersurface]
        for _ in range(300):
            a, b = rng.sample(hypers, 2)
            try:
                comps = intersect(a, b)
            except NotAUnionOfJoins:
                outcomes["other"] += 1
                continue
            outcomes["joins"] += 1
            assert comps and all(c.dim == n - 2 for c in comps)
    assert outcomes["joins"] and outcomes["other"]


def test_hyperplane_section_is_not_a_join():
    with pytest.raises(NotAUnionOfJoins):
        intersect(Y(5, [1], 4), Y(5, [2, 3, 4, 5, 6], 4))


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_same_dim_rule_agrees_with_general_intersection(n):
    for r1 in range(0, 4):
        for r2 in range(0, 4):
            i1 = S(n, *range(1, r1 + 1))
            i2 = S(n, *range(r1 + 1, r1 + r2 + 1))
            if (r1 + r2) % 2:
                continue
            s = (r1 + r2) // 2
            for d in range(max(r1, r2, 1), n - s + 1):
                if (d + 1 - r1) % 2 or (d + 1 - r2) % 2:
                    continue
                try:
                    a, b = JoinLabel.with_dim(n, i1.elements, d), JoinLabel.with_dim(n, i2.elements, d)
                except ValueError:
                    continue
                rule = intersect_same_dim(i1, i2, d, n)
                assert set(rule) == set(intersect(a, b))
                assert set(rule) == set(intersect_same_dim(i2, i1, d, n))


def test_same_dim_errors():
    with pytest.raises(ValueError):
        intersect_same_dim(S(6, 1, 2), S(6, 2, 3), 3, 6)
    with pytest.raises(ValueError):
        intersect_same_dim(S(7, 1), S(7, 2, 3), 4, 7)
    with pytest.raises(ValueError):
        intersect_offset(S(6, 1, 2), S(6, 2, 3), 6)
    with pytest.raises(ValueError):
        intersect_offset(S(7, 1, 2), S(7, 3, 4), 7)


def test_overlap_projects_common_points():
    n = 7
    got = intersect_same_dim(S(n, 1), S(n, 1, 2, 3), 4, n, allow_overlap=True)
    assert got == [Y(n, [1, 2], 3), Y(n, [1, 3], 3)]
    assert set(got) == set(intersect(Y(n, [1], 4), Y(n, [1, 2, 3], 4)))


def test_offset_components_lie_in_both():
    n = 6
    rng = random.Random(3)
    div, sing = Y(n, [1, 2], n - 1), Y(n, [3, 4], n - 3)
    comps = intersect_offset(S(n, 1, 2), S(n, 3, 4), n)
    assert set(comps) == set(intersect(div, sing))
    for c in comps:
        p = sample_join_point(c, seed=rng)
        assert in_join(p, div) and in_join(p, sing)


def test_vanishing_order_errors_and_infinity():
    f = cremona_form(3)
    p = coordinate_stratum_point(3, [0])
    with pytest.raises(ValueError):
        vanishing_order(f, p, [0, 0, 0, 0])
    with pytest.raises(ValueError):
        vanishing_order(f, p, p.coords)
    with pytest.raises(ValueError):
        vanishing_order(f, p, [1, 2, 3])
    x = Polynomial.variable(4, 0)
    with pytest.raises(ValueError):
        vanishing_order(x + Polynomial.constant(4, 1), p, [1, 2, 3, 4])
    line_dir = [0, 1, 0, 0]
    assert vanishing_order(f, p, line_dir) == float("inf")
    assert vanishing_order(f, p, line_dir, max_order=5) == 5
    assert vanishing_order(f, p, random_direction(3)) == 2


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cremona_order_at_coordinate_spans(n):
    f = cremona_form(n)
    for m in range(1, n):
        p = coordinate_stratum_point(n, list(range(m)))
        assert vanishing_order(f, p, random_direction(n, m)) == n - m


def test_hyperplane_through_vanishes():
    rng = random.Random(1)
    pts = [nu(t, 5) for t in (1, 2, 3)]
    h = hyperplane_through(pts, rng)
    assert all(h.evaluate(p) == 0 for p in pts)
    assert h.degree == 1


def test_point_helpers():
    p = RationalPoint((Fraction(1, 2), Fraction(-3), Fraction(0)))
    assert RationalPoint.from_json(p.to_json()) == p
    assert p.to_json() == ["1/2", "-3", "0"]
    with pytest.raises(ValueError):
        RationalPoint((0, 0))
    y = JoinLabel.of(6, [1], 2)
    assert sample_join_point(y, seed=5) == sample_join_point(y, seed=5)
    v = random_direction(8, 11)
    assert len(set(v.coords)) == 9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_secant_samples_any_seed(seed):
    n = 6
    for k in (1, 2, 3):
        assert hankel_rank(sample_join_point(JoinLabel.of(n, [], k), seed=seed)) == k
