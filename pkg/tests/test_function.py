import random
from fractions import Fraction

import numpy as np
import pytest

from okamoto import (
    DomainError,
    Parameter,
    PrecisionError,
    ResourceError,
    construct_iteration,
    eval_digit_series,
    ifs_maps,
    refine,
    sample_graph,
    ternary_rational,
    to_ternary,
)
from okamoto.function import level_zero
from okamoto.ternary import TernaryExpansion

from oracles import cantor_value, okamoto_recursive


def exact(p, q):
    return Parameter(Fraction(p, q))


def test_parameter_rejects_endpoints():
    for bad in (0, 1, -0.5, 1.5, Fraction(0), Fraction(1)):
        with pytest.raises(DomainError):
            Parameter(bad)


def test_parameter_parse_modes():
    assert Parameter.parse("2/3").mode == "exact"
    assert Parameter.parse("0.6").mode == "float"
    assert Parameter.parse("0.6", exact=True).value == Fraction(3, 5)


def test_refine_level_zero():
    a = exact(2, 5)
    g = refine(level_zero(a), a)
    assert g.vertices == [0, Fraction(2, 5), Fraction(3, 5), 1]


def test_refine_identity_parameter():
    a = exact(1, 3)
    g = construct_iteration(a, 4)
    assert all(v == Fraction(k, 81) for k, v in enumerate(g.vertices))


def test_refine_bourbaki_level_one():
    a = exact(2, 3)
    g = construct_iteration(a, 1)
    assert g.vertices == [0, Fraction(2, 3), Fraction(1, 3), 1]


def test_construct_level_zero_and_cantor_level_one():
    assert list(construct_iteration(Parameter(0.4), 0).vertices) == [0.0, 1.0]
    g = construct_iteration(exact(1, 2), 1)
    assert g.vertices == [0, Fraction(1, 2), Fraction(1, 2), 1]


def test_construct_two_refines_by_hand():
    g = construct_iteration(exact(2, 3), 2)
    assert g.vertices[1] == Fraction(4, 9)


def test_construct_level_cap():
    with pytest.raises(ResourceError):
        construct_iteration(Parameter(0.4), 17)
    # override is allowed
    construct_iteration(Parameter(0.4), 3, level_cap=3)


def test_grid_persistence_under_refine():
    rng = random.Random(3)
    for _ in range(10):
        a = exact(rng.randint(1, 9), 10)
        g = construct_iteration(a, 3)
        h = refine(g, a)
        assert all(h.vertices[3 * k] == g.vertices[k] for k in range(len(g.vertices)))


def test_vertices_stay_in_unit_interval():
    for av in (0.15, 0.5, 0.8, 0.95):
        v = np.asarray(construct_iteration(Parameter(av), 7).vertices)
        assert v.min() >= 0 and v.max() <= 1


def test_monotone_for_small_a():
    for av in (0.2, 1 / 3, 0.5):
        v = np.asarray(construct_iteration(Parameter(av), 6).vertices)
        assert np.all(np.diff(v) >= 0)


def test_symmetry_confirmed_by_construction():
    # F_a(1-x) = 1 - F_a(x): check vertices[k] + vertices[3^i - k] == 1
    for a in (exact(1, 4), exact(3, 5), exact(4, 5)):
        for i in range(0, 6):
            v = construct_iteration(a, i).vertices
            assert all(v[k] + v[len(v) - 1 - k] == 1 for k in range(len(v)))


def test_construction_matches_recursive_oracle():
    rng = random.Random(11)
    for a in (exact(1, 4), exact(3, 5), exact(2, 3)):
        g = construct_iteration(a, 5)
        for _ in range(25):
            k = rng.randint(0, 3**5)
            assert g.vertices[k] == okamoto_recursive(a.value, Fraction(k, 3**5), 5)


def test_eval_at_one_third_gives_a():
    for a in (exact(1, 4), exact(2, 3), Parameter(0.77)):
        r = eval_digit_series(a, ternary_rational(1, 1), 1e-12)
        assert r.value == a.value
        assert r.error_bound == 0


def test_eval_at_zero_and_one():
    a = exact(3, 5)
    assert eval_digit_series(a, ternary_rational(0, 4), 1e-12).value == 0
    assert eval_digit_series(a, ternary_rational(81, 4), 1e-12).value == 1


def test_eval_cantor_half_truncates_series():
    # m(1) = 0 at a = 1/2: the series ends after the first 1-digit
    a = exact(1, 2)
    r = eval_digit_series(a, TernaryExpansion((1,) * 30), 1e-30)
    assert r.value == Fraction(1, 2)
    assert r.error_bound == 0
    assert r.digits_used == 1


def test_eval_consistency_with_construction():
    for a in (exact(1, 4), exact(1, 3), exact(1, 2), exact(3, 5)):
        for i in (1, 3, 5):
            g = construct_iteration(a, i)
            for k in range(0, 3**i + 1, max(1, 3 ** (i - 2))):
                r = eval_digit_series(a, ternary_rational(k, i), Fraction(1, 10**30))
                assert r.value == g.vertices[k]


def test_eval_certified_bound_against_deep_truth():
    # float-mode value with tol certificate vs exact deep evaluation
    rng = random.Random(5)
    a_exact, a_float = exact(3, 5), Parameter(0.6)
    for _ in range(20):
        digits = tuple(rng.randrange(3) for _ in range(60))
        truth = eval_digit_series(
            a_exact, TernaryExpansion(digits, is_truncation=False), Fraction(1, 10**40)
        ).value
        r = eval_digit_series(a_float, TernaryExpansion(digits), 1e-9)
        assert abs(float(truth) - r.value) <= 1e-9 + 1e-12


def test_eval_insufficient_digits_raises_precision_error():
    a = Parameter(0.6)
    with pytest.raises(PrecisionError) as exc:
        eval_digit_series(a, TernaryExpansion((0, 2, 1)), 1e-12)
    assert exc.value.achievable is not None and exc.value.achievable > 1e-12


def test_eval_repeating_form_matches_terminating_form():
    # 1/3 = 0.1000... = 0.0222...: continuity demands the same value
    a = Parameter(0.45)
    term = eval_digit_series(a, ternary_rational(1, 1), 1e-13)
    rep = eval_digit_series(a, TernaryExpansion((0,) + (2,) * 80), 1e-13)
    assert abs(term.value - rep.value) < 1e-12


def test_eval_cantor_matches_digit_oracle():
    rng = random.Random(9)
    a = Parameter(0.5)
    for _ in range(300):
        x = rng.random()
        e = to_ternary(x, 60)
        r = eval_digit_series(a, e, 1e-16)
        assert abs(r.value - float(cantor_value(e.digits))) < 1e-14


def test_ifs_maps_values():
    a = exact(2, 3)
    w1, w2, w3 = ifs_maps(a)
    assert w3(1, 1) == (1, 1)
    assert w1(1, 1) == (Fraction(1, 3), Fraction(2, 3))
    assert w2(0, 0) == (Fraction(2, 3), Fraction(1, 3))
    assert (w1.y_scale, w2.y_scale, w3.y_scale) == (a.value, 2 * a.value - 1, a.value)
    assert abs(w2.x_scale) == Fraction(1, 3)


def test_ifs_invariance_of_graph_point_sets():
    # union of the three map images of level i equals the level i+1 point set
    a = exact(3, 5)
    for i in (0, 1, 2, 3):
        pts = sample_graph(a, i)
        image = set()
        for w in ifs_maps(a):
            image.update(w(x, y) for x, y in pts)
        assert image == set(sample_graph(a, i + 1))


def test_sample_graph_examples():
    assert sample_graph(Parameter(0.9), 0) == [(0.0, 0.0), (1.0, 1.0)]
    for x, y in sample_graph(exact(1, 3), 2):
        assert x == y
    assert sample_graph(exact(2, 3), 1) == [
        (0, 0),
        (Fraction(1, 3), Fraction(2, 3)),
        (Fraction(2, 3), Fraction(1, 3)),
        (1, 1),
    ]
