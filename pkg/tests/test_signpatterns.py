import math

import numpy as np
import pytest

from frlab.errors import DomainError
from frlab.signpatterns import (FlowSpec, hermite_sign_search,
                                laguerre_expected_sign, laguerre_sign_search,
                                obstruction_predictor, phi_predictor, phi_sign_search,
                                torus_return_times)
from frlab.specfun.hermite import phi


# -- torus returns --------------------------------------------------------------


def test_fixed_point_direction_always_returns():
    times = torus_return_times(FlowSpec((2.0 * math.pi,), 0.05, 12))
    assert times == list(range(1, 13))


def test_half_turn_direction_returns_on_even_times():
    times = torus_return_times(FlowSpec((math.pi,), 0.01, 20))
    assert times == [2, 4, 6, 8, 10, 12, 14, 16, 18, 20]


def test_irrational_direction_brute_force_oracle():
    spec = FlowSpec((1.0, math.sqrt(2.0)), 0.1, 10 ** 6)
    times = torus_return_times(spec)
    assert times, "expected at least one return below 1e6"
    smallest = times[0]
    # plain-python oracle re-derives the first return independently
    for n in range(1, smallest + 1):
        dist = 0.0
        for a in spec.direction:
            rep = math.fmod(n * a, 2.0 * math.pi)
            if rep > math.pi:
                rep -= 2.0 * math.pi
            elif rep < -math.pi:
                rep += 2.0 * math.pi
            dist += rep * rep
        qualifies = math.sqrt(dist) <= spec.epsilon
        assert qualifies == (n == smallest)


def test_returned_times_verify_by_modular_arithmetic():
    spec = FlowSpec((0.7, 1.3, 2.9), 0.45, 20000)
    for n in torus_return_times(spec):
        dist = 0.0
        for a in spec.direction:
            rep = math.fmod(n * a, 2.0 * math.pi)
            if rep > math.pi:
                rep -= 2.0 * math.pi
            elif rep < -math.pi:
                rep += 2.0 * math.pi
            dist += rep * rep
        assert math.sqrt(dist) <= spec.epsilon + 1e-12


def test_flow_spec_validation():
    with pytest.raises(DomainError):
        FlowSpec((), 0.1, 10)
    with pytest.raises(DomainError):
        FlowSpec((1.0,), 4.0, 10)  # epsilon must stay below pi
    with pytest.raises(DomainError):
        FlowSpec((1.0,), 0.1, 0)
    with pytest.raises(DomainError):
        FlowSpec((-1.0,), 0.1, 10)


# -- Hermite sign search ----------------------------------------------------------


def test_all_plus_pattern_exists():
    res = hermite_sign_search((1.0, 2.0, 3.0), ("+", "+", "+"), 2000)
    assert res.matches


def test_obstructed_pattern_is_empty():
    res = hermite_sign_search((1.0, 2.0, 3.0, 4.0), ("+", "+", "-", "+"), 5000)
    assert [n for n in res.matches if 50 <= n <= 5000] == []


def test_sign_search_validation():
    with pytest.raises(DomainError):
        hermite_sign_search((1.0, 1.0), ("+", "+"), 100)  # duplicate points
    with pytest.raises(DomainError):
        hermite_sign_search((1.0, 2.0), ("+",), 100)  # length mismatch
    with pytest.raises(DomainError):
        hermite_sign_search((1.0,), ("x",), 100)


def test_exact_agrees_with_predictor_outside_uncertainty_band():
    # where |cos(sqrt(8n+1) a)| > 10 / sqrt(n), prediction and recurrence agree
    points = (0.7, 1.3, 2.5, 3.7)
    res = hermite_sign_search(points, ("+",) * 4, 3000)
    signs = {}
    for p in points:
        from frlab.specfun.hermite import hermite_sign_scan
        s, unc = hermite_sign_scan(p, 12000, stride=4)
        signs[p] = (s, unc)
    for n in range(1000, 3001):
        for p in points:
            c = math.cos(math.sqrt(8.0 * n + 1.0) * p)
            if abs(c) > 10.0 / math.sqrt(n) and not signs[p][1][n]:
                assert signs[p][0][n] == (1 if c > 0 else -1), (n, p, c)


def test_pattern_frequencies_for_independent_points():
    # rationally independent points: all 8 patterns occur, each with
    # frequency near 1/8 (wide statistical bounds; this is a heuristic check,
    # run at the largest index the validated degree range allows)
    res = hermite_sign_search((1.0, math.sqrt(2.0), math.sqrt(3.0)),
                              ("+", "+", "+"), 5000)
    assert len(res.frequencies) == 8
    for freq in res.frequencies.values():
        assert abs(freq - 0.125) < 0.03


# -- phi search --------------------------------------------------------------------


def test_phi_search_single_point():
    assert phi_sign_search((0.6,), 500)


def test_phi_search_candidate_points_contains_six():
    matches = phi_sign_search((0.59354, 0.8990), 500)
    assert 6 in matches
    # returned indices genuinely make phi positive at both points
    for n in matches[:5]:
        assert phi(n, 0.59354) > 0.0
        assert phi(n, 0.8990) > 0.0


def test_phi_matches_respect_asymptotic_predictor():
    # for large n the predictor sine term decides the sign up to an O(1/n) band
    matches = phi_sign_search((0.6, 1.1), 2000)
    large = [n for n in matches if n >= 200]
    assert large
    for n in large:
        for p in (0.6, 1.1):
            predicted = phi_predictor(n, p)
            if abs(predicted) > 30.0 / n:
                assert predicted > 0.0, (n, p, predicted)


# -- Laguerre -----------------------------------------------------------------------


def test_laguerre_expected_signs():
    assert laguerre_expected_sign(0.0) == "+"
    assert laguerre_expected_sign(2.0) == "-"
    with pytest.raises(DomainError):
        laguerre_expected_sign(0.5)  # nu + 1/2 = 1 is an odd integer
    with pytest.raises(DomainError):
        laguerre_expected_sign(2.5)  # nu + 1/2 = 3


def test_laguerre_search_nonempty():
    res0 = laguerre_sign_search(0.0, (1.0, 3.0), 2000)
    assert res0.expected_sign == "+"
    assert res0.matches
    res2 = laguerre_sign_search(2.0, (0.5, 2.0), 2000)
    assert res2.expected_sign == "-"
    assert res2.matches


def test_laguerre_matches_have_the_expected_sign():
    from frlab.specfun.laguerre import laguerre_float
    res = laguerre_sign_search(0.0, (1.0, 3.0), 300)
    for n in res.matches[:10]:
        assert laguerre_float(n, 0.0, 1.0) > 0
        assert laguerre_float(n, 0.0, 3.0) > 0


# -- obstruction predictor ---------------------------------------------------------


def test_obstruction_zero():
    rep = obstruction_predictor(0.0)
    assert rep.fractional_parts == (0.0, 0.0, 0.0, 0.0)
    assert rep.outer_constraints_hold      # all fractional parts avoid [1/4, 3/4]
    assert rep.frac3_in_forced_zone


def test_obstruction_forced_zone_small_y():
    rep = obstruction_predictor(0.03)      # {y} in [0, 1/16)
    assert rep.pattern_excluded


def test_obstruction_grid_oracle():
    # whenever {y}, {2y}, {4y} avoid [1/4, 3/4], the value {3y} stays at
    # distance >= 1/16 (minus grid slack) from [1/4, 3/4]
    ys = np.arange(0.0, 1.0, 1e-5)
    checked = 0
    for y in ys:
        rep = obstruction_predictor(float(y))
        if rep.outer_constraints_hold:
            f3 = rep.fractional_parts[2]
            dist = min(abs(f3 - 0.25), abs(f3 - 0.75)) if 0.25 <= f3 <= 0.75 else \
                min(abs(f3 - 0.25), abs(f3 - 0.75))
            assert not (0.25 <= f3 <= 0.75)
            assert dist >= 1.0 / 16.0 - 2e-5
            assert rep.frac3_in_forced_zone
            checked += 1
    assert checked > 1000
