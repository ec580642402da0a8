import math

import numpy as np
import pytest

from frlab.errors import DomainError
from frlab.lowerbound import (GAEST_LOWER, GAEST_UPPER, TAU_ENDPOINT, IntervalSet,
                              check_inequality, gaest_bounds_check,
                              h_derivative_estimates, h1, h2, optimal_sublevel,
                              pointwise_ub, tau_ub, upsilon)
from frlab.quadrature import integrate


def test_upsilon_at_zero():
    # limit A - 13/200 of the two pieces
    assert upsilon(0.45, 0.0) == pytest.approx(0.45 - 0.065, rel=1e-12)
    assert upsilon(0.30, 0.0) == pytest.approx(0.30 - 0.065, rel=1e-12)


def test_upsilon_even_and_smooth_near_zero():
    xs = np.asarray([1e-9, 1e-6, 1e-3])
    left = upsilon(0.4, -xs)
    right = upsilon(0.4, xs)
    assert np.allclose(left, right, rtol=0, atol=1e-15)
    assert abs(upsilon(0.4, 1e-9) - upsilon(0.4, 0.0)) < 1e-12


def test_upsilon_rough_bounds():
    for A in (0.30, 0.40, 0.449):
        rep = gaest_bounds_check(A)
        assert rep["upper_ok"] and rep["lower_ok"]
    ys = np.linspace(0.0, 0.1, 2000)
    assert np.max(upsilon(0.45, ys)) <= GAEST_UPPER
    ys_far = np.linspace(0.0, 20.0, 20001)
    mask = (ys_far < 1.4) | (ys_far > 1.8)
    assert np.min(upsilon(0.45, ys_far[mask])) >= GAEST_LOWER


def test_pointwise_ub_limit_and_positivity():
    assert pointwise_ub(0.5, 0.0) == pytest.approx(0.0, abs=1e-14)
    assert pointwise_ub(0.45, 0.0) == pytest.approx(0.0, abs=1e-14)
    for A in (0.3, 0.45, 0.5):
        xs = np.linspace(0.0, A, 500)
        assert np.min(pointwise_ub(A, xs)) >= -1e-14


def test_pointwise_ub_domain():
    with pytest.raises(DomainError):
        pointwise_ub(0.45, 0.5)
    with pytest.raises(DomainError):
        pointwise_ub(0.6, 0.1)


def test_tau_ub_values():
    assert tau_ub(0.25) == 0.0
    value = tau_ub(0.45)
    assert value < 13.0 / 500.0
    assert value == pytest.approx(0.02593, abs=2e-5)


def test_tau_ub_monotone():
    grid = np.linspace(0.25, 0.5, 26)
    vals = [tau_ub(float(a)) for a in grid]
    assert all(b > a for a, b in zip(vals[:-1], vals[1:]))


def test_interval_set_invariants():
    s = IntervalSet(((-2.0, -1.0), (1.0, 2.0)))
    assert s.measure == pytest.approx(2.0)
    with pytest.raises(DomainError):
        IntervalSet(((0.0, 1.0), (0.5, 2.0)))  # overlapping


def test_inner_sublevel_full_domain():
    A = 0.42
    s, level = optimal_sublevel(A, "inner", 2.0 * A)
    assert s.measure == pytest.approx(2.0 * A, abs=1e-9)
    assert s.intervals == ((-A, A),)
    # the level is the kernel maximum up to the scan grid resolution
    xs = np.linspace(-A, A, 1001)
    assert level == pytest.approx(float(np.max(upsilon(A, xs))), abs=1e-6)


def test_outer_sublevel_concentrates_in_the_well():
    s, level = optimal_sublevel(0.45, "outer", 0.5 - 2.0 * TAU_ENDPOINT)
    assert s.measure == pytest.approx(0.5 - 2.0 * TAU_ENDPOINT, abs=1e-9)
    assert level < 0.0
    positive_side = [iv for iv in s.intervals if iv[0] > 0.0]
    assert len(positive_side) == 1
    lo, hi = positive_side[0]
    assert 1.4 <= lo <= hi <= 1.8  # inside the deep well of the kernel


def test_sublevel_measure_matches_target():
    for target in (0.05, 0.21, 0.4):
        s, _ = optimal_sublevel(0.40, "outer", target)
        assert s.measure == pytest.approx(target, abs=1e-9)


def test_outer_window_grows_for_large_targets():
    # a large target pushes the level toward zero, so the set spreads far
    # into the sinc tail and the working window must widen itself beyond
    # its starting span of 40
    s, level = optimal_sublevel(0.45, "outer", 26.0)
    assert s.measure == pytest.approx(26.0, abs=1e-9)
    assert -0.01 < level < 0.0
    assert s.intervals[-1][1] > 39.0


def test_sublevel_is_optimal_against_random_unions():
    # any other union of intervals with the same measure has a larger integral
    rng = np.random.default_rng(23)
    A = 0.42
    target = 0.10
    s, _ = optimal_sublevel(A, "inner", target)
    best = sum(integrate(lambda x: upsilon(A, x), lo, hi, 1e-11) for lo, hi in s.intervals)
    for _ in range(100):
        k = int(rng.integers(1, 4))
        widths = rng.uniform(0.1, 1.0, k)
        widths *= target / widths.sum()
        starts = np.sort(rng.uniform(-A, A - 1e-6, k))
        total = 0.0
        pos = -A
        pieces = []
        for start, width in zip(starts, widths):
            lo = max(start, pos)
            hi = min(lo + width, A)
            if hi <= lo:
                continue
            pieces.append((lo, hi))
            pos = hi
        measure = sum(hi - lo for lo, hi in pieces)
        if measure < target - 1e-3:
            continue  # construction clipped too much mass; skip this draw
        got = sum(integrate(lambda x: upsilon(A, x), lo, hi, 1e-11) for lo, hi in pieces)
        # rescale comparison when clipping changed the measure slightly
        assert best <= got + 0.5 * abs(measure - target) + 1e-9


def test_outer_sublevel_beats_random_unions():
    rng = np.random.default_rng(29)
    A = 0.45
    target = 0.2
    s, _ = optimal_sublevel(A, "outer", target)
    best = sum(integrate(lambda x: upsilon(A, x), lo, hi, 1e-11) for lo, hi in s.intervals)
    for _ in range(30):
        # random symmetric unions outside [-A, A] with the same measure
        k = int(rng.integers(1, 3))
        widths = rng.uniform(0.2, 1.0, k)
        widths *= 0.5 * target / widths.sum()
        starts = np.sort(rng.uniform(A, A + 4.0, k))
        pieces = []
        pos = A
        for start, width in zip(starts, widths):
            lo = max(start, pos)
            pieces.append((lo, lo + width))
            pos = lo + width
        got = 2.0 * sum(integrate(lambda x: upsilon(A, x), lo, hi, 1e-11)
                        for lo, hi in pieces)
        assert best <= got + 1e-9


def test_h1_h2_basics():
    assert h1(0.42, 0.0) == 0.0
    assert h2(0.42, 0.25) == 0.0
    assert h1(0.42, 0.02) > 0.0          # kernel is positive on the inner domain
    assert h2(0.42, 0.02) < 0.0          # most negative outer mass


def test_h_monotone_in_tau():
    for A in (0.35, 0.449):
        taus = [0.005, 0.01, 0.02, 0.026]
        v1 = [h1(A, t) for t in taus]
        v2 = [h2(A, t) for t in taus]
        assert all(b >= a - 1e-12 for a, b in zip(v1[:-1], v1[1:]))
        assert all(b >= a - 1e-12 for a, b in zip(v2[:-1], v2[1:]))


def test_derivative_bounds():
    taus = [0.002, 0.01, 0.02, 0.03, 0.04, 0.05]
    for A in (0.30, 0.40):
        est = h_derivative_estimates(A, taus)
        assert est["max_dh1"] <= 0.78 + 1e-3
        assert est["max_dh2"] <= 0.18 + 1e-3
        assert est["max_lipschitz"] <= 0.96


def test_derivative_bounds_near_the_endpoint_dimension():
    # At A = 0.449 the outer well of the kernel drops below -0.09 on a
    # two-sided set of measure ~0.52, which exceeds every target measure
    # 1/2 - 2 tau <= 1/2.  The boundary level therefore sits below -0.09 and
    # the h2 slope exceeds the rough cap 0.18, peaking at 2|min kernel|.
    # The combined Lipschitz bound that the argument actually needs (< 1,
    # and even <= 0.96) still holds with a wide margin.
    taus = [0.002, 0.01, 0.02, 0.03, 0.04, 0.05]
    est = h_derivative_estimates(0.449, taus)
    well_depth = abs(float(np.min(upsilon(0.449, np.linspace(0.449, 6.0, 100001)))))
    assert est["max_dh1"] <= 0.78 + 1e-3
    assert 0.18 + 1e-3 < est["max_dh2"] <= 2.0 * well_depth
    assert est["max_lipschitz"] <= 0.96


def test_inequality_fails_at_endpoint():
    for A in (0.26, 0.30, 0.40, 0.4499, 0.45):
        rep = check_inequality(A, TAU_ENDPOINT)
        assert rep.status == "fails"
        assert rep.margin < 0.0


def test_margin_continuity_in_A():
    grid = np.linspace(0.26, 0.4499, 30)
    margins = [check_inequality(float(A), TAU_ENDPOINT).margin for A in grid]
    assert all(abs(b - a) < 0.05 for a, b in zip(margins[:-1], margins[1:]))


def test_sanity_case_finite():
    rep = check_inequality(0.5, 0.25)
    assert math.isfinite(rep.margin)


def test_integral_identity_for_self_dual_candidates():
    # int_0^A f equals int_R f * Upsilon_A for any self-dual f with only
    # degree-4n components: the sinc factor reproduces the partial integral
    # and the Gaussian term integrates against f to zero by orthogonality
    from frlab.eigen import reference_candidate, EigenPlusFunction
    from frlab.quadrature import gaussian_integrand, truncation_radius

    rng = np.random.default_rng(41)
    candidates = [reference_candidate(),
                  EigenPlusFunction((0.7, -0.03, 0.0004)),
                  EigenPlusFunction(tuple(rng.uniform(-1, 1, 3) / [1.0, 12.0, 1680.0]))]
    for f in candidates:
        for A in (0.30, 0.45, 0.50):
            lhs = integrate(f.eval, 0.0, A, 1e-11)
            prod = gaussian_integrand(lambda x, A=A: f.eval(x) * upsilon(A, x))
            r = truncation_radius(prod.envelope, 1e-10)
            rhs = 2.0 * integrate(prod, 0.0, r, 1e-10)
            assert abs(lhs - rhs) < 1e-9


def test_unit_l1_candidates_bounded_by_half():
    # f = int fhat cos(...) <= integral of the positive part = 1/2 whenever
    # ||f||_1 = 1 and the mean vanishes; the first step of the pointwise bound
    from frlab.eigen import l1_norm, reference_candidate, EigenPlusFunction
    f = reference_candidate()
    scale = l1_norm(f)
    g = EigenPlusFunction(tuple(c / scale for c in f.coeffs), normalized=True)
    xs = np.linspace(0.0, 3.0, 100)
    assert float(np.max(g.eval(xs))) <= 0.5 + 1e-9


def test_rearrangement_edge_integrals():
    # int f g between the two edge integrals for ||f||_inf <= 1, g monotone
    rng = np.random.default_rng(31)
    a, b = 0.0, 2.0
    g = lambda x: np.exp(-x)  # nonincreasing
    G = lambda lo, hi: math.exp(-lo) - math.exp(-hi)  # exact integral of g
    for _ in range(50):
        k = 24
        edges = np.linspace(a, b, k + 1)
        heights = rng.uniform(0.0, 1.0, k)
        l1 = float(np.sum(heights) * (b - a) / k)
        fg = sum(h * G(edges[i], edges[i + 1]) for i, h in enumerate(heights))
        upper = G(a, a + l1)
        lower = G(b - l1, b)
        assert lower - 1e-12 <= fg <= upper + 1e-12


def test_domain_errors():
    with pytest.raises(DomainError):
        upsilon(0.6, 0.1)
    with pytest.raises(DomainError):
        optimal_sublevel(0.4, "inner", 1.0)  # inner measure is only 2A = 0.8
    with pytest.raises(DomainError):
        optimal_sublevel(0.4, "sideways", 0.1)
    with pytest.raises(DomainError):
        check_inequality(0.2, 0.01)
