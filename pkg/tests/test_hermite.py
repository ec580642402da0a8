import math

import numpy as np
import pytest

from frlab.errors import DomainError
from frlab.quadrature import gaussian_integrand, integrate_even_line
from frlab.specfun.gammafn import gamma_scaled
from frlab.specfun.hermite import (hermite_asymptotic, hermite_at_zero,
                                   hermite_coefficients, hermite_ratio_to_zero,
                                   hermite_sign_scan, hermite_weighted, phi, psi,
                                   psi_grid, weighted_grid)


def eval_exact(n: int, x: float) -> float:
    """Direct evaluation of the explicit polynomial, test-side oracle."""
    return float(sum(c * x ** i for i, c in enumerate(hermite_coefficients(n))))


def test_low_degree_matches_explicit_polynomials():
    for n in range(13):
        for x in (-3.0, -1.2, -0.3, 0.0, 0.5, 1.7, 2.9):
            want = eval_exact(n, x) * math.exp(-0.5 * x * x)
            got = hermite_weighted(n, x).to_float()
            if want == 0.0:
                assert abs(got) < 1e-12
            else:
                assert got == pytest.approx(want, rel=1e-10)


def test_first_hermite_coefficients():
    assert hermite_coefficients(0) == [1]
    assert hermite_coefficients(1) == [0, 2]
    assert hermite_coefficients(4) == [12, 0, -48, 0, 16]
    assert hermite_coefficients(12)[0] == 665280


def test_value_at_zero_is_gamma_ratio():
    for n in range(1, 51):
        got = hermite_at_zero(4 * n)
        want = gamma_scaled(4.0 * n + 1.0) / gamma_scaled(2.0 * n + 1.0)
        assert got.relative_difference(want) < 1e-9


def test_weighted_examples():
    assert hermite_weighted(0, 2.0).to_float() == pytest.approx(math.exp(-2.0), rel=1e-12)
    assert hermite_weighted(4, 0.0).to_float() == pytest.approx(12.0, rel=1e-12)
    assert hermite_weighted(2, 1.0).to_float() == pytest.approx(2.0 * math.exp(-0.5), rel=1e-12)


def test_huge_degree_stays_finite():
    v = hermite_weighted(20000, 10.0)
    assert math.isfinite(v.mantissa) and 1.0 <= abs(v.mantissa) < 2.0
    assert v.exponent > 100000  # far beyond float64, which is the point


def _exact_log2_weighted(n: int, x_num: int, x_den_pow2: int) -> tuple[int, float]:
    """Exact-integer oracle: sign and log2 of e^{-x^2/2} H_n(x) at dyadic x.

    With x = x_num / 2^p, the integers G_k = 2^{pk} H_k(x) obey
    G_{k+1} = 2 x_num 2^p ... reduced to G_{k+1} = (2 x_num) G_k / ... ;
    concretely G_{k+1} = 2*x_num*G_k - 2*k*4^p*G_{k-1} with G_k = 2^{pk} H_k.
    """
    p = x_den_pow2
    x = x_num / 2.0 ** p
    g_prev, g_cur = 1, 2 * x_num  # G_0 = 1, G_1 = 2^p * 2x = 2 x_num
    four_p = 4 ** p
    for k in range(1, n):
        g_prev, g_cur = g_cur, 2 * x_num * g_cur - 2 * k * four_p * g_prev
    sign = 1 if g_cur > 0 else -1
    mag = abs(g_cur)
    bits = mag.bit_length()
    top = mag >> max(0, bits - 64)
    log2_h = math.log2(top) + max(0, bits - 64) - n * p
    return sign, log2_h - x * x / (2.0 * math.log(2.0))


@pytest.mark.parametrize("n,x_num,p", [(2000, 3, 0), (4000, 29, 2), (20000, 10, 0)])
def test_large_degree_against_exact_integer_recurrence(n, x_num, p):
    sign, log2_exact = _exact_log2_weighted(n, x_num, p)
    got = hermite_weighted(n, x_num / 2.0 ** p)
    assert got.sign == sign
    rel = abs(2.0 ** (got.log2_magnitude() - log2_exact) - 1.0)
    assert rel < 1e-9


def test_shrinking_regime_rescales_upward():
    # for n well below x^2 the folded weight shrinks faster than the
    # polynomial grows, driving the scan through its rescale-up branch
    n, x = 50, 20.0
    sign, log2_exact = _exact_log2_weighted(n, 20, 0)
    got = hermite_weighted(n, x)
    assert got.sign == sign
    assert abs(2.0 ** (got.log2_magnitude() - log2_exact) - 1.0) < 1e-11


def test_weighted_against_mpmath():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    for n, x in ((120, 0.37), (1000, 2.6)):
        want = mp.hermite(n, mp.mpf(x)) * mp.exp(-mp.mpf(x) ** 2 / 2)
        got = hermite_weighted(n, x)
        assert got.sign == mp.sign(want)
        log2_want = float(mp.log(abs(want), 2))
        assert 2.0 ** (got.log2_magnitude() - log2_want) == pytest.approx(1.0, rel=1e-10)


def test_weighted_grid_agrees_with_scalar():
    xs = np.linspace(-4.0, 4.0, 17)
    table = weighted_grid(xs, [0, 4, 8, 12])
    for j, n in enumerate((0, 4, 8, 12)):
        for i, x in enumerate(xs):
            assert table[j, i] == pytest.approx(
                hermite_weighted(n, float(x)).to_float(), rel=1e-9, abs=1e-12)


def test_psi_basics():
    assert psi(0, 0.0) == pytest.approx(2.0 ** 0.25, rel=1e-12)
    # bounded even at large degree
    assert abs(psi(20000, 0.37)) < 1.2


def test_psi_orthonormality_by_quadrature():
    # oracle: adaptive quadrature against the claim <psi_m, psi_n> = delta
    def inner(m, n):
        fn = lambda x: psi_grid(m, x) * psi_grid(n, x)
        return integrate_even_line(gaussian_integrand(fn), 1e-9)

    assert inner(4, 4) == pytest.approx(1.0, abs=1e-8)
    assert inner(0, 4) == pytest.approx(0.0, abs=1e-8)
    assert inner(7, 7) == pytest.approx(1.0, abs=1e-8)
    assert inner(2, 8) == pytest.approx(0.0, abs=1e-8)


def test_asymptotic_phase_at_zero():
    for k in (1, 2, 7):
        assert hermite_asymptotic(4 * k, 0.0, "leading") == pytest.approx(1.0, abs=1e-12)


def test_asymptotic_corrected_close_at_n100():
    # fitted constant on [-3, 3]: 100 * max error of the corrected form is
    # about 2.97, frozen with margin
    C = 3.2
    err = abs(hermite_ratio_to_zero(100, 1.0) - hermite_asymptotic(100, 1.0, "corrected"))
    assert err <= C / 100.0


def test_asymptotic_leading_rate_is_square_root():
    for x in (0.5, 1.0, 2.0):
        rates = [abs(hermite_ratio_to_zero(n, x) - hermite_asymptotic(n, x)) * math.sqrt(n)
                 for n in (100, 400, 1600, 6400)]
        assert max(rates) < 0.5
        assert rates[-1] <= 3.0 * max(rates[0], rates[1])


def test_phi_vanishes_at_origin():
    for n in (0, 1, 5, 40):
        assert phi(n, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_phi_positive_far_out():
    assert phi(0, 10.0) > 0.0


def test_phi_example_from_perturbation_figure():
    assert phi(6, 0.9) > 0.0


def test_sign_scan_matches_explicit_signs():
    for x in (0.7, 2.0, 3.1):
        signs, uncertain = hermite_sign_scan(x, 48, stride=4)
        for k in range(13):
            if not uncertain[k]:
                assert signs[k] == (1 if eval_exact(4 * k, x) > 0 else -1)


def test_degree_cap_enforced():
    with pytest.raises(DomainError):
        hermite_weighted(20001, 1.0)
    with pytest.raises(DomainError):
        hermite_weighted(-1, 1.0)
