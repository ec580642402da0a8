import math

import numpy as np
import pytest

from frlab.errors import AccuracyError, DomainError
from frlab.quadrature import (GAUSSIAN_TAIL, Integrand, fourier_even, gaussian_integrand,
                              integrate, integrate_even_line, radial_fourier,
                              truncation_radius)
from frlab.specfun.hermite import psi_grid
from frlab.specfun.laguerre import laguerre_grid


def test_polynomial_exact():
    assert integrate(lambda x: x * x, 0.0, 1.0, 1e-12) == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_gaussian_normalization():
    g = Integrand(lambda x: np.exp(-math.pi * x * x), GAUSSIAN_TAIL, 1.0)
    assert integrate_even_line(g, 1e-10) == pytest.approx(1.0, abs=1e-10)


def test_flat_weight_endpoint_case():
    # (1 - t^2)^{(d-3)/2} at d = 3 is the constant 1
    assert integrate(lambda t: (1.0 - t * t) ** 0.0, -1.0, 1.0, 1e-12) == pytest.approx(
        2.0, abs=1e-12)


def test_linearity_on_random_integrands():
    rng = np.random.default_rng(3)
    for _ in range(10):
        c = rng.uniform(-1, 1, 4)
        d = rng.uniform(-1, 1, 4)
        alpha, beta = rng.uniform(-2, 2, 2)
        f = lambda x: c[0] + c[1] * x + c[2] * np.sin(3 * x) + c[3] * x * x
        g = lambda x: d[0] + d[1] * np.cos(2 * x) + d[2] * x + d[3] * np.abs(x) ** 1.5
        combo = lambda x: alpha * f(x) + beta * g(x)
        tol = 1e-10
        lhs = integrate(combo, -1.0, 2.0, tol)
        rhs = alpha * integrate(f, -1.0, 2.0, tol) + beta * integrate(g, -1.0, 2.0, tol)
        assert abs(lhs - rhs) <= 2.0 * tol * (1.0 + abs(alpha) + abs(beta))


def test_truncation_soundness():
    # doubling the truncation radius moves a gaussian-tail integral < tol
    g = Integrand(lambda x: np.exp(-math.pi * x * x) * np.cos(x), GAUSSIAN_TAIL, 1.0)
    tol = 1e-10
    r = truncation_radius(g.envelope, tol)
    base = integrate(g, 0.0, r, tol / 4)
    doubled = integrate(g, 0.0, 2.0 * r, tol / 4)
    assert abs(doubled - base) < tol


def test_depth_cap_raises_accuracy_error():
    jump = lambda x: np.where(x < 1.0 / math.e, 0.0, 1.0)
    with pytest.raises(AccuracyError) as info:
        integrate(jump, 0.0, 1.0, 1e-15)
    err = info.value
    want = 1.0 - 1.0 / math.e
    assert err.estimate == pytest.approx(want, abs=1e-6)
    assert err.error_bound > 1e-15


def test_preconditions():
    with pytest.raises(DomainError):
        integrate(lambda x: x, 1.0, 0.0, 1e-8)
    with pytest.raises(DomainError):
        integrate(lambda x: x, 0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        fourier_even(Integrand(lambda x: x, "compact"), 0.3, 1e-8)
    with pytest.raises(DomainError):
        radial_fourier(gaussian_integrand(lambda r: np.exp(-math.pi * r * r)), 0.0, 3)


def test_gaussian_self_dual_1d():
    g = Integrand(lambda x: np.exp(-math.pi * x * x), GAUSSIAN_TAIL, 1.0)
    for y in (0.0, 0.7, 1.9):
        assert fourier_even(g, y, 1e-10) == pytest.approx(math.exp(-math.pi * y * y),
                                                          abs=1e-9)


def test_fourier_even_eigenvector_psi4():
    f4 = gaussian_integrand(lambda x: psi_grid(4, x))
    for y in (0.0, 0.3, 1.1):
        assert fourier_even(f4, y, 1e-9) == pytest.approx(
            float(psi_grid(4, np.asarray([y]))[0]), abs=1e-7)


def test_fourier_even_eigenvalue_minus_one_psi2():
    f2 = gaussian_integrand(lambda x: psi_grid(2, x))
    got = fourier_even(f2, 0.0, 1e-9)
    want = -float(psi_grid(2, np.asarray([0.0]))[0])
    assert got == pytest.approx(want, abs=1e-7)
    assert want == pytest.approx(2.0 ** -0.25, rel=1e-12)


def test_radial_gaussian_self_dual():
    g = Integrand(lambda r: np.exp(-math.pi * r * r), GAUSSIAN_TAIL, 1.0)
    for d in (2, 3, 5):
        for s in (0.3, 0.5, 1.2):
            assert radial_fourier(g, s, d, 1e-9) == pytest.approx(
                math.exp(-math.pi * s * s), abs=1e-8)


@pytest.mark.parametrize("d,n,s", [(2, 1, 0.2), (2, 1, 0.8), (3, 2, 0.6)])
def test_radial_laguerre_multiplier(d, n, s):
    nu = 0.5 * d - 1.0
    prof = gaussian_integrand(
        lambda r: laguerre_grid(n, nu, 2.0 * math.pi * r * r) * np.exp(-math.pi * r * r))
    got = radial_fourier(prof, s, d, 1e-9)
    want = ((-1.0) ** n * laguerre_grid(n, nu, np.asarray([2.0 * math.pi * s * s]))[0]
            * math.exp(-math.pi * s * s))
    assert got == pytest.approx(want, abs=1e-7)


def test_integrand_validation():
    with pytest.raises(DomainError):
        Integrand(lambda x: x, "bogus-decay")
    with pytest.raises(DomainError):
        Integrand(lambda x: x, GAUSSIAN_TAIL, envelope=0.0)
