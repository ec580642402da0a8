"""Overflow-safe special functions: Gamma, weighted Hermite, Laguerre and
Bessel evaluation plus Bessel zeros and stationary points."""

from .bessel import (bessel_first_zero, bessel_j, bessel_j_derivative, bessel_j_pair,
                     bessel_stationary_points)
from .gammafn import gamma, gamma_float, gamma_ratio, gamma_scaled, log_gamma
from .hermite import (hermite_asymptotic, hermite_at_zero, hermite_coefficients,
                      hermite_ratio_to_zero, hermite_sign_scan, hermite_weighted,
                      hermite_weighted_many, phi, psi, psi_grid, weighted_grid)
from .laguerre import (laguerre, laguerre_asymptotic, laguerre_at_zero, laguerre_float,
                       laguerre_grid, laguerre_sign_scan)

__all__ = [
    "bessel_first_zero", "bessel_j", "bessel_j_derivative", "bessel_j_pair",
    "bessel_stationary_points", "gamma", "gamma_float", "gamma_ratio", "gamma_scaled",
    "hermite_asymptotic", "hermite_at_zero", "hermite_coefficients",
    "hermite_ratio_to_zero", "hermite_sign_scan", "hermite_weighted",
    "hermite_weighted_many", "laguerre", "laguerre_asymptotic", "laguerre_at_zero",
    "laguerre_float", "laguerre_grid", "laguerre_sign_scan", "log_gamma", "phi",
    "psi", "psi_grid", "weighted_grid",
]
