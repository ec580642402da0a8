"""Numerical toolkit for sign-uncertainty bounds of self-dual functions:
stable special-function evaluation, Fourier-eigenfunction root certificates,
the one-dimensional lower-bound verification machine, dimension-dependent
Bessel-kernel bounds, and torus-flow sign-pattern searches.
"""

__version__ = "0.1.0"

from .errors import AccuracyError, DomainError, InternalError
from .scaled import ScaledValue

__all__ = ["AccuracyError", "DomainError", "InternalError", "ScaledValue", "__version__"]
