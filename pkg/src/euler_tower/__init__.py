"""euler-tower: exact higher Euler characteristics.

The Euler characteristic is the value of the Poincare polynomial P(t) at
t = -1; when it vanishes, the Taylor coefficients of P about t = -1 take
over as finer invariants.  This package computes those coefficients
exactly in five settings: Betti vectors and spaces, integer chain
complexes, formal K-theory classes, motivic measures on a small variety
DSL, and finite categories (where a pole even yields negative-index
coefficients), and it mechanically verifies the identities relating them.
"""

from .polycore import (
    LaurentPolynomial,
    RationalFunction,
    TaylorCoefficients,
    TruncatedSeries,
    alt_chi,
    chi_from_betti,
    laurent_expand,
    reexpand,
)
from .rings import QQ, SYMBOLS, ZZ, SymPoly, parse_sympoly

__version__ = "0.1.0"

__all__ = [
    "LaurentPolynomial",
    "RationalFunction",
    "TaylorCoefficients",
    "TruncatedSeries",
    "alt_chi",
    "chi_from_betti",
    "laurent_expand",
    "reexpand",
    "QQ",
    "SYMBOLS",
    "ZZ",
    "SymPoly",
    "parse_sympoly",
    "__version__",
]
