"""Root-counting measures of Jacobi polynomials and the geometry of their limit differentials."""

from qdgeo.polyroots import (
    OnSupportError,
    Poly,
    RootCountingMeasure,
    RootFindingError,
    empirical_cauchy,
    empirical_potential,
    find_roots,
)

__all__ = [
    "OnSupportError",
    "Poly",
    "RootCountingMeasure",
    "RootFindingError",
    "empirical_cauchy",
    "empirical_potential",
    "find_roots",
]

__version__ = "0.1.0"
