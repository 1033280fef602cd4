"""Numerical construction of the canonical holomorphic gerbe on GL(n, C).

Modules:

- ``sectors``: angular order, sectors and integration contours
- ``spectral``: zero counting, Riesz projectors, generalized eigenspaces
- ``exterior``: top exterior powers and their duals
- ``gerbe``: fibers, multiplication, local trivializations, connections
- ``cover``, ``cech``: good covers, cocycles and the integer class
- ``two_gerbe``: bundles on S^4, pentagon, degree-3 class, Chern-Weil
"""

from .config import DEFAULTS, Tolerances
from .errors import GerbeError

__version__ = "0.1.0"

__all__ = ["DEFAULTS", "Tolerances", "GerbeError", "__version__"]
