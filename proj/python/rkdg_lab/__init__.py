"""Runge-Kutta discontinuous Galerkin operators, projections and studies.

Thin bindings over the C++ library. Operators act on NumPy coefficient
vectors; study and check results come back as plain dicts.
"""

from ._core import *  # noqa: F401,F403
from ._core import NumericalFailure, __doc__  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
