"""Integral orbits, reduction covariants and family statistics for y^2 = f(x)."""

from ._hyperred import *  # noqa: F401,F403
from ._hyperred import HyperredError

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
