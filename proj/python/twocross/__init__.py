"""Piecewise-smooth 2-cross vector fields on R^3: codimension-1/2 sliding
analysis, reduced bilinear systems, quadratic normal forms and event-driven
integration."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__all__ = [n for n in dir() if not n.startswith("_")]
