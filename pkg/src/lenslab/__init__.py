"""Layered triangulations of solid tori and lens spaces."""

from .errors import DomainError, ParseError, SizeGuardError
from .lens import LensSpace, build_lens, identify_gluing
from .lst import LayeredPath, build_minimal
from .slope import LVertex, SlopeTriple
from .tri import Triangulation

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "ParseError",
    "SizeGuardError",
    "LensSpace",
    "build_lens",
    "identify_gluing",
    "LayeredPath",
    "build_minimal",
    "LVertex",
    "SlopeTriple",
    "Triangulation",
]
