"""Exact rational computations with finite-dimensional Lie superalgebras,
centred on Sylow subalgebras and 0-superalgebras."""

from .families import FamilySpec, construct, parse_family, sylow_candidate
from .liesuper import SuperAlgebra, Subalgebra
from .reports import VerificationReport

__version__ = "0.1.0"

__all__ = ["FamilySpec", "SuperAlgebra", "Subalgebra", "VerificationReport",
           "construct", "parse_family", "sylow_candidate", "__version__"]
