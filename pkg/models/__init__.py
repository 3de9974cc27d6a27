"""
Models package for parity-psi.
Contains the value types: scalars, subsets, morphisms, complexes, filtrations,
affine Weyl elements and chart data.
"""

from .errors import VerificationError
from .scalar import BaseRing, Scalar, ScalarRing, scalar_ring
from .subset import Subset
from .check_result import CheckResult
