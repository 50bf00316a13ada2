"""p-adic root existence for sparse polynomials, with checkable certificates."""
from .feasibility import (Answer, Certificate, FeasibilityVerdict, solve,
                          verify_certificate)
from .padic import INFINITY, PadicContext, ord_p
from .sparse_poly import SparsePoly, parse_poly

__version__ = "0.1.0"

__all__ = ["Answer", "Certificate", "FeasibilityVerdict", "INFINITY", "PadicContext",
           "SparsePoly", "ord_p", "parse_poly", "solve", "verify_certificate"]
