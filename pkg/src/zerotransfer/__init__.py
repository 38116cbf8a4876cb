"""Exact polynomial families defined by convolution recursions, with certified
zero location and transfer of zero bounds between the ``Q`` and ``P`` families."""

from .arithmetic import H0, HERMITE, ID, PARITY, SIGMA, ArithmeticFunction, parse
from .families import PolyFamily, compute_family, compute_P, compute_Q
from .poly import Polynomial
from .sturm import IsolatingInterval, isolate_real_roots

__version__ = "0.1.0"

__all__ = [
    "ArithmeticFunction", "H0", "HERMITE", "ID", "PARITY", "SIGMA", "parse",
    "PolyFamily", "compute_family", "compute_P", "compute_Q",
    "Polynomial", "IsolatingInterval", "isolate_real_roots",
]
