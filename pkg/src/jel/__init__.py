"""Exact computations on eigenspaces of the Johnson scheme J(n, w)."""

from .combinat import CapExceeded, JohnsonParams, RegimeError, WSubset, binomial
from .spectra import SchemeVector, eberlein, eigenvalue, inclusion_map, is_eigenvector, sign_census

__version__ = "0.1.0"
