"""Exact symbolic verification engine for a three-dimensional
pseudo-Hermitian quadratic oscillator.

The package computes everything over the field of rational functions in the
two model parameters, so every verified identity is an exact statement, not a
numerical one.
"""

from .coeff import GaussianRational, ParamScalar, LAM, G, I
from .weyl import WeylOperator, GaussianState, Poly3
from .operators import catalogue, op, IdentityRecord
from .fock import CreationPolynomial, wick_inner, gaussian_moment_inner
from .jordan import JordanLabel, AssociatedState, build_state, ladder_apply
from .biortho import normalization, gram, orthogonalize

__version__ = "0.1.0"

__all__ = [
    "GaussianRational", "ParamScalar", "LAM", "G", "I",
    "WeylOperator", "GaussianState", "Poly3",
    "catalogue", "op", "IdentityRecord",
    "CreationPolynomial", "wick_inner", "gaussian_moment_inner",
    "JordanLabel", "AssociatedState", "build_state", "ladder_apply",
    "normalization", "gram", "orthogonalize",
    "__version__",
]
