"""Exact local arithmetic for metaplectic covers.

Modules: local_arith (Hilbert symbols, square classes, truncated series),
weil_index (eighth roots of unity attached to quadratic Gauss sums),
cocycle (the double cover's 2-cocycle on structured GL_r elements),
weil_rep (a finite lattice model of the Weil representation),
symsq (Schur polynomials, toral Whittaker sums, twisted symmetric-square
local factors), and cli (suite runner and one-off computations).
"""

from .errors import (
    ConvergenceDomainError,
    DataError,
    DomainError,
    ModelInconsistencyError,
    OracleConsistencyError,
    PreconditionError,
    UnsupportedDomainError,
)
from .local_arith import Place, hilbert, square_class_rep
from .weil_index import AdditiveCharacter, EighthRoot, gamma, mu
from .cocycle import StructuredElement, UnramifiedCharacter, sigma_eval
from .weil_rep import build_model, projective_multiplier
from .symsq import SatakeData, local_factors, pole_report, unramified_zeta_check

__version__ = "0.1.0"

__all__ = [
    "AdditiveCharacter",
    "ConvergenceDomainError",
    "DataError",
    "DomainError",
    "EighthRoot",
    "ModelInconsistencyError",
    "OracleConsistencyError",
    "Place",
    "PreconditionError",
    "SatakeData",
    "StructuredElement",
    "UnramifiedCharacter",
    "UnsupportedDomainError",
    "build_model",
    "gamma",
    "hilbert",
    "local_factors",
    "mu",
    "pole_report",
    "projective_multiplier",
    "sigma_eval",
    "square_class_rep",
    "unramified_zeta_check",
]
