"""Faddeeva function by incomplete cosine expansion of the sinc function.

Main entry points::

    from faddeeva_ice import w, voigt_K, build_coefficients, ExpansionParams
    w(1 + 1j)                     # default (h, N, M, sigma) = (0.25, 23, 5, 2.75)
    w(z, build_coefficients(ExpansionParams(M=6)))

The Weideman baseline lives in :mod:`faddeeva_ice.weideman`, the reference
oracle in :mod:`faddeeva_ice.oracle` and the error-map tooling in
:mod:`faddeeva_ice.errmap`.
"""

from .core import (
    DEFAULT_PARAMS,
    CoefficientSet,
    EvalOptions,
    IncompleteCosineW,
    LowerHalfPolicy,
    accuracy_notes,
    build_coefficients,
    erf_c,
    normal_Phi,
    plasma_Z,
    psi,
    voigt_integrated,
    voigt_K,
    voigt_L,
    w,
)
from .errors import (
    BranchTrackingError,
    ConvergenceError,
    DomainError,
    FaddeevaError,
    OracleIntegrityError,
    OracleRangeError,
    ParameterError,
    PoleError,
)
from .oracle import OracleValue, w_ref
from .sampling import ExpansionParams, GeneralExpansionParams, PoissonExpansionParams
from .weideman import WeidemanW, build_weideman, w_weideman

__version__ = "0.1.0"
