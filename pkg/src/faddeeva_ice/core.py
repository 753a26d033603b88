"""Rational approximation of the Faddeeva function w(z) = exp(-z**2) erfc(-iz).

Sampling ``exp(-t**2)`` through the shifted, damped incomplete cosine
expansion turns the Laplace-type integral for w into a sum of 2**(M-1)
rational terms::

    w(z) ~ psi(z + i*sigma/2),
    psi(u) = sum_m (A_m + u*B_m) / (C_m**2 - u**2),   B_m = -i*b_m.

The coefficients depend only on the expansion parameters and are cached per
:class:`~faddeeva_ice.sampling.ExpansionParams`.  The approximation is given
for Im z > 0; Im z = 0 is accepted (the shift keeps every denominator away
from zero) and the lower half-plane is rejected unless reflection is asked
for explicitly.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from ._fp import as_output, cospi_multiple, fsum_last, sinpi_multiple
from .errors import BranchTrackingError, DomainError, ParameterError, PoleError
from .sampling import ExpansionParams

SQRT_PI = math.sqrt(math.pi)
DEFAULT_PARAMS = ExpansionParams(h=0.25, N=23, M=5, sigma_shift=2.75)

# exp(y**2 - x**2) overflows beyond this exponent
_EXP_LIMIT = math.log(np.finfo(float).max)

DOMAIN_MESSAGE = "domain: Im[z] > 0 required"


class LowerHalfPolicy(enum.Enum):
    REJECT = "reject"
    REFLECT = "continue_by_reflection"


@dataclass(frozen=True)
class EvalOptions:
    lower_half_policy: LowerHalfPolicy = LowerHalfPolicy.REJECT
    accuracy_note_threshold: float = 1e-4

    def __post_init__(self):
        if not self.accuracy_note_threshold > 0:
            raise ParameterError("accuracy_note_threshold must be positive")


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Precomputed C_m, A_m and b_m tables (read-only arrays)."""

    params: ExpansionParams
    c: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.c)


@functools.lru_cache(maxsize=32)
def build_coefficients(params: ExpansionParams = DEFAULT_PARAMS) -> CoefficientSet:
    """Fold the sampling sum over n into one coefficient triple per cosine term."""
    if not isinstance(params, ExpansionParams):
        raise ParameterError(f"expected ExpansionParams, got {type(params).__name__}")
    h, M, sigma = params.h, params.M, params.sigma_shift
    k = 2.0 * np.arange(1, params.n_terms + 1) - 1.0
    n = np.arange(-params.N, params.N + 1, dtype=float)
    nh = n * h

    weight = np.exp(sigma * sigma / 4.0 - nh * nh)
    phase = (nh + sigma / 2.0) / (2.0**M * h)
    sin_sum = fsum_last(weight * sinpi_multiple(k[:, None], phase))
    cos_sum = fsum_last(weight * cospi_multiple(k[:, None], phase))

    a = SQRT_PI * k / (2.0 ** (2 * M) * h) * sin_sum
    b = cos_sum / (2.0 ** (M - 1) * SQRT_PI)
    c = math.pi * k / (2.0 ** (M + 1) * h)
    for arr in (a, b, c):
        arr.setflags(write=False)
    return CoefficientSet(params=params, c=c, a=a, b=b)


def default_coefficients() -> CoefficientSet:
    # positional, so the cache entry is shared with explicit callers
    return build_coefficients(DEFAULT_PARAMS)


def psi(zs, coeffs: CoefficientSet | None = None):
    """Unshifted rational sum; w(z) is psi(z + i*sigma/2).

    Terms are accumulated in index order, one point at a time, so any batch
    partition of ``zs`` gives bit-identical results.
    """
    if coeffs is None:
        coeffs = default_coefficients()
    zs = np.asarray(zs, dtype=complex)
    p, q = zs.real, zs.imag
    acc = np.zeros(zs.shape, dtype=complex)
    for a_m, b_m, c_m in zip(coeffs.a, coeffs.b, coeffs.c):
        # (C - zs)(C + zs) keeps the real part accurate near the poles
        den = ((c_m - p) * (c_m + p) + q * q) - 1j * (2.0 * p * q)
        if np.any(den == 0):
            raise PoleError(f"psi has a pole at zs = +/-{c_m!r}")
        num = (a_m + b_m * q) - 1j * (b_m * p)
        acc = acc + num / den
    return as_output(acc)


def _check_finite(z):
    if not np.all(np.isfinite(z)):
        raise DomainError("non-finite argument")


def _exp_neg_square(z):
    exponent = z.imag * z.imag - z.real * z.real
    if np.any(exponent > _EXP_LIMIT):
        raise OverflowError(
            f"exp(-z**2) overflows; safe domain is Im(z)**2 - Re(z)**2 < {_EXP_LIMIT:.2f}"
        )
    return np.exp(-z * z)


def w(z, coeffs: CoefficientSet | None = None, opts: EvalOptions = DEFAULT_OPTIONS):
    """Faddeeva function by the incomplete cosine expansion approximation.

    Parameters
    ----------
    z : complex or array_like of complex
        Arguments with ``Im z >= 0``.  Under
        ``LowerHalfPolicy.REFLECT`` points below the axis are continued with
        ``w(z) = 2 exp(-z**2) - w(-z)``.
    coeffs : CoefficientSet, optional
        Defaults to the tables for ``(h, N, M, sigma) = (0.25, 23, 5, 2.75)``.
    opts : EvalOptions, optional

    Raises
    ------
    DomainError
        Some ``Im z < 0`` under the reject policy, or non-finite input.
    OverflowError
        ``exp(-z**2)`` overflows during reflection.
    """
    if coeffs is None:
        coeffs = default_coefficients()
    z = np.asarray(z, dtype=complex)
    _check_finite(z)
    shift = 0.5j * coeffs.params.sigma_shift
    below = z.imag < 0
    if not np.any(below):
        return as_output(psi(z + shift, coeffs))
    if opts.lower_half_policy is LowerHalfPolicy.REJECT:
        raise DomainError(DOMAIN_MESSAGE)
    zz = np.where(below, -z, z)
    out = np.asarray(psi(zz + shift, coeffs))
    zb = z[below]
    out[below] = 2.0 * _exp_neg_square(zb) - out[below]
    return as_output(out)


def accuracy_notes(z, opts: EvalOptions = DEFAULT_OPTIONS):
    """Mask of points below the degraded-accuracy threshold in Im z.

    The approximation is validated down to Im z = 1e-6; between that and
    ``opts.accuracy_note_threshold`` relative accuracy is about 1e-8, and
    Im z = 0 is an extension of the validated domain.
    """
    z = np.asarray(z, dtype=complex)
    return as_output(z.imag < opts.accuracy_note_threshold)


def voigt_K(x, y, coeffs: CoefficientSet | None = None, opts: EvalOptions = DEFAULT_OPTIONS):
    """Voigt function K(x, y) = Re w(x + iy)."""
    z = np.asarray(x, dtype=float) + 1j * np.asarray(y, dtype=float)
    return as_output(np.real(w(z, coeffs, opts)))


def voigt_L(x, y, coeffs: CoefficientSet | None = None, opts: EvalOptions = DEFAULT_OPTIONS):
    """L(x, y) = Im w(x + iy), the dispersion counterpart of K."""
    z = np.asarray(x, dtype=float) + 1j * np.asarray(y, dtype=float)
    return as_output(np.imag(w(z, coeffs, opts)))


def plasma_Z(z, coeffs: CoefficientSet | None = None, opts: EvalOptions = DEFAULT_OPTIONS):
    """Plasma dispersion function Z(z) = i sqrt(pi) w(z)."""
    return as_output(1j * SQRT_PI * np.asarray(w(z, coeffs, opts)))


def erf_c(z, coeffs: CoefficientSet | None = None, opts: EvalOptions = DEFAULT_OPTIONS):
    """Error function of complex argument, erf(z) = 1 - exp(-z**2) w(iz).

    ``w`` is evaluated at ``iz``, so ``Re z < 0`` falls in the lower
    half-plane and follows ``opts.lower_half_policy``.
    """
    z = np.asarray(z, dtype=complex)
    _check_finite(z)
    return as_output(1.0 - _exp_neg_square(z) * np.asarray(w(1j * z, coeffs, opts)))


def normal_Phi(z, coeffs: CoefficientSet | None = None, opts: EvalOptions = DEFAULT_OPTIONS):
    """Normal distribution integral from 0 to z, (1 - exp(-z**2/2) w(iz/sqrt 2)) / 2."""
    z = np.asarray(z, dtype=complex)
    _check_finite(z)
    u = z / math.sqrt(2.0)
    return as_output(0.5 * (1.0 - _exp_neg_square(u) * np.asarray(w(1j * u, coeffs, opts))))


def _log1p(d: complex) -> complex:
    # principal log(1 + d) without the cancellation of forming 1 + d first
    modulus = 0.5 * math.log1p(2.0 * d.real + d.real * d.real + d.imag * d.imag)
    return complex(modulus, math.atan2(d.imag, 1.0 + d.real))


def _log_ratio_sum(x1, x2, s, coeffs):
    # Partial fractions: (A + uB)/(C**2 - u**2) = alpha/(C - u) + beta/(C + u)
    # with u = x + i s.  Im(C - u) = -s < 0 and Im(C + u) = s > 0 along the
    # whole path, so neither factor crosses the principal branch cut and the
    # log of the endpoint ratio equals the change of the log along the path.
    total = 0j
    for a_m, b_m, c_m in zip(coeffs.a, coeffs.b, coeffs.c):
        big_b = -1j * b_m
        alpha = (a_m + c_m * big_b) / (2.0 * c_m)
        beta = (a_m - c_m * big_b) / (2.0 * c_m)
        # each endpoint ratio is 1 + d; short intervals far out give tiny d
        minus = _log1p((x1 - x2) / complex(c_m - x1, -s))
        plus = _log1p((x2 - x1) / complex(c_m + x1, s))
        total += -alpha * minus + beta * plus
    return total


def voigt_integrated(
    x1: float,
    x2: float,
    y: float,
    coeffs: CoefficientSet | None = None,
    check: bool = False,
    rtol: float = 1e-9,
) -> float:
    """Integral of K(x, y) over x in [x1, x2], in closed form.

    Each rational term of the approximation integrates to a pair of complex
    logarithms.  With ``check=True`` the result is compared against adaptive
    quadrature of :func:`voigt_K` and :class:`BranchTrackingError` is raised
    on disagreement beyond ``rtol``.
    """
    if coeffs is None:
        coeffs = default_coefficients()
    if not y > 0:
        raise DomainError(DOMAIN_MESSAGE)
    if x1 > x2:
        raise DomainError(f"x1 must not exceed x2 (got {x1} > {x2})")
    if x1 == x2:
        return 0.0
    s = y + coeffs.params.sigma_shift / 2.0
    value = float(np.real(_log_ratio_sum(float(x1), float(x2), s, coeffs)))
    if check:
        from scipy.integrate import quad

        ref, _ = quad(lambda x: voigt_K(x, y, coeffs), x1, x2, epsabs=0.0, epsrel=1e-12, limit=500)
        if abs(value - ref) > rtol * abs(ref):
            raise BranchTrackingError(
                f"closed form {value!r} disagrees with quadrature {ref!r} on [{x1}, {x2}]"
            )
    return value


class IncompleteCosineW:
    """Callable evaluator holding one coefficient set.

    >>> f = IncompleteCosineW()
    >>> abs(f(1j) - 0.42758357615580700) < 1e-12
    True
    """

    name = "ice"

    def __init__(self, params: ExpansionParams = DEFAULT_PARAMS, opts: EvalOptions = DEFAULT_OPTIONS):
        self.params = params
        self.opts = opts
        self.coeffs = build_coefficients(params)

    def __call__(self, z):
        return w(z, self.coeffs, self.opts)

    def __repr__(self):
        p = self.params
        return f"IncompleteCosineW(h={p.h}, N={p.N}, M={p.M}, sigma_shift={p.sigma_shift})"
