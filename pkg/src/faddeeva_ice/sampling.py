"""Sinc function, its incomplete cosine expansions, and Gaussian sampling.

The expansion at depth M replaces sinc(pi t / h) by an average of 2**(M-1)
cosines.  It is exact at t = 0, periodic with period ``T = 2**(M+1) h``, and
close to the sinc function on ``[-T/4, T/4]``.  Sampling ``exp(-t**2)``
through it gives a double cosine sum whose shifted and damped form is the
starting point of the rational approximation in :mod:`faddeeva_ice.core`.

All functions accept scalars or numpy arrays for ``t`` and return the same
shape; sums over expansion terms are correctly rounded (``math.fsum``) and
cosine phases are range-reduced exactly, so the identities between the
different forms hold to a few ulp.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._fp import as_output, cos_multiple, cospi_multiple, fsum_last
from .errors import ParameterError

SINC_TAYLOR_THRESHOLD = 1e-4
SHIFT_VALIDITY_MIN = 2.0


class ExpansionValidityWarning(UserWarning):
    """Shift constant too small for the periodic peaks to be damped."""


@dataclass(frozen=True)
class ExpansionParams:
    """Sampling step ``h``, half-count ``N``, depth ``M`` and shift ``sigma_shift``.

    The library default ``(0.25, 23, 5, 2.75)`` gives 16 expansion terms and
    47 sampling points.
    """

    h: float = 0.25
    N: int = 23
    M: int = 5
    sigma_shift: float = 2.75

    def __post_init__(self):
        if not (isinstance(self.N, (int, np.integer)) and isinstance(self.M, (int, np.integer))):
            raise ParameterError("N and M must be integers")
        if not (math.isfinite(self.h) and self.h > 0):
            raise ParameterError(f"h must be positive and finite, got {self.h!r}")
        if self.N < 0:
            raise ParameterError(f"N must be >= 0, got {self.N}")
        if self.M < 1:
            raise ParameterError(f"M must be >= 1, got {self.M}")
        if not (math.isfinite(self.sigma_shift) and self.sigma_shift >= 0):
            raise ParameterError(f"sigma_shift must be >= 0, got {self.sigma_shift!r}")

    @property
    def n_terms(self) -> int:
        return 2 ** (self.M - 1)

    @property
    def period(self) -> float:
        return 2.0 ** (self.M + 1) * self.h


@dataclass(frozen=True)
class GeneralExpansionParams:
    """Expansion with an arbitrary term count ``L_terms`` instead of 2**(M-1)."""

    L_terms: int
    h: float

    def __post_init__(self):
        if not isinstance(self.L_terms, (int, np.integer)) or self.L_terms < 1:
            raise ParameterError(f"L_terms must be a positive integer, got {self.L_terms!r}")
        if not (math.isfinite(self.h) and self.h > 0):
            raise ParameterError(f"h must be positive and finite, got {self.h!r}")

    @property
    def period(self) -> float:
        return 4.0 * self.L_terms * self.h


@dataclass(frozen=True)
class PoissonExpansionParams:
    """Expansion obtained from Poisson summation with period ``period_P``."""

    period_P: float

    def __post_init__(self):
        if not (math.isfinite(self.period_P) and self.period_P > 0):
            raise ParameterError(f"period_P must be positive, got {self.period_P!r}")

    @property
    def max_index(self) -> int:
        # floor is inclusive: at an exact multiple of 2*pi the boundary term is kept
        return math.floor(self.period_P / (2.0 * math.pi))


def sinc(t):
    """sin(t)/t, equal to 1 at the origin."""
    t = np.asarray(t, dtype=float)
    t2 = t * t
    taylor = 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0))
    small = np.abs(t) < SINC_TAYLOR_THRESHOLD
    safe = np.where(small, 1.0, t)
    return as_output(np.where(small, taylor, np.sin(safe) / safe))


def vieta_product(t, M: int):
    """Truncated Vieta product prod_{m=1..M} cos(t / 2**m)."""
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    t = np.asarray(t, dtype=float)
    out = np.ones_like(t)
    for m in range(1, M + 1):
        out = out * np.cos(t / 2.0**m)
    return as_output(out)


def _odd(count: int):
    return 2.0 * np.arange(1, count + 1) - 1.0


def cosine_sum(t, M: int):
    """Sum side of the product-to-sum identity for the Vieta product."""
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    t = np.asarray(t, dtype=float)
    count = 2 ** (M - 1)
    terms = cos_multiple(_odd(count), (t / 2.0**M)[..., None])
    return as_output(fsum_last(terms) / count)


def _cos_average(t, count: int, half_period: float):
    # (1/count) * sum_{m=1..count} cos(pi (2m-1) t / half_period)
    t = np.asarray(t, dtype=float)
    terms = cospi_multiple(_odd(count), (t / half_period)[..., None])
    return as_output(fsum_last(terms) / count)


def incomplete_cosine_sinc(t, params: ExpansionParams):
    """Incomplete cosine expansion approximating sinc(pi t / h)."""
    return _cos_average(t, params.n_terms, 2.0**params.M * params.h)


def general_cosine_sinc(t, params: GeneralExpansionParams):
    """L-term generalisation; coincides with the main form at L = 2**(M-1)."""
    return _cos_average(t, params.L_terms, 2.0 * params.L_terms * params.h)


def poisson_cosine_sinc(t, params: PoissonExpansionParams):
    """Cosine expansion of sinc(t) from Poisson summation, valid on |t| <= T_P/2."""
    t = np.asarray(t, dtype=float)
    P = params.max_index
    p = np.arange(-P, P + 1, dtype=float)
    terms = cospi_multiple(2.0 * p, (t / params.period_P)[..., None])
    return as_output(math.pi / params.period_P * fsum_last(terms))


def periodized_sinc_sum(t, period: float, P: int):
    """Symmetric partial sum sum_{p=-P..P} sinc(t + p*period).

    For ``0 < period < 2*pi`` this tends to ``pi / period``; at ``period = 1``
    it converges to pi itself, slowly (the tail decays like 1/P).
    """
    if P < 1:
        raise ParameterError(f"P must be >= 1, got {P}")
    if not period > 0:
        raise ParameterError(f"period must be positive, got {period!r}")
    t = np.asarray(t, dtype=float)
    shifts = np.arange(-P, P + 1, dtype=float) * period
    flat = t.reshape(-1)
    out = np.array([math.fsum(sinc(ti + shifts)) for ti in flat])
    return as_output(out.reshape(t.shape))


def _gaussian_samples(params: ExpansionParams):
    n = np.arange(-params.N, params.N + 1, dtype=float)
    tn = n * params.h
    return tn, np.exp(-tn * tn)


def sampled_gaussian(t, params: ExpansionParams):
    """exp(-t**2) sampled at t_n = n h through the incomplete cosine expansion.

    Periodic with period ``params.period``: besides the central peak there are
    negative copies at odd multiples of T/2 and positive ones at multiples of T.
    """
    t = np.asarray(t, dtype=float)
    tn, fn = _gaussian_samples(params)
    half_period = 2.0**params.M * params.h
    u = (t[..., None, None] - tn) / half_period
    terms = fn * cospi_multiple(_odd(params.n_terms)[:, None], u)
    flat = terms.reshape(t.shape + (-1,))
    return as_output(fsum_last(flat) / params.n_terms)


def damped_shifted_gaussian(t, params: ExpansionParams):
    """exp(-sigma t) times the sampled Gaussian shifted right by sigma/2.

    Approximates ``exp(-sigma t) * exp(-(t - sigma/2)**2)``; the damping
    suppresses the periodic copies once ``sigma_shift`` is about 2 or more.
    Smaller shifts are allowed but emit :class:`ExpansionValidityWarning`.
    """
    sigma = params.sigma_shift
    if sigma < SHIFT_VALIDITY_MIN:
        warnings.warn(
            f"sigma_shift={sigma} < {SHIFT_VALIDITY_MIN}: periodic peaks are not damped",
            ExpansionValidityWarning,
            stacklevel=2,
        )
    t = np.asarray(t, dtype=float)
    return as_output(np.exp(-sigma * t) * np.asarray(sampled_gaussian(t - sigma / 2.0, params)))
