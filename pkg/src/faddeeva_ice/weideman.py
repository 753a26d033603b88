"""Baseline rational approximation of w(z) in a Mobius variable.

    w(z) ~ pi**-0.5 / (L - iz) + 2/(L - iz)**2 * sum_{n=0}^{N-1} gamma_{n+1} Z**n,
    Z = (L + iz) / (L - iz),  L = 2**-0.25 * sqrt(N).

The gamma_n are the Fourier coefficients of
``f(theta) = exp(-t**2) (L**2 + t**2)`` with ``t = L tan(theta/2)``,
obtained here by one FFT over 4N equispaced angles (M = 2N intervals on
each side of the origin, 2M samples in all).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._fp import as_output
from .errors import DomainError, ParameterError

INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


@dataclass(frozen=True, eq=False)
class WeidemanCoefficients:
    N_w: int
    L_w: float
    gamma: np.ndarray = field(repr=False)


def mobius_scale(N_w: int) -> float:
    return 2.0**-0.25 * math.sqrt(N_w)


def build_weideman(N_w: int = 16) -> WeidemanCoefficients:
    if not isinstance(N_w, (int, np.integer)) or N_w < 1:
        raise ParameterError(f"N_w must be a positive integer, got {N_w!r}")
    L = mobius_scale(N_w)
    M = 2 * N_w
    k = np.arange(-M + 1, M)
    t = L * np.tan(k * np.pi / M / 2.0)
    f = np.concatenate([[0.0], np.exp(-t * t) * (L * L + t * t)])
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * M)
    gamma = a[1 : N_w + 1].copy()
    gamma.setflags(write=False)
    return WeidemanCoefficients(N_w=N_w, L_w=L, gamma=gamma)


def gamma_by_quadrature(n: int, L: float) -> float:
    """n-th coefficient from (1/pi) * integral_0^pi f(theta) cos(n theta) dtheta.

    Independent of the FFT route; used to cross-check :func:`build_weideman`.
    """
    from scipy.integrate import quad

    def integrand(theta):
        t = L * math.tan(theta / 2.0)
        return math.exp(-t * t) * (L * L + t * t)

    val, _ = quad(integrand, 0.0, math.pi, weight="cos", wvar=n, epsabs=1e-15, limit=400)
    return val / math.pi


def _check_domain(z):
    if not np.all(np.isfinite(z)):
        raise DomainError("non-finite argument")
    if np.any(z.imag <= 0):
        raise DomainError("domain: Im[z] > 0 required")


def w_weideman(z, coeffs: WeidemanCoefficients | None = None):
    """Evaluate the approximation with Horner's rule in the Mobius variable."""
    if coeffs is None:
        coeffs = build_weideman(16)
    z = np.asarray(z, dtype=complex)
    _check_domain(z)
    L = coeffs.L_w
    denom = L - 1j * z
    Z = (L + 1j * z) / denom
    p = np.zeros_like(Z)
    for g in coeffs.gamma[::-1]:
        p = p * Z + g
    return as_output(2.0 * p / (denom * denom) + INV_SQRT_PI / denom)


def w_weideman_powers(z, coeffs: WeidemanCoefficients):
    """Same sum with explicit powers Z**n; reference path for the Horner form."""
    z = np.asarray(z, dtype=complex)
    _check_domain(z)
    L = coeffs.L_w
    denom = L - 1j * z
    Z = (L + 1j * z) / denom
    n = np.arange(coeffs.N_w)
    p = np.sum(coeffs.gamma * Z[..., None] ** n, axis=-1)
    return as_output(2.0 * p / (denom * denom) + INV_SQRT_PI / denom)


class WeidemanW:
    name = "weideman"

    def __init__(self, N_w: int = 16):
        self.coeffs = build_weideman(N_w)

    def __call__(self, z):
        return w_weideman(z, self.coeffs)

    def __repr__(self):
        return f"WeidemanW(N_w={self.coeffs.N_w})"
