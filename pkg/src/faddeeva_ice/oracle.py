"""Reference values of w(z) from two independent classical methods.

* Maclaurin series ``w(z) = sum_n (iz)**n / Gamma(n/2 + 1)``, summed in MPFR
  arithmetic (gmpy2) with enough bits to absorb the ``exp(|z|**2)``
  cancellation, so each component keeps full relative accuracy.
* Laplace continued fraction, evaluated bottom-up in double precision with
  the depth doubled until two successive depths agree.

:func:`w_ref` routes by |z| and evaluates both methods in the overlap band,
raising :class:`OracleIntegrityError` if they disagree.  The oracle exists for
validation only; it is orders of magnitude slower than the approximations.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import gmpy2
import numpy as np

from .errors import ConvergenceError, DomainError, OracleIntegrityError, OracleRangeError

SERIES_MAX_ABS = 12.0
SERIES_ONLY_BELOW = 6.0
CFRAC_ONLY_ABOVE = 8.0
AGREEMENT_TOL = 1e-13
CFRAC_TOL = 1e-15
CFRAC_START_DEPTH = 16
CFRAC_MAX_DEPTH = 2**17

_GUARD_BITS = 64
_LOG2_E = 1.0 / math.log(2.0)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


class Method(enum.Enum):
    SERIES = "series"
    CONTINUED_FRACTION = "continued_fraction"
    BOTH = "both"


@dataclass(frozen=True)
class OracleValue:
    value: complex
    method_agreement: float
    method_used: Method


def _as_point(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("non-finite argument")
    return z


def w_series(z) -> complex:
    """Maclaurin series in extended precision, valid for |z| <= 12.

    Written as ``exp(-z**2) + i z S`` with both pieces expanded in
    ``q = -z**2``; the even part is the exponential series itself, so no
    library exp or erfc enters the result.
    """
    z = _as_point(z)
    r2 = z.real * z.real + z.imag * z.imag
    if math.sqrt(r2) > SERIES_MAX_ABS:
        raise OracleRangeError(f"|z| = {math.sqrt(r2):.3g} exceeds series range {SERIES_MAX_ABS}")
    # terms peak near exp(|z|**2); carry that many extra bits plus a guard
    prec = 53 + _GUARD_BITS + int(math.ceil(r2 * _LOG2_E))
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        zz = gmpy2.mpc(z.real, z.imag)
        q = -(zz * zz)
        tol2 = gmpy2.mpfr(2) ** (-2 * (_GUARD_BITS + 53))
        half = gmpy2.mpfr(0.5)
        even = gmpy2.mpc(0)
        odd = gmpy2.mpc(0)
        t_even = gmpy2.mpc(1)
        t_odd = gmpy2.mpc(2 / gmpy2.sqrt(gmpy2.const_pi()))  # 1 / Gamma(3/2)
        k = 0
        while True:
            even += t_even
            odd += t_odd
            k += 1
            t_even = t_even * q / k
            t_odd = t_odd * q / (k + half)
            # past the peak the terms shrink at least geometrically with
            # ratio r2/(k+1), which bounds the remaining tail
            if k > r2 and k % 4 == 0:
                ratio = r2 / (k + 1)
                if ratio < 0.5 and gmpy2.norm(t_even) + gmpy2.norm(t_odd) < 0.25 * tol2:
                    break
        result = even + gmpy2.mpc(0, 1) * zz * odd
        return complex(float(result.real), float(result.imag))


def _cfrac_at_depth(z, depth: int):
    r = np.zeros_like(z)
    for k in range(depth, 0, -1):
        r = (0.5 * k) / (z - r)
    return 1j * _INV_SQRT_PI / (z - r)


def w_cfrac(z, depth: int | None = None):
    """Laplace continued fraction ``(i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - ...)))``.

    With ``depth`` given the fraction is truncated there.  Otherwise the
    depth starts at 16 and doubles until successive values agree to 1e-15
    relative; :class:`ConvergenceError` is raised past ``CFRAC_MAX_DEPTH``.
    Accepts a scalar or an array; requires Im z > 0.
    """
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("non-finite argument")
    if np.any(z.imag <= 0):
        raise DomainError("continued fraction requires Im[z] > 0")
    if depth is not None:
        if depth < 1:
            raise ValueError("depth must be positive")
        out = _cfrac_at_depth(z, depth)
        return out.item() if out.ndim == 0 else out
    return _cfrac_adaptive(z)


def _cfrac_adaptive(z):
    flat = z.reshape(-1)
    out = np.empty_like(flat)
    todo = np.arange(flat.size)
    depth = CFRAC_START_DEPTH
    prev = _cfrac_at_depth(flat, depth)
    while todo.size:
        depth *= 2
        if depth > CFRAC_MAX_DEPTH:
            raise ConvergenceError(
                f"continued fraction not converged at depth {CFRAC_MAX_DEPTH} for {todo.size} point(s)"
            )
        cur = _cfrac_at_depth(flat[todo], depth)
        done = np.abs(cur - prev) <= CFRAC_TOL * np.abs(cur)
        out[todo[done]] = cur[done]
        todo, prev = todo[~done], cur[~done]
    out = out.reshape(z.shape)
    return out.item() if out.ndim == 0 else out


def _relative_gap(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def w_ref(z) -> OracleValue:
    """Reference value with method routing by |z|.

    Series below 6, continued fraction above 8, both in between (the
    series value is returned there since it resolves the exponentially
    small ``exp(-x**2)`` part of Re w near the real axis).
    """
    z = _as_point(z)
    if z.imag < 0:
        raise DomainError("oracle requires Im[z] >= 0")
    r = abs(z)
    if z.imag == 0 and r > CFRAC_ONLY_ABOVE:
        return _real_axis_value(z)
    if r < SERIES_ONLY_BELOW:
        return OracleValue(w_series(z), 0.0, Method.SERIES)
    if r > CFRAC_ONLY_ABOVE:
        return OracleValue(w_cfrac(z), 0.0, Method.CONTINUED_FRACTION)
    s = w_series(z)
    if z.imag == 0:
        return OracleValue(s, 0.0, Method.SERIES)
    gap = _relative_gap(w_cfrac(z), s)
    if not gap <= AGREEMENT_TOL:
        raise OracleIntegrityError(f"series and continued fraction differ by {gap:.3e} at z={z!r}")
    return OracleValue(s, gap, Method.BOTH)


def _real_axis_value(z: complex) -> OracleValue:
    # Re w(x) = exp(-x**2) exactly on the axis; the imaginary part (Dawson)
    # is the Im z -> 0+ limit of the continued fraction, which converges
    # there for |x| > 8 at the depths used.
    x = z.real
    im = float(np.imag(_cfrac_at_depth(np.asarray(z), 4096)))
    return OracleValue(complex(math.exp(-x * x), im), 0.0, Method.CONTINUED_FRACTION)


def w_ref_array(z):
    """Vectorised :func:`w_ref`: returns ``(values, agreement, methods)``.

    ``methods`` holds the :class:`Method` value strings.  Raises
    :class:`OracleIntegrityError` on the first disagreement, so a grid run
    can never produce values from an inconsistent oracle.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.reshape(-1)
    if not np.all(np.isfinite(flat)):
        raise DomainError("non-finite argument")
    if np.any(flat.imag < 0):
        raise DomainError("oracle requires Im[z] >= 0")
    r = np.abs(flat)
    values = np.empty_like(flat)
    agreement = np.zeros(flat.shape)
    methods = np.empty(flat.shape, dtype=object)

    cf_only = (r > CFRAC_ONLY_ABOVE) & (flat.imag > 0)
    if np.any(cf_only):
        values[cf_only] = _cfrac_adaptive(flat[cf_only])
        methods[cf_only] = Method.CONTINUED_FRACTION.value

    overlap = (r >= SERIES_ONLY_BELOW) & (r <= CFRAC_ONLY_ABOVE) & (flat.imag > 0)
    if np.any(overlap):
        cf = _cfrac_adaptive(flat[overlap])
    for j, i in enumerate(np.flatnonzero(overlap)):
        s = w_series(flat[i])
        gap = _relative_gap(complex(cf[j]), s)
        if not gap <= AGREEMENT_TOL:
            raise OracleIntegrityError(f"series and continued fraction differ by {gap:.3e} at z={flat[i]!r}")
        values[i], agreement[i], methods[i] = s, gap, Method.BOTH.value

    rest = ~(cf_only | overlap)
    for i in np.flatnonzero(rest):
        ov = w_ref(flat[i])
        values[i], agreement[i], methods[i] = ov.value, ov.method_agreement, ov.method_used.value
    return values.reshape(z.shape), agreement.reshape(z.shape), methods.reshape(z.shape)
