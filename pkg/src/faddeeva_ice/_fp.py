"""Floating point helpers: error-free products and exact-argument cosines.

The expansions below evaluate cos(k * s) for integer k up to a few thousand.
Rounding the product k * s before calling cos costs up to k/2 ulp of phase,
which is far larger than the ulp-level tolerances the identities are held
to, so the product is carried as an unevaluated pair (hi, lo).
"""

import math

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1

PI_HI = math.pi
PI_LO = 1.2246467991473532e-16  # pi - float(pi)


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Return (p, e) with p = fl(a*b) and a*b = p + e exactly (Dekker)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def cos_multiple(k, s):
    """cos(k*s) with the product k*s formed without rounding error."""
    p, e = two_prod(k, s)
    return np.cos(p) - np.sin(p) * e


def _reduced_turns(k, u):
    # k*u = p + e exactly; fold p into [-1, 1] modulo 2 (fmod and the
    # subtraction of an even integer are exact), then add the tail.
    p, e = two_prod(k, u)
    r = np.fmod(p, 2.0)
    r = r - 2.0 * np.round(r / 2.0)
    return two_sum(r, e)


def _pi_times(r, e):
    hi, lo = two_prod(PI_HI, r)
    return hi, lo + PI_LO * r + PI_HI * e


def cospi_multiple(k, u):
    """cos(pi*k*u) for integer-valued k, with exact range reduction."""
    hi, lo = _pi_times(*_reduced_turns(k, u))
    return np.cos(hi) - np.sin(hi) * lo


def sinpi_multiple(k, u):
    """sin(pi*k*u) for integer-valued k, with exact range reduction."""
    hi, lo = _pi_times(*_reduced_turns(k, u))
    return np.sin(hi) + np.cos(hi) * lo


def fsum_last(a):
    """Correctly rounded sum along the last axis."""
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        return np.float64(math.fsum(a))
    flat = a.reshape(-1, a.shape[-1])
    out = np.fromiter((math.fsum(row) for row in flat), dtype=float, count=flat.shape[0])
    return out.reshape(a.shape[:-1])


def as_output(out):
    """Return 0-d results as Python scalars, arrays untouched."""
    out = np.asarray(out)
    if out.ndim == 0:
        return out.item()
    return out
