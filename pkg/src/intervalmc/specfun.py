"""Error function family and the standard normal CDF/quantile.

The erf/erfc kernels follow the piecewise rational scheme of fdlibm's
``s_erf.c`` and are evaluated with numpy so that Monte Carlo loops can
call them on whole arrays.  Nothing here delegates to ``math.erf`` or
scipy, which keeps results bit-stable across platforms.

    Copyright (C) 1993 by Sun Microsystems, Inc. All rights reserved.

    Developed at SunPro, a Sun Microsystems, Inc. business.
    Permission to use, copy, modify, and distribute this
    software is freely granted, provided that this notice
    is preserved.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidProbabilityError

__all__ = [
    "erf",
    "erfc",
    "std_normal_pdf",
    "std_normal_cdf",
    "std_normal_quantile",
]

SQRT2 = math.sqrt(2.0)
SQRT2PI = math.sqrt(2.0 * math.pi)

erx = 8.45062911510467529297e-01
efx = 1.28379167095512586316e-01

# erf on [0, 0.84375]
pp = (
    1.28379167095512558561e-01,
    -3.25042107247001499370e-01,
    -2.84817495755985104766e-02,
    -5.77027029648944159157e-03,
    -2.37630166566501626084e-05,
)
qq = (
    1.0,
    3.97917223959155352819e-01,
    6.50222499887672944485e-02,
    5.08130628187576562776e-03,
    1.32494738004321644526e-04,
    -3.96022827877536812320e-06,
)

# erf on [0.84375, 1.25], expanded around 1
pa = (
    -2.36211856075265944077e-03,
    4.14856118683748331666e-01,
    -3.72207876035701323847e-01,
    3.18346619901161753674e-01,
    -1.10894694282396677476e-01,
    3.54783043256182359371e-02,
    -2.16637559486879084300e-03,
)
qa = (
    1.0,
    1.06420880400844228286e-01,
    5.40397917702171048937e-01,
    7.18286544141962662868e-02,
    1.26171219808761642112e-01,
    1.36370839120290507362e-02,
    1.19844998467991074170e-02,
)

# erfc on [1.25, 1/0.35], in powers of 1/x^2
ra = (
    -9.86494403484714822705e-03,
    -6.93858572707181764372e-01,
    -1.05586262253232909814e01,
    -6.23753324503260060396e01,
    -1.62396669462573470355e02,
    -1.84605092906711035994e02,
    -8.12874355063065934246e01,
    -9.81432934416914548592e00,
)
sa = (
    1.0,
    1.96512716674392571292e01,
    1.37657754143519042600e02,
    4.34565877475229228821e02,
    6.45387271733267880336e02,
    4.29008140027567833386e02,
    1.08635005541779435134e02,
    6.57024977031928170135e00,
    -6.04244152148580987438e-02,
)

# erfc on [1/0.35, 28]
rb = (
    -9.86494292470009928597e-03,
    -7.99283237680523006574e-01,
    -1.77579549177547519889e01,
    -1.60636384855821916062e02,
    -6.37566443368389627722e02,
    -1.02509513161107724954e03,
    -4.83519191608651397019e02,
)
sb = (
    1.0,
    3.03380607434824582924e01,
    3.25792512996573918826e02,
    1.53672958608443695994e03,
    3.19985821950859553908e03,
    2.55305040643316442583e03,
    4.74528541206955367215e02,
    -2.24409524465858183362e01,
)


def _poly(coeffs, t):
    """Evaluate a polynomial given ascending coefficients (Horner)."""
    acc = np.full_like(t, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * t + c
    return acc


def _wrap(out: np.ndarray, scalar: bool):
    return float(out) if scalar else out


def _prepare(x):
    arr = np.asarray(x, dtype=np.float64)
    return arr, arr.ndim == 0


def _truncate_low_word(ax: np.ndarray) -> np.ndarray:
    # Zero the low 32 bits so that z*z is exact in double precision.
    bits = np.ascontiguousarray(ax).view(np.uint64) & np.uint64(0xFFFFFFFF00000000)
    return bits.view(np.float64)


def _tail(ax: np.ndarray) -> np.ndarray:
    """erfc(ax) for 1.25 <= ax < 28, without forming 1 - erf."""
    s = 1.0 / (ax * ax)
    ratio = np.empty_like(ax)
    near = ax < 1 / 0.35
    sn, sf = s[near], s[~near]
    ratio[near] = _poly(ra, sn) / _poly(sa, sn)
    ratio[~near] = _poly(rb, sf) / _poly(sb, sf)
    z = _truncate_low_word(ax)
    return np.exp(-z * z - 0.5625) * np.exp((z - ax) * (z + ax) + ratio) / ax


def erf(x):
    """Error function, accurate to about one ulp."""
    arr, scalar = _prepare(x)
    ax = np.abs(arr)
    out = np.empty_like(ax)

    small = ax < 0.84375
    mid = (ax >= 0.84375) & (ax < 1.25)
    big = (ax >= 1.25) & (ax < 6.0)
    huge = ax >= 6.0

    if small.any():
        xs = ax[small]
        z = xs * xs
        out[small] = np.where(xs < 2.0**-28, xs + efx * xs, xs + xs * (_poly(pp, z) / _poly(qq, z)))
    if mid.any():
        s = ax[mid] - 1.0
        out[mid] = erx + _poly(pa, s) / _poly(qa, s)
    if big.any():
        out[big] = 1.0 - _tail(ax[big])
    out[huge] = 1.0
    out[np.isnan(ax)] = np.nan

    return _wrap(np.copysign(out, arr), scalar)


def erfc(x):
    """Complementary error function with full relative accuracy in the right tail."""
    arr, scalar = _prepare(x)
    ax = np.abs(arr)
    neg = arr < 0
    out = np.empty_like(ax)

    small = ax < 0.84375
    mid = (ax >= 0.84375) & (ax < 1.25)
    big = (ax >= 1.25) & (ax < 28.0)
    huge = ax >= 28.0

    if small.any():
        xs = arr[small]
        z = xs * xs
        y = _poly(pp, z) / _poly(qq, z)
        out[small] = np.where(
            np.abs(xs) < 0.25,
            1.0 - (xs + xs * y),
            0.5 - (xs * y + (xs - 0.5)),
        )
    if mid.any():
        s = ax[mid] - 1.0
        pq = _poly(pa, s) / _poly(qa, s)
        out[mid] = np.where(neg[mid], 1.0 + (erx + pq), 1.0 - erx - pq)
    if big.any():
        r = _tail(ax[big])
        out[big] = np.where(neg[big], 2.0 - r, r)
    if huge.any():
        out[huge] = np.where(neg[huge], 2.0, 0.0)
    out[np.isnan(ax)] = np.nan

    return _wrap(out, scalar)


def std_normal_pdf(z):
    arr, scalar = _prepare(z)
    return _wrap(np.exp(-0.5 * arr * arr) / SQRT2PI, scalar)


def std_normal_cdf(z):
    """Phi(z) = erfc(-z/sqrt(2))/2."""
    arr, scalar = _prepare(z)
    return _wrap(0.5 * erfc(-arr / SQRT2), scalar)


# Acklam's rational approximation, relative error ~1.2e-9 before polishing.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549671010422219e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _horner(coeffs, t):
    acc = np.zeros_like(t) + coeffs[0]
    for c in coeffs[1:]:
        acc = acc * t + c
    return acc


def _lower_quantile(p: np.ndarray) -> np.ndarray:
    """Quantile for 0 < p <= 0.5, where Phi is evaluated without cancellation."""
    z = np.empty_like(p)
    central = p >= _P_LOW
    if central.any():
        q = p[central] - 0.5
        r = q * q
        z[central] = _horner(_A, r) * q / (_horner(_B, r) * r + 1.0)
    tail = ~central
    if tail.any():
        q = np.sqrt(-2.0 * np.log(p[tail]))
        z[tail] = _horner(_C, q) / (_horner(_D, q) * q + 1.0)

    # Newton on Phi(z) - p; two steps take 1e-9 down to rounding.
    for _ in range(2):
        dens = np.exp(-0.5 * z * z) / SQRT2PI
        step = (std_normal_cdf(z) - p) / dens
        z = np.where(dens > 0, z - step, z)
    return z


def std_normal_quantile(p):
    """Inverse of :func:`std_normal_cdf` on the open interval (0, 1).

    Raises
    ------
    InvalidProbabilityError
        If any ``p`` lies outside (0, 1) or is NaN.
    """
    arr, scalar = _prepare(p)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise InvalidProbabilityError(f"quantile needs 0 < p < 1, got {p!r}")

    upper = arr > 0.5
    # 1 - p is exact for p in [0.5, 1].
    lower_p = np.where(upper, 1.0 - arr, arr)
    z = _lower_quantile(np.atleast_1d(lower_p)).reshape(arr.shape)
    z = np.where(arr == 0.5, 0.0, np.where(upper, -z, z))
    return _wrap(z, scalar)
