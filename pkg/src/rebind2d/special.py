"""Special functions needed by the transform and quadrature formulas.

Real-argument Bessel J0, J1, Y0, Y1, modified Bessel I and K of orders 0
and 1 for real and complex argument, the gamma and digamma functions, and
the Mittag-Leffler function E_sigma on the negative real axis.

Complex arguments follow the principal branch throughout: arg z in
(-pi, pi], z**s = |z|**s * exp(i s arg z).  The standard library `complex`
type is used directly; no wrapper class.

J/Y/I/K/gamma/digamma are evaluated through the Cephes and AMOS routines
shipped with scipy, which implement the usual series / asymptotic /
continued-fraction splits to full double precision.  The test suite checks
them against independent series, integral-representation and identity
oracles at the tolerances this package requires.  The Mittag-Leffler
function is implemented here: Taylor series where cancellation allows,
otherwise the completely monotone spectral representation

    E_s(-y) = sin(pi s)/(pi s) * Int_0^1 exp(-(y v/(1-v))**(1/s))
              / (v**2 + 2 v (1-v) cos(pi s) + (1-v)**2) dv .
"""
from __future__ import annotations

import cmath
import math

import numpy as np
from scipy import integrate as _integrate
from scipy import special as _sp

from .errors import AccuracyError, DomainError

EULER_GAMMA = 0.5772156649015329

# complex-K domain: the inversion contour keeps |arg q| < pi/2; allow a
# margin so rotated-argument evaluations at exactly pi/2 stay legal.
_ARG_K_MAX = math.pi / 2 + 0.35


def _check_positive_real(x, name="x"):
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return x


def _check_order(order):
    if order not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {order!r}")
    return order


def bessel_j(order: int, x: float) -> float:
    """Bessel function of the first kind, order 0 or 1, x > 0."""
    _check_order(order)
    x = _check_positive_real(x)
    return float(_sp.j0(x) if order == 0 else _sp.j1(x))


def bessel_y(order: int, x: float) -> float:
    """Bessel function of the second kind, order 0 or 1, x > 0.

    Diverges as x -> 0 (Y0 ~ (2/pi) ln x, Y1 ~ -2/(pi x)); accurate down
    to x = 1e-8 and far below.
    """
    _check_order(order)
    x = _check_positive_real(x)
    return float(_sp.y0(x) if order == 0 else _sp.y1(x))


def _check_complex_sector(z, name="z"):
    z = complex(z)
    if z == 0:
        raise DomainError(f"{name} must be nonzero")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return z


def bessel_i(order: int, z: complex) -> complex:
    """Modified Bessel function of the first kind, order 0 or 1.

    Real positive arguments take the real (Cephes) path and return a value
    with exactly zero imaginary part.
    """
    _check_order(order)
    z = _check_complex_sector(z)
    if z.imag == 0.0 and z.real > 0.0:
        val = _sp.i0(z.real) if order == 0 else _sp.i1(z.real)
        return complex(float(val), 0.0)
    out = complex(_sp.iv(order, z))
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise AccuracyError(f"I_{order}({z!r}) did not converge")
    return out


def bessel_k(order: int, z: complex) -> complex:
    """Modified Bessel function of the second kind, order 0 or 1.

    Valid on |arg z| <= pi/2 + margin, the sector reached by the
    inversion contours used in this package.
    """
    _check_order(order)
    z = _check_complex_sector(z)
    if abs(cmath.phase(z)) > _ARG_K_MAX:
        raise DomainError(f"arg z = {cmath.phase(z):.3f} outside the supported sector")
    if z.imag == 0.0 and z.real > 0.0:
        val = _sp.k0(z.real) if order == 0 else _sp.k1(z.real)
        return complex(float(val), 0.0)
    out = complex(_sp.kv(order, z))
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise AccuracyError(f"K_{order}({z!r}) did not converge")
    return out


def _k0_k1_ratio(z: complex) -> complex:
    """K0(z)/K1(z) via exponentially scaled evaluations (no underflow)."""
    if isinstance(z, complex) and z.imag != 0.0:
        return complex(_sp.kve(0, z) / _sp.kve(1, z))
    x = float(np.real(z))
    if x <= 0.0:
        raise DomainError("real argument of K0/K1 must be positive")
    return complex(float(_sp.kve(0, x) / _sp.kve(1, x)), 0.0)


def gamma_fn(x: float) -> float:
    """Gamma function for real x away from the poles at 0, -1, -2, ..."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"gamma pole at x = {x}")
    return float(_sp.gamma(x))


def digamma(x: float) -> float:
    """Digamma (logarithmic derivative of gamma) for x > 0."""
    x = _check_positive_real(x)
    return float(_sp.psi(x))


# Mittag-Leffler ---------------------------------------------------------

# Taylor summation is abandoned once cancellation would eat more than
# ~9 of the 16 available digits.
_ML_CANCEL_LIMIT = 1e7
_ML_SERIES_CUTOFF = 5.0


def _ml_series(sigma: float, y: float):
    """Taylor sum of E_sigma(-y); returns (value, max_term) or None if it
    fails to converge within the term budget."""
    total = 0.0
    max_term = 0.0
    log_y = math.log(y) if y > 0 else -math.inf
    for k in range(0, 400):
        if k == 0:
            term = 1.0
        else:
            term = math.copysign(
                math.exp(k * log_y - _sp.gammaln(sigma * k + 1.0)), (-1.0) ** k
            )
        total += term
        max_term = max(max_term, abs(term))
        if k > 3 and abs(term) < 1e-18 * max(1.0, abs(total)):
            return total, max_term
    return None


def _ml_spectral(sigma: float, y: float) -> float:
    """Spectral-integral evaluation of E_sigma(-y), 0 < sigma < 1, y > 0."""
    c = math.cos(math.pi * sigma)
    inv_sigma = 1.0 / sigma

    def integrand(v):
        if v >= 1.0:
            return 0.0
        expo = (y * v / (1.0 - v)) ** inv_sigma
        if expo > 700.0:
            return 0.0
        den = v * v + 2.0 * v * (1.0 - v) * c + (1.0 - v) ** 2
        return math.exp(-expo) / den

    # the integrand develops a narrow peak at v = 1/2 as sigma -> 1
    val, err = _integrate.quad(
        integrand, 0.0, 1.0, points=[0.5], epsabs=1e-15, epsrel=1e-12, limit=200
    )
    out = math.sin(math.pi * sigma) / (math.pi * sigma) * val
    if not math.isfinite(out) or err > 1e-8 * max(abs(val), 1e-12):
        raise AccuracyError(f"Mittag-Leffler integral failed at sigma={sigma}, y={y}")
    return out


def mittag_leffler(sigma: float, x: float) -> float:
    """Mittag-Leffler function E_sigma(x) for x <= 0, 0 < sigma <= 1.

    Returns a value in (0, 1]; completely monotone in |x|.  Relative
    accuracy is better than 1e-8 across the supported domain.
    """
    sigma = float(sigma)
    x = float(x)
    if not 0.0 < sigma <= 1.0:
        raise DomainError(f"sigma must lie in (0, 1], got {sigma}")
    if not math.isfinite(x) or x > 0.0:
        raise DomainError(f"x must be <= 0 and finite, got {x!r}")
    y = -x
    if y == 0.0:
        return 1.0
    if sigma == 1.0:
        return math.exp(-y)
    if y <= _ML_SERIES_CUTOFF:
        got = _ml_series(sigma, y)
        if got is not None:
            value, max_term = got
            if max_term <= _ML_CANCEL_LIMIT * max(abs(value), 1e-300):
                return value
    return _ml_spectral(sigma, y)
