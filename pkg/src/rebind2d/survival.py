"""Exact time-domain evaluation of the unbound probability S(t|*).

The probability that an initially bound pair is unbound at time t is

    S(t) = 1 + (2/pi) kappa_D^sigma [ (2h/(a pi)) cos(pi sigma) Q1
                                      + sin(pi sigma) Q2 ],

    Q1 =  Int_0^inf exp(-D t x^2) x^(2 sigma - 3) / (alpha^2 + beta^2) dx,
    Q2 = -Int_0^inf exp(-D t x^2) x^(2 sigma - 2) Omega(x)
                                      / (alpha^2 + beta^2) dx,

with alpha_sigma, beta_sigma and Omega assembled from Bessel J and Y of
orders 0 and 1 at argument x a.  At sigma = 1 the Q2 term carries a zero
coefficient and the expression collapses to the memoryless closed form
implemented independently by :func:`survival_markov`.

Numerically the integrals run in reduced variables (xi = x a,
tau = D t / a**2) and are split at xi = split_point: on the head the
substitution xi = xi0 * u**(1/(2 sigma)) absorbs the xi**(2 sigma - 1)
endpoint behavior exactly (only slowly varying log factors remain), and
the body is integrated segment-by-segment with the adaptive
Gauss-Kronrod engine up to xi_max = sqrt(W tau^-1), beyond which the
Gaussian factor bounds the discarded tail by exp(-W).

The denominator alpha^2 + beta^2 is free of oscillation (the Bessel
phases cancel in the sum of squares) and strictly positive for
sigma < 1; a guard raises SingularityError if it ever underflows, which
would signal a pole the contour derivation excludes.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

from .core import PairParams, ReducedParams, to_reduced
from .errors import AccuracyError, DomainError, SingularityError
from .quadrature import QuadratureSpec, adaptive_gauss_kronrod
from .special import EULER_GAMMA

_TWO_OVER_PI = 2.0 / math.pi
_SMALL_X = 1e-8
_DEN2_FLOOR = 1e-280


def _check_time(t):
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise DomainError(f"t must be positive and finite, got {t!r}")
    return t


def _trig(sigma: float):
    # literal zero at sigma = 1 so the Q2 branch is skipped outright
    if sigma == 1.0:
        return -1.0, 0.0
    return math.cos(math.pi * sigma), math.sin(math.pi * sigma)


def _bessel_combos(x: np.ndarray):
    """J0, Y0, x*J1, x*Y1 at reduced argument x, stable down to x -> 0."""
    x = np.asarray(x, dtype=float)
    J0 = np.empty_like(x)
    Y0 = np.empty_like(x)
    xJ1 = np.empty_like(x)
    xY1 = np.empty_like(x)
    small = x < _SMALL_X
    if np.any(~small):
        xs = x[~small]
        J0[~small] = _sp.j0(xs)
        Y0[~small] = _sp.y0(xs)
        xJ1[~small] = xs * _sp.j1(xs)
        xY1[~small] = xs * _sp.y1(xs)
    if np.any(small):
        # limiting forms; dropped terms are O(x^4 log x)
        xs = np.maximum(x[small], 1e-308)
        x2 = xs * xs
        L = np.log(0.5 * xs) + EULER_GAMMA
        J0[small] = 1.0 - 0.25 * x2
        Y0[small] = _TWO_OVER_PI * (L + 0.25 * x2 * (1.0 - L))
        xJ1[small] = 0.5 * x2
        xY1[small] = -_TWO_OVER_PI + (x2 / math.pi) * (L - 0.5)
    return J0, Y0, xJ1, xY1


def _scaled_parts(x, x2s, red: ReducedParams, cos_ps, sin_ps, need_omega):
    """den2 = (x alpha)^2 + (x beta)^2 and x*Omega on reduced nodes.

    x2s must equal x**(2 sigma); the head transform supplies it exactly.
    """
    J0, Y0, xJ1, xY1 = _bessel_combos(x)
    h = red.h_a
    k = red.k_red
    A = xJ1 + h * J0
    B = xY1 + h * Y0
    x_alpha = x2s * (-A * cos_ps - B * sin_ps) - k * xJ1
    x_beta = x2s * (A * sin_ps - B * cos_ps) - k * xY1
    den2 = x_alpha * x_alpha + x_beta * x_beta
    if np.any(den2 < _DEN2_FLOOR):
        raise SingularityError("alpha^2 + beta^2 underflow: unexpected pole")
    if not need_omega:
        return den2, None
    x_omega = xJ1 * xJ1 + xY1 * xY1 + h * (J0 * xJ1 + Y0 * xY1)
    return den2, x_omega


def _markov_parts(x, red: ReducedParams):
    """den2 for the memoryless assembly (x^2 - k) J1 + h x J0 and Y-twin."""
    J0, Y0, xJ1, xY1 = _bessel_combos(x)
    h = red.h_a
    k = red.k_red  # built with sigma = 1: kappa a^2 / D
    x2 = x * x
    x_alpha = (x2 - k) * xJ1 + h * x2 * J0
    x_beta = (x2 - k) * xY1 + h * x2 * Y0
    den2 = x_alpha * x_alpha + x_beta * x_beta
    if np.any(den2 < _DEN2_FLOOR):
        raise SingularityError("alpha^2 + beta^2 underflow: unexpected pole")
    return den2


def _head_edges():
    return np.array([0.0, 1e-10, 1e-6, 1e-3, 0.03, 0.2, 1.0])


def _body_edges(x0: float, xmax: float):
    """pi-spaced through the wiggly zone, geometric afterwards."""
    edges = [x0]
    x = x0
    stop_linear = min(xmax, x0 + 32.0 * math.pi)
    while x + math.pi < stop_linear:
        x += math.pi
        edges.append(x)
    while x < xmax:
        x = min(x * 1.6, xmax)
        if x - edges[-1] < 1e-12 * xmax:
            break
        edges.append(x)
    if edges[-1] != xmax:
        edges.append(xmax)
    return np.array(edges)


def _q_integral(tau, red, cos_ps, sin_ps, spec, with_omega, markov, abs_tol):
    """One of the two survival integrals over (0, xi_max].

    Returns (value, err); the sign convention is Int g >= 0 form, i.e. for
    the Omega-weighted integrand this is -Q2.
    """
    sigma = 1.0 if markov else red.sigma
    xmax = math.sqrt(spec.gauss_cutoff / tau)
    x0 = min(spec.split_point, xmax)
    two_sigma = 2.0 * sigma
    cst = x0 ** two_sigma / two_sigma
    inv_two_sigma = 1.0 / two_sigma

    def head(u):
        x = x0 * np.power(np.maximum(u, 1e-315), inv_two_sigma)
        x2s = (x0 ** two_sigma) * u  # exact image of x**(2 sigma)
        if markov:
            den2 = _markov_parts(x, red)
            x_omega = None
        else:
            den2, x_omega = _scaled_parts(x, x2s, red, cos_ps, sin_ps, with_omega)
        g = cst * np.exp(-tau * x * x) / den2
        if with_omega:
            g = g * x_omega
        return g

    def body(x):
        x2s = np.power(x, two_sigma)
        if markov:
            den2 = _markov_parts(x, red)
            x_omega = None
        else:
            den2, x_omega = _scaled_parts(x, x2s, red, cos_ps, sin_ps, with_omega)
        g = np.exp(-tau * x * x) * np.power(x, two_sigma - 1.0) / den2
        if with_omega:
            g = g * x_omega
        return g

    budget = spec.max_subdivisions
    val, err = adaptive_gauss_kronrod(
        head, _head_edges(), abs_tol=abs_tol / 2.0, rel_tol=spec.rel_tol,
        max_segments=budget,
    )
    if xmax > x0:
        bval, berr = adaptive_gauss_kronrod(
            body, _body_edges(x0, xmax), abs_tol=abs_tol / 2.0,
            rel_tol=spec.rel_tol, max_segments=budget,
        )
        val += bval
        err += berr
    return val, err


def alpha_sigma(x, params: PairParams):
    """Cosine-weighted denominator component of the survival integrand."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise DomainError("x must be positive and finite")
    c, s = _trig(params.sigma)
    xa = x * params.a
    J0, J1 = _sp.j0(xa), _sp.j1(xa)
    Y0, Y1 = _sp.y0(xa), _sp.y1(xa)
    A = x * J1 + params.h * J0
    B = x * Y1 + params.h * Y0
    out = x ** (2.0 * params.sigma - 1.0) * (-A * c - B * s) \
        - params.kappa_d_sigma * J1
    return float(out) if np.isscalar(out) or out.ndim == 0 else out


def beta_sigma(x, params: PairParams):
    """Sine-weighted denominator component of the survival integrand."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise DomainError("x must be positive and finite")
    c, s = _trig(params.sigma)
    xa = x * params.a
    J0, J1 = _sp.j0(xa), _sp.j1(xa)
    Y0, Y1 = _sp.y0(xa), _sp.y1(xa)
    A = x * J1 + params.h * J0
    B = x * Y1 + params.h * Y0
    out = x ** (2.0 * params.sigma - 1.0) * (A * s - B * c) \
        - params.kappa_d_sigma * Y1
    return float(out) if np.isscalar(out) or out.ndim == 0 else out


def omega(x, params: PairParams):
    """Bessel-envelope weight of the Q2 integrand:
    x (J1^2 + Y1^2) + h (J0 J1 + Y0 Y1), arguments x a."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise DomainError("x must be positive and finite")
    xa = x * params.a
    J0, J1 = _sp.j0(xa), _sp.j1(xa)
    Y0, Y1 = _sp.y0(xa), _sp.y1(xa)
    out = x * (J1 * J1 + Y1 * Y1) + params.h * (J0 * J1 + Y0 * Y1)
    return float(out) if np.isscalar(out) or out.ndim == 0 else out


def survival_nonmarkov(t, params: PairParams, spec: QuadratureSpec | None = None,
                       *, force_quadrature: bool = False):
    """Unbound probability at time t for memory exponent 0 < sigma <= 1.

    Returns (S, abs_err).  With kappa_a = 0 the problem decouples from
    diffusion and the exact residence-time survival is used instead of
    quadrature; pass force_quadrature=True to integrate anyway (the
    rebinding-free integrand is well defined for sigma < 1 and serves as
    an independent check of the integral representation).

    Raises AccuracyError when the reported error cannot be brought below
    10x the requested tolerance, SingularityError on denominator
    underflow.
    """
    spec = spec or QuadratureSpec()
    t = _check_time(t)
    if params.kappa_a == 0.0 and not force_quadrature:
        from .residence import ResidenceLaw, survival_unbound_no_rebinding

        law = ResidenceLaw(kappa=params.kappa, sigma=params.sigma)
        return survival_unbound_no_rebinding(t, law), 1e-12
    red = to_reduced(params)
    if params.kappa_a == 0.0 and params.sigma == 1.0:
        raise DomainError(
            "quadrature route is degenerate at kappa_a = 0, sigma = 1; "
            "use the default analytic path"
        )
    tau = params.D * t / params.a ** 2
    cos_ps, sin_ps = _trig(params.sigma)
    k = red.k_red
    pref1 = _TWO_OVER_PI * k * (2.0 * red.h_a / math.pi) * cos_ps
    pref2 = _TWO_OVER_PI * k * sin_ps

    contrib = 0.0
    err = 0.0
    if pref1 != 0.0:
        tol1 = spec.abs_tol / (2.0 * abs(pref1))
        q1, e1 = _q_integral(tau, red, cos_ps, sin_ps, spec,
                             with_omega=False, markov=False, abs_tol=tol1)
        contrib += pref1 * q1
        err += abs(pref1) * e1
    if pref2 != 0.0:
        tol2 = spec.abs_tol / (2.0 * abs(pref2))
        i2, e2 = _q_integral(tau, red, cos_ps, sin_ps, spec,
                             with_omega=True, markov=False, abs_tol=tol2)
        contrib += pref2 * (-i2)  # Q2 = -Int
        err += abs(pref2) * e2
    err += math.exp(-spec.gauss_cutoff) * (1.0 + abs(contrib))
    S = 1.0 + contrib
    if err > 10.0 * max(spec.abs_tol, spec.rel_tol * abs(contrib)):
        raise AccuracyError(f"survival error estimate {err:.3g} too large at t={t}")
    return S, err


def survival_markov(t, params: PairParams, spec: QuadratureSpec | None = None):
    """Unbound probability in the memoryless limit (exponential residence
    time with rate kappa); the sigma field of params is ignored.

    Returns (S, abs_err).  kappa_a = 0 degenerates to 1 - exp(-kappa t)
    and is handled exactly.
    """
    spec = spec or QuadratureSpec()
    t = _check_time(t)
    if params.kappa_a == 0.0:
        return -math.expm1(-params.kappa * t), 0.0
    # reduced groups with sigma treated as 1
    red = ReducedParams(
        h_a=params.h * params.a,
        k_red=params.kappa * params.a ** 2 / params.D,
        sigma=1.0,
    )
    tau = params.D * t / params.a ** 2
    pref = 4.0 * red.h_a * red.k_red / math.pi ** 2
    tol = spec.abs_tol / (2.0 * pref)
    q1, e1 = _q_integral(tau, red, -1.0, 0.0, spec,
                         with_omega=False, markov=True, abs_tol=tol)
    contrib = -pref * q1
    err = pref * e1 + math.exp(-spec.gauss_cutoff) * (1.0 + abs(contrib))
    S = 1.0 + contrib
    if err > 10.0 * max(spec.abs_tol, spec.rel_tol * abs(contrib)):
        raise AccuracyError(f"survival error estimate {err:.3g} too large at t={t}")
    return S, err
