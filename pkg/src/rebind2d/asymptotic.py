"""Small-s expansion of the transform and the long-time decay laws.

For 0 < sigma < 1 the approach to complete dissociation is

    1 - S(t) = (kappa_a / kappa^sigma) (1/(4 pi D)) t^-sigma ln t / Gamma(1-sigma)
               - C t^-sigma / Gamma(1-sigma) + ...

with the constant

    C = (kappa_a / kappa^sigma) (1/(2 pi D))
        [ digamma(1-sigma)/2 + ln( (1/2) e^gamma_E a / sqrt(D) ) ]
        - 1 / kappa^sigma .

ln t is taken with t in the caller's units and C is built from the same
D and a, so the combination t^-sigma [A ln t - C] is invariant under unit
rescaling (a change of time unit shifts ln t by a constant that is
absorbed into C).  Worked example: with D = a = kappa = kappa_a = 1 and
sigma = 1/2, C = (1/(2 pi)) [digamma(1/2)/2 + gamma_E - ln 2] - 1.

At sigma = 1 the prefactor 1/Gamma(1-sigma) vanishes and the separate
memoryless law 1 - S = kappa_a / (4 pi D kappa t) applies.
"""
from __future__ import annotations

import math

from .core import PairParams
from .errors import DomainError
from .special import EULER_GAMMA, digamma, gamma_fn


def _check_time(t):
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise DomainError(f"t must be positive and finite, got {t!r}")
    return t


def constant_c(params: PairParams) -> float:
    """Constant term of the long-time law; requires 0 < sigma < 1."""
    if params.sigma >= 1.0:
        raise DomainError("constant_c is undefined at sigma = 1 (digamma pole)")
    sigma = params.sigma
    ksig = params.kappa ** sigma
    log_term = math.log(0.5 * math.exp(EULER_GAMMA) * params.a / math.sqrt(params.D))
    return (params.kappa_a / ksig) / (2.0 * math.pi * params.D) \
        * (0.5 * digamma(1.0 - sigma) + log_term) - 1.0 / ksig


def survival_longtime(t, params: PairParams) -> float:
    """Two-term long-time asymptote of S(t) for 0 < sigma < 1.

    Meaningful only once t^-sigma ln t corrections are small; the caller
    owns the validity window.
    """
    if params.sigma >= 1.0:
        raise DomainError("survival_longtime requires sigma < 1; "
                          "use survival_longtime_markov")
    t = _check_time(t)
    sigma = params.sigma
    g = gamma_fn(1.0 - sigma)
    amp = t ** (-sigma) / g
    lead = (params.kappa_a / params.kappa ** sigma) / (4.0 * math.pi * params.D)
    return 1.0 - lead * amp * math.log(t) + constant_c(params) * amp


def survival_longtime_markov(t, params: PairParams) -> float:
    """One-term memoryless long-time law 1 - kappa_a/(4 pi D kappa t).

    Degenerates to S = 1 at kappa_a = 0 (outside the law's derivation,
    where the decay is exponential instead).
    """
    t = _check_time(t)
    return 1.0 - params.kappa_a / (params.kappa * 4.0 * math.pi * params.D * t)


def s_tilde_small_s(s, params: PairParams) -> float:
    """Truncated small-s expansion of the unbound-probability transform:

        S~(s) = 1/s + (h a / kappa^sigma) s^(sigma-1) ln((1/2) e^gamma qa)
                - s^(sigma-1) / kappa^sigma

    for real s with s << D/a^2 and s << kappa; the caller owns validity.
    """
    s = float(s)
    if not math.isfinite(s) or s <= 0:
        raise DomainError(f"s must be positive and finite, got {s!r}")
    sigma = params.sigma
    ksig = params.kappa ** sigma
    qa = math.sqrt(s / params.D) * params.a
    log_term = math.log(0.5 * math.exp(EULER_GAMMA) * qa)
    spow = s ** (sigma - 1.0)
    return 1.0 / s + (params.h * params.a / ksig) * spow * log_term - spow / ksig
