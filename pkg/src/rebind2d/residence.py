"""Residence-time law of the bound state: survival, the no-rebinding
unbound fraction, and exact random sampling.

The bound interval has survival function E_sigma(-(kappa t)^sigma), the
Mittag-Leffler relaxation law whose Laplace transform is
[1 - psi~(s)]/s with psi~(s) = 1/(1 + (s/kappa)^sigma).  For sigma < 1
it is heavy tailed (~ t^-sigma) and has no finite mean.

Sampling uses the exact Pareto-mixture representation

    T = -(1/kappa) ln U [ sin(sigma pi)/tan(sigma pi V) - cos(sigma pi) ]^(1/sigma)

with U, V independent uniforms on (0, 1); rejection-free.  The random
stream is caller-supplied (numpy Generator), one stream per thread.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import mittag_leffler


@dataclass(frozen=True)
class ResidenceLaw:
    """Rate scale kappa > 0 and memory exponent 0 < sigma <= 1."""

    kappa: float
    sigma: float

    def __post_init__(self):
        if not (isinstance(self.kappa, (int, float)) and math.isfinite(self.kappa)
                and self.kappa > 0):
            raise DomainError(f"kappa must be positive and finite, got {self.kappa!r}")
        if not (isinstance(self.sigma, (int, float)) and 0.0 < self.sigma <= 1.0):
            raise DomainError(f"sigma must lie in (0, 1], got {self.sigma!r}")
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "sigma", float(self.sigma))


def residence_survival(t, law: ResidenceLaw) -> float:
    """Probability the bound interval exceeds t: E_sigma(-(kappa t)^sigma)."""
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"t must be >= 0 and finite, got {t!r}")
    if t == 0.0:
        return 1.0
    return mittag_leffler(law.sigma, -((law.kappa * t) ** law.sigma))


def survival_unbound_no_rebinding(t, law: ResidenceLaw) -> float:
    """Unbound probability when rebinding is switched off (kappa_a = 0):
    simply 1 minus the residence survival."""
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"t must be >= 0 and finite, got {t!r}")
    if t == 0.0:
        return 0.0
    if law.sigma == 1.0:
        return -math.expm1(-law.kappa * t)
    return 1.0 - residence_survival(t, law)


def sample_residence_batch(law: ResidenceLaw, n: int, rng: np.random.Generator):
    """n independent residence times as an ndarray."""
    if n < 1:
        raise DomainError("n must be >= 1")
    u = 1.0 - rng.random(n)  # (0, 1]
    expo = -np.log(u)
    if law.sigma == 1.0:
        t = expo / law.kappa
    else:
        sp = math.sin(math.pi * law.sigma)
        cp = math.cos(math.pi * law.sigma)
        # V strictly inside (0,1): the bracket diverges at the endpoints
        v = np.clip(rng.random(n), 1e-16, 1.0 - 1e-16)
        bracket = sp / np.tan(math.pi * law.sigma * v) - cp
        t = expo * bracket ** (1.0 / law.sigma) / law.kappa
    return np.maximum(t, 5e-324)


def sample_residence(law: ResidenceLaw, rng: np.random.Generator) -> float:
    """One residence time drawn from the law."""
    return float(sample_residence_batch(law, 1, rng)[0])
