"""Numerical inverse Laplace transform: fixed Talbot and Gaver-Stehfest.

Two architecturally independent routes.  The fixed Talbot contour samples
the transform at complex nodes (and therefore exercises the complex
special-function code); Gaver-Stehfest samples only on the positive real
axis.  Agreement between the two validates both the transform and the
complex arithmetic feeding it.

Talbot follows the Abate-Valko fixed parameterization r = 2M/(5t),
s_k = r theta_k (cot theta_k + i); in double precision its roundoff floor
grows like exp(2M/5)*eps, so error estimation compares the M-node result
with the M/2-node one (both inside the stable regime) rather than with a
2M evaluation, which at the default M = 48 would be pure roundoff noise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AccuracyError, DomainError


@dataclass(frozen=True)
class InversionSpec:
    """Knobs of the two inversion methods."""

    method: str = "talbot"
    talbot_m: int = 48
    stehfest_n: int = 16
    abs_tol: float = 1e-6

    def __post_init__(self):
        if self.method not in ("talbot", "stehfest"):
            raise DomainError(f"unknown inversion method {self.method!r}")
        if self.talbot_m < 8:
            raise DomainError("talbot_m must be >= 8")
        n = self.stehfest_n
        if n % 2 != 0 or not 4 <= n <= 20:
            raise DomainError("stehfest_n must be even and in [4, 20]")
        if self.abs_tol <= 0:
            raise DomainError("abs_tol must be positive")


def _check_time(t):
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise DomainError(f"t must be positive and finite, got {t!r}")
    return t


def _talbot_once(F, t: float, M: int) -> float:
    r = 2.0 * M / (5.0 * t)
    acc = 0.5 * math.exp(r * t) * complex(F(complex(r, 0.0))).real
    for k in range(1, M):
        theta = k * math.pi / M
        cot = 1.0 / math.tan(theta)
        sk = r * theta * complex(cot, 1.0)
        gamma_k = np.exp(t * sk) * complex(1.0, theta + (theta * cot - 1.0) * cot)
        acc += (gamma_k * complex(F(sk))).real
    return (r / M) * acc


def _talbot_pair(F, t: float, spec: InversionSpec):
    """(value, error estimate) from M and M/2 node counts."""
    t = _check_time(t)
    m = spec.talbot_m
    hi = _talbot_once(F, t, m)
    lo = _talbot_once(F, t, max(8, m // 2))
    return hi, abs(hi - lo)


def invert_talbot(F, t: float, spec: InversionSpec | None = None) -> float:
    """Invert a transform analytic off the negative real axis at time t.

    Parameters
    ----------
    F : callable
        Transform evaluator, complex -> complex.
    t : float
        Positive time.
    spec : InversionSpec, optional

    Raises
    ------
    AccuracyError
        If the node-count comparison disagrees by more than spec.abs_tol.
    """
    spec = spec or InversionSpec()
    val, err = _talbot_pair(F, t, spec)
    if not math.isfinite(val) or err > spec.abs_tol:
        raise AccuracyError(
            f"talbot node-count disagreement {err:.3g} exceeds {spec.abs_tol:g} at t={t}"
        )
    return val


def stehfest_weights(n: int) -> np.ndarray:
    """Salzer summation weights, computed exactly and cast to float."""
    if n % 2 != 0:
        raise DomainError("Stehfest term count must be even")
    half = n // 2
    V = []
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range((k + 1) // 2, min(k, half) + 1):
            acc += Fraction(
                j ** half * math.factorial(2 * j),
                math.factorial(half - j)
                * math.factorial(j)
                * math.factorial(j - 1)
                * math.factorial(k - j)
                * math.factorial(2 * j - k),
            )
        V.append(float((-1) ** (k + half) * acc))
    return np.array(V)


def _stehfest_once(F, t: float, n: int) -> float:
    V = stehfest_weights(n)
    ln2 = math.log(2.0)
    acc = 0.0
    for k in range(1, n + 1):
        acc += V[k - 1] * float(np.real(F(k * ln2 / t)))
    return acc * ln2 / t


def _stehfest_pair(F, t: float, spec: InversionSpec):
    """(value, error estimate) from n and n-2 term counts."""
    t = _check_time(t)
    n = spec.stehfest_n
    hi = _stehfest_once(F, t, n)
    lo = _stehfest_once(F, t, max(4, n - 2))
    return hi, abs(hi - lo)


def invert_stehfest(F, t: float, spec: InversionSpec | None = None) -> float:
    """Invert a transform sampled on the positive real axis at time t.

    Accuracy saturates around 1e-5 relative for smooth originals; useful
    as a real-axis-only cross-check of the Talbot route.
    """
    spec = spec or InversionSpec()
    val, err = _stehfest_pair(F, t, spec)
    if not math.isfinite(val) or err > max(spec.abs_tol, 1e-4):
        raise AccuracyError(
            f"stehfest term-count disagreement {err:.3g} at t={t}"
        )
    return val
