"""Laplace-domain building blocks of the unbinding problem.

All functions take the transform variable s as a real or complex number
off the branch cut (the negative real axis, where s**sigma and
q = sqrt(s/D) are discontinuous) and return ``complex``.  For real s > 0
every value is real with an exactly zero imaginary part.

The unbound fraction transform is assembled in two interchangeable ways:
``s_tilde_general`` composes the residence-time transform with the
reflecting-boundary return density, while ``s_tilde_2d`` is the closed 2D
form; both agree to machine precision and the tests hold them against
each other.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import PairParams
from .errors import BranchError, SingularityError
from .special import _k0_k1_ratio, bessel_k

_DENOM_FLOOR = 1e-300


def _as_off_cut(s, allow_zero=False) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise BranchError(f"s must be finite, got {s!r}")
    if s.imag == 0.0 and s.real < 0.0:
        raise BranchError(f"s = {s!r} lies on the branch cut")
    if s == 0 and not allow_zero:
        raise BranchError("s = 0 is the branch point")
    return s


def psi_tilde(s, params: PairParams) -> complex:
    """Laplace transform of the residence-time density: 1/(1 + (s/kappa)**sigma).

    Normalized (value 1 at s = 0); reduces to kappa/(kappa + s) for
    sigma = 1.
    """
    s = _as_off_cut(s, allow_zero=True)
    if s == 0:
        return complex(1.0, 0.0)
    if s.imag == 0.0:
        return complex(1.0 / (1.0 + (s.real / params.kappa) ** params.sigma), 0.0)
    return 1.0 / (1.0 + (s / params.kappa) ** params.sigma)


def p_ref_tilde(s, params: PairParams) -> complex:
    """Return density at the encounter distance for reflecting (nonreactive)
    relative diffusion, in the Laplace domain.

    Evaluated as K0(qa) / (2 pi D qa K1(qa)) with q = sqrt(s/D); the
    scaled-Bessel ratio keeps the expression stable for large |qa|.
    """
    s = _as_off_cut(s)
    q = cmath.sqrt(s / params.D)
    za = q * params.a
    ratio = _k0_k1_ratio(za if za.imag != 0.0 else za.real)
    val = ratio / (2.0 * math.pi * params.D * za)
    if s.imag == 0.0:
        return complex(val.real, 0.0)
    return val


def p_ref_tilde_two_term(s, params: PairParams) -> complex:
    """Same quantity via the two-term I/K form; kept as a cross-check."""
    s = _as_off_cut(s)
    from .special import bessel_i  # local import keeps module load light

    q = cmath.sqrt(s / params.D)
    za = q * params.a
    i0, i1 = bessel_i(0, za), bessel_i(1, za)
    k0, k1 = bessel_k(0, za), bessel_k(1, za)
    val = (i0 * k0 + k0 * k0 * i1 / k1) / (2.0 * math.pi * params.D)
    if s.imag == 0.0:
        return complex(val.real, 0.0)
    return val


def s_tilde_general(s, psi_value, params: PairParams) -> complex:
    """Transform of the unbound probability from an arbitrary residence-time
    transform value: s S~ = psi~ / (1 + kappa_a (1 - psi~) p_ref~).

    Valid in any dimension; here composed with the 2D return density.
    """
    s = _as_off_cut(s)
    psi_value = complex(psi_value)
    den = 1.0 + params.kappa_a * (1.0 - psi_value) * p_ref_tilde(s, params)
    if abs(den) < _DENOM_FLOOR:
        raise SingularityError(f"transform denominator underflow at s = {s!r}")
    val = psi_value / (s * den)
    if s.imag == 0.0 and psi_value.imag == 0.0:
        return complex(val.real, 0.0)
    return val


def s_tilde_2d(s, params: PairParams) -> complex:
    """Closed 2D form of the unbound-probability transform.

    S~(s) = (1/s) kappa**sigma q K1(qa)
            / [ q K1(qa) (s**sigma + kappa**sigma) + h s**sigma K0(qa) ]

    computed with the K0/K1 ratio factored out for stability.
    """
    s = _as_off_cut(s)
    sigma = params.sigma
    ksig = params.kappa ** sigma
    q = cmath.sqrt(s / params.D)
    za = q * params.a
    ratio = _k0_k1_ratio(za if za.imag != 0.0 else za.real)
    if s.imag == 0.0:
        ssig = complex(s.real ** sigma, 0.0)
    else:
        ssig = s ** sigma
    den = (ssig + ksig) + params.h * params.a * ssig * ratio / za
    if abs(den) < _DENOM_FLOOR:
        raise SingularityError(f"transform denominator underflow at s = {s!r}")
    val = ksig / (s * den)
    if s.imag == 0.0:
        return complex(val.real, 0.0)
    return val


def j_tilde(s, p_boundary, params: PairParams) -> complex:
    """Laplace transform of the dissociation flux at the encounter distance:
    J~ = psi~ - kappa_a (1 - psi~) p_boundary.

    With the self-consistent boundary density p_boundary this equals
    s S~(s).
    """
    s = _as_off_cut(s, allow_zero=True)
    psi = psi_tilde(s, params)
    val = psi - params.kappa_a * (1.0 - psi) * complex(p_boundary)
    if s.imag == 0.0 and complex(p_boundary).imag == 0.0:
        return complex(val.real, 0.0)
    return val


@dataclass(frozen=True)
class LaplaceEvaluation:
    """One tagged transform evaluation, validated on construction."""

    s: complex
    value: complex
    formula: str

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise SingularityError(f"non-finite transform value at s = {self.s!r}")
        s = complex(self.s)
        if s.imag == 0.0 and s.real > 0.0 and abs(v.imag) > 1e-14:
            raise SingularityError(
                f"real s gave imaginary part {v.imag:g} in {self.formula}"
            )
