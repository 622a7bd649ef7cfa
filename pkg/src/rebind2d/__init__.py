"""Unbound probability of a reversibly binding pair diffusing in 2D.

An initially bound pair with heavy-tailed residence times (memory
exponent 0 < sigma <= 1) unbinds, diffuses and rebinds; this package
computes the probability S(t) that the pair is unbound at time t through
three mutually cross-validating routes: an exact real-axis integral
representation, numerical inversion of the Laplace transform (fixed
Talbot and Gaver-Stehfest), and a two-term long-time asymptote.

All public functions are pure; records are immutable and safe for
unrestricted concurrent use.  The residence-time sampler mutates only the
numpy Generator the caller passes in.
"""
from .asymptotic import (constant_c, s_tilde_small_s, survival_longtime,
                         survival_longtime_markov)
from .core import (PairParams, ReducedParams, SurvivalCurve, SurvivalPoint,
                   TimeGrid, make_params, to_reduced)
from .errors import (AccuracyError, BranchError, DomainError, Rebind2DError,
                     SingularityError)
from .invlap import InversionSpec, invert_stehfest, invert_talbot
from .laplace import (LaplaceEvaluation, j_tilde, p_ref_tilde,
                      p_ref_tilde_two_term, psi_tilde, s_tilde_2d,
                      s_tilde_general)
from .quadrature import QuadratureSpec, adaptive_gauss_kronrod
from .residence import (ResidenceLaw, residence_survival, sample_residence,
                        sample_residence_batch, survival_unbound_no_rebinding)
from .special import (EULER_GAMMA, bessel_i, bessel_j, bessel_k, bessel_y,
                      digamma, gamma_fn, mittag_leffler)
from .survival import (alpha_sigma, beta_sigma, omega, survival_markov,
                       survival_nonmarkov)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "BranchError", "DomainError", "Rebind2DError",
    "SingularityError",
    "PairParams", "ReducedParams", "SurvivalCurve", "SurvivalPoint",
    "TimeGrid", "make_params", "to_reduced",
    "EULER_GAMMA", "bessel_i", "bessel_j", "bessel_k", "bessel_y",
    "digamma", "gamma_fn", "mittag_leffler",
    "LaplaceEvaluation", "psi_tilde", "p_ref_tilde", "p_ref_tilde_two_term",
    "s_tilde_general", "s_tilde_2d", "j_tilde",
    "InversionSpec", "invert_talbot", "invert_stehfest",
    "QuadratureSpec", "adaptive_gauss_kronrod",
    "alpha_sigma", "beta_sigma", "omega",
    "survival_nonmarkov", "survival_markov",
    "constant_c", "survival_longtime", "survival_longtime_markov",
    "s_tilde_small_s",
    "ResidenceLaw", "residence_survival", "sample_residence",
    "sample_residence_batch", "survival_unbound_no_rebinding",
    "__version__",
]
