"""Parameter records, reduced units, time grids and result containers.

Every quantity downstream is computed from a validated :class:`PairParams`
record.  Internally all quadrature runs in reduced variables

    xi  = x * a          (dimensionless wavenumber)
    tau = D * t / a**2   (dimensionless time)

which keeps integrands O(1) regardless of the unit system of the caller.
The reduction is an exact algebraic regrouping, not an approximation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

METHOD_TAGS = ("integral", "talbot", "stehfest", "asymptotic", "markovian")


def _require_finite(name, value):
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class PairParams:
    """Physical inputs of the pair problem.

    Attributes
    ----------
    D : float
        Relative diffusion constant (length**2/time), > 0.
    a : float
        Encounter distance (length), > 0.
    kappa_a : float
        Intrinsic association constant (length**2/time), >= 0.
    kappa : float
        Dissociation rate scale (1/time), > 0.
    sigma : float
        Memory exponent, 0 < sigma <= 1.  sigma = 1 is the memoryless
        (exponential residence time) limit.
    """

    D: float
    a: float
    kappa_a: float
    kappa: float
    sigma: float

    def __post_init__(self):
        for name in ("D", "a", "kappa_a", "kappa", "sigma"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.D <= 0:
            raise DomainError(f"D must be > 0, got {self.D}")
        if self.a <= 0:
            raise DomainError(f"a must be > 0, got {self.a}")
        if self.kappa_a < 0:
            raise DomainError(f"kappa_a must be >= 0, got {self.kappa_a}")
        if self.kappa <= 0:
            raise DomainError(f"kappa must be > 0, got {self.kappa}")
        if not 0.0 < self.sigma <= 1.0:
            raise DomainError(f"sigma must lie in (0, 1], got {self.sigma}")

    @property
    def h(self) -> float:
        """Reduced association strength kappa_a / (2 pi a D), units 1/length."""
        return self.kappa_a / (2.0 * math.pi * self.a * self.D)

    @property
    def kappa_d_sigma(self) -> float:
        """(kappa / D) ** sigma, units length**(-2 sigma)."""
        return (self.kappa / self.D) ** self.sigma


def make_params(D, a, kappa_a, kappa, sigma) -> PairParams:
    """Validate and build a :class:`PairParams` record."""
    return PairParams(D=D, a=a, kappa_a=kappa_a, kappa=kappa, sigma=sigma)


@dataclass(frozen=True)
class ReducedParams:
    """Dimensionless regrouping used internally by the quadrature.

    h_a = h * a and k_red = (kappa a**2 / D) ** sigma.  Together with the
    maps t -> tau = D t / a**2 and x -> xi = x a they reproduce the
    dimensional problem exactly.  ``to_unit_params`` gives the documented
    inverse map onto a record with D = a = 1.
    """

    h_a: float
    k_red: float
    sigma: float

    def to_unit_params(self) -> PairParams:
        """Equivalent problem in units where D = a = 1."""
        return PairParams(
            D=1.0,
            a=1.0,
            kappa_a=2.0 * math.pi * self.h_a,
            kappa=self.k_red ** (1.0 / self.sigma),
            sigma=self.sigma,
        )


def to_reduced(params: PairParams) -> ReducedParams:
    """Dimensionless groups of a validated parameter record."""
    return ReducedParams(
        h_a=params.h * params.a,
        k_red=(params.kappa * params.a ** 2 / params.D) ** params.sigma,
        sigma=params.sigma,
    )


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing grid of positive times."""

    times: tuple
    spacing: str = "log"

    def __post_init__(self):
        ts = tuple(float(t) for t in self.times)
        if len(ts) == 0:
            raise DomainError("time grid must contain at least one point")
        for t in ts:
            if not math.isfinite(t) or t <= 0:
                raise DomainError(f"grid times must be positive and finite, got {t}")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("grid times must be strictly increasing")
        object.__setattr__(self, "times", ts)

    @classmethod
    def logarithmic(cls, t_start: float, t_end: float, points_per_decade: int) -> "TimeGrid":
        """Log-spaced grid; n = round(ppd * decades) + 1 points."""
        t_start = _require_finite("t_start", t_start)
        t_end = _require_finite("t_end", t_end)
        if t_start <= 0 or t_end <= 0 or t_start >= t_end:
            raise DomainError("need 0 < t_start < t_end")
        if points_per_decade < 1:
            raise DomainError("points_per_decade must be >= 1")
        decades = math.log10(t_end / t_start)
        n = int(round(points_per_decade * decades)) + 1
        ratio = (t_end / t_start) ** (1.0 / (n - 1)) if n > 1 else 1.0
        ts = [t_start * ratio ** i for i in range(n)]
        ts[-1] = t_end
        return cls(times=tuple(ts), spacing=f"log:{points_per_decade}/decade")

    def __iter__(self):
        return iter(self.times)

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class SurvivalPoint:
    t: float
    S: float
    abs_err: float
    method: str


@dataclass(frozen=True)
class SurvivalCurve:
    """Computed unbound-probability values with per-point error estimates.

    Raw values are stored; every entry must satisfy
    -abs_err <= S <= 1 + abs_err whenever the error estimate is finite
    (asymptotic entries carry abs_err = inf since the expansion has no
    computable remainder bound).
    """

    entries: tuple
    params: PairParams = field(repr=False, default=None)

    def __post_init__(self):
        for e in self.entries:
            if e.method not in METHOD_TAGS:
                raise DomainError(f"unknown method tag {e.method!r}")
            if math.isfinite(e.abs_err):
                if e.S < -e.abs_err or e.S > 1.0 + e.abs_err:
                    raise DomainError(
                        f"S={e.S} at t={e.t} outside [-abs_err, 1+abs_err] "
                        f"(abs_err={e.abs_err})"
                    )

    def clipped(self):
        """Values clipped to [0, 1] for presentation; raw values stay in entries."""
        return [min(max(e.S, 0.0), 1.0) for e in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)
