"""Command-line front end: survival curves, route comparisons and
residence-time sampler validation, all as deterministic CSV/reports.

Exit codes: 0 success, 2 accuracy/tolerance violation, 3 domain or usage
error.  Identical configuration and seed give byte-identical output.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .asymptotic import survival_longtime, survival_longtime_markov
from .core import (PairParams, SurvivalCurve, SurvivalPoint, TimeGrid,
                   make_params)
from .errors import AccuracyError, DomainError, Rebind2DError, SingularityError
from .invlap import InversionSpec, _stehfest_pair, _talbot_pair
from .laplace import s_tilde_2d
from .quadrature import QuadratureSpec
from .residence import (ResidenceLaw, sample_residence_batch,
                        survival_unbound_no_rebinding)
from .survival import survival_markov, survival_nonmarkov

log = logging.getLogger("rebind2d")

_METHODS = ("integral", "talbot", "stehfest", "asymptotic", "markovian")

# cross-route tolerances enforced by the compare command
_TOL_INTEGRAL_TALBOT = 1e-6
_TOL_STEHFEST = 1e-4
_TOL_MARKOV = 1e-8
_TOL_ANALYTIC = 1e-6

_KS_BOUND_FACTOR = 1.95 * 1.5  # times 1/sqrt(N)


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs of one CLI run."""

    D: float = 1.0
    a: float = 1.0
    ka: float = 1.0
    kappa: float = 1.0
    sigma: float = 0.5
    t_start: float = 0.01
    t_end: float = 1e6
    ppd: int = 6
    method: str = "integral"
    out: str | None = None
    samples: int = 100000
    seed: int = 1
    reduced: bool = False
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9

    def __post_init__(self):
        if not (self.t_start > 0 and self.t_end > 0 and self.t_start < self.t_end):
            raise DomainError("need 0 < t_start < t_end")
        if self.ppd < 1:
            raise DomainError("ppd must be >= 1")
        if self.method not in _METHODS:
            raise DomainError(f"method must be one of {_METHODS}")

    def params(self) -> PairParams:
        return make_params(self.D, self.a, self.ka, self.kappa, self.sigma)

    def grid(self) -> TimeGrid:
        return TimeGrid.logarithmic(self.t_start, self.t_end, self.ppd)

    def qspec(self) -> QuadratureSpec:
        return QuadratureSpec(abs_tol=self.abs_tol, rel_tol=self.rel_tol)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _point(t, params, method, qspec, ispec) -> SurvivalPoint:
    if method == "integral":
        s, e = survival_nonmarkov(t, params, qspec)
    elif method == "markovian":
        s, e = survival_markov(t, params, qspec)
    elif method == "talbot":
        s, e = _talbot_pair(lambda z: s_tilde_2d(z, params), t, ispec)
    elif method == "stehfest":
        s, e = _stehfest_pair(lambda z: s_tilde_2d(z, params).real, t, ispec)
    elif method == "asymptotic":
        if params.sigma == 1.0:
            s = survival_longtime_markov(t, params)
        else:
            s = survival_longtime(t, params)
        e = math.inf  # no computable remainder bound
    else:  # pragma: no cover
        raise DomainError(f"unknown method {method!r}")
    return SurvivalPoint(t=t, S=s, abs_err=e, method=method)


def compute_curve(config: RunConfig, method: str | None = None) -> SurvivalCurve:
    """Evaluate the configured grid with one method."""
    method = method or config.method
    params = config.params()
    qspec = config.qspec()
    ispec = InversionSpec()
    pts = tuple(_point(t, params, method, qspec, ispec) for t in config.grid())
    _warn_nonmonotone(pts)
    return SurvivalCurve(entries=pts, params=params)


def _warn_nonmonotone(pts):
    for p, q in zip(pts, pts[1:]):
        if not (math.isfinite(p.abs_err) and math.isfinite(q.abs_err)):
            continue
        if q.S < p.S - (p.abs_err + q.abs_err):
            log.warning(
                "non-monotone step: S(%.6g)=%.12g > S(%.6g)=%.12g beyond error bounds",
                p.t, p.S, q.t, q.S,
            )


def _write_rows(path, header, rows):
    text = "\n".join([header] + rows) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_survival(config: RunConfig) -> int:
    """Write one survival curve as CSV."""
    curve = compute_curve(config)
    tau_of = lambda t: config.D * t / config.a ** 2
    if config.reduced:
        header = "t,tau,S,abs_err_est,method"
        rows = [
            ",".join([_fmt(p.t), _fmt(tau_of(p.t)), _fmt(p.S), _fmt(p.abs_err), p.method])
            for p in curve
        ]
    else:
        header = "t,S,abs_err_est,method"
        rows = [
            ",".join([_fmt(p.t), _fmt(p.S), _fmt(p.abs_err), p.method])
            for p in curve
        ]
    _write_rows(config.out, header, rows)
    return 0


def cmd_compare(config: RunConfig) -> int:
    """Run the independent routes on one grid and report discrepancies."""
    params = config.params()
    qspec = config.qspec()
    ispec = InversionSpec()
    times = list(config.grid())

    columns = {}
    if params.kappa_a == 0.0 and params.sigma < 1.0:
        # exercise the genuine integral route; the public path would
        # short-circuit to the same analytic law being compared against
        columns["integral"] = [
            survival_nonmarkov(t, params, qspec, force_quadrature=True)[0]
            for t in times
        ]
    else:
        columns["integral"] = [survival_nonmarkov(t, params, qspec)[0] for t in times]
    columns["talbot"] = [
        _talbot_pair(lambda z: s_tilde_2d(z, params), t, ispec)[0] for t in times
    ]
    columns["stehfest"] = [
        _stehfest_pair(lambda z: s_tilde_2d(z, params).real, t, ispec)[0]
        for t in times
    ]
    if params.sigma == 1.0:
        columns["markovian"] = [survival_markov(t, params, qspec)[0] for t in times]
    if params.kappa_a == 0.0:
        law = ResidenceLaw(kappa=params.kappa, sigma=params.sigma)
        columns["analytic"] = [survival_unbound_no_rebinding(t, law) for t in times]

    checks = [("integral", "talbot", _TOL_INTEGRAL_TALBOT),
              ("integral", "stehfest", _TOL_STEHFEST),
              ("talbot", "stehfest", _TOL_STEHFEST)]
    if "markovian" in columns:
        checks.append(("integral", "markovian", _TOL_MARKOV))
    if "analytic" in columns:
        checks.append(("integral", "analytic", _TOL_ANALYTIC))

    lines = [f"compare: {len(times)} times in [{times[0]:g}, {times[-1]:g}], "
             f"sigma={params.sigma:g}, kappa_a={params.kappa_a:g}"]
    ok = True
    for a, b, tol in checks:
        diff = max(abs(x - y) for x, y in zip(columns[a], columns[b]))
        passed = diff <= tol
        ok = ok and passed
        lines.append(f"max |{a} - {b}| = {diff:.3e}  (tol {tol:.0e})  "
                     f"{'ok' if passed else 'FAIL'}")
    report = "\n".join(lines) + "\n"
    sys.stdout.write(report)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(report)
    return 0 if ok else 2


def cmd_sample_psi(config: RunConfig) -> int:
    """Draw residence times, compare empirical against analytic survival."""
    if config.samples < 1000:
        raise DomainError("need at least 1000 samples")
    law = ResidenceLaw(kappa=config.kappa, sigma=config.sigma)
    rng = np.random.default_rng(config.seed)
    draws = np.sort(sample_residence_batch(law, config.samples, rng))
    n = len(draws)

    # KS distance between the empirical CDF and 1 - E_sigma(-(kappa t)^sigma)
    cdf = np.array([survival_unbound_no_rebinding(t, law) for t in draws])
    upper = np.abs(np.arange(1, n + 1) / n - cdf)
    lower = np.abs(cdf - np.arange(0, n) / n)
    ks = float(max(upper.max(), lower.max()))
    bound = _KS_BOUND_FACTOR / math.sqrt(n)

    grid = TimeGrid.logarithmic(config.t_start, config.t_end, config.ppd)
    rows = []
    for t in grid:
        emp = float(np.searchsorted(draws, t, side="right")) / n
        ana = 1.0 - survival_unbound_no_rebinding(t, law)  # residence survival
        rows.append(",".join([_fmt(t), _fmt(1.0 - emp), _fmt(ana)]))
    _write_rows(config.out, "t,surv_empirical,surv_analytic", rows)
    sys.stdout.write(f"KS = {ks:.6f} (bound {bound:.6f}, N = {n})\n")
    return 0 if ks <= bound else 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors map to exit code 3
        self.print_usage(sys.stderr)
        raise DomainError(message)


def _add_common(p):
    p.add_argument("--D", type=float, help="diffusion constant")
    p.add_argument("--a", type=float, help="encounter distance")
    p.add_argument("--ka", type=float, help="association constant kappa_a")
    p.add_argument("--kappa", type=float, help="dissociation rate scale")
    p.add_argument("--sigma", type=float, help="memory exponent in (0, 1]")
    p.add_argument("--t-start", dest="t_start", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--ppd", type=int, help="grid points per decade")
    p.add_argument("--out", type=str, help="output file (default stdout)")
    p.add_argument("--abs-tol", dest="abs_tol", type=float)
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--config", type=str, help="key = value file; flags override")


def _build_parser():
    parser = _Parser(prog="rebind2d",
                     description="Unbound probability of a reversibly binding "
                                 "pair in 2D with heavy-tailed residence times")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("survival", parents=[], help="tabulate S(t) as CSV")
    _add_common(ps)
    ps.add_argument("--method", choices=_METHODS)
    ps.add_argument("--reduced", action="store_true",
                    help="emit tau = D t / a^2 alongside t")

    pc = sub.add_parser("compare", help="cross-validate the routes")
    _add_common(pc)

    pp = sub.add_parser("sample-psi", help="validate the residence-time sampler")
    _add_common(pp)
    pp.add_argument("--samples", type=int)
    pp.add_argument("--seed", type=int)
    return parser


def _read_config_file(path) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


_CONFIG_TYPES = {
    "D": float, "a": float, "ka": float, "kappa": float, "sigma": float,
    "t_start": float, "t_end": float, "ppd": int, "method": str,
    "out": str, "samples": int, "seed": int, "reduced": bool,
    "abs_tol": float, "rel_tol": float,
}


def _coerce(key, raw):
    typ = _CONFIG_TYPES.get(key)
    if typ is None:
        raise DomainError(f"unknown config key {key!r}")
    if typ is bool:
        low = str(raw).strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise DomainError(f"config key {key!r}: expected a boolean, got {raw!r}")
    return typ(raw)


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        file_vals = _read_config_file(args.config)
        cfg = replace(cfg, **{k: _coerce(k, v) for k, v in file_vals.items()})
    overrides = {}
    for key in _CONFIG_TYPES:
        val = getattr(args, key, None)
        if val is not None and not (key == "reduced" and val is False):
            overrides[key] = val
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
        if args.command == "survival":
            return cmd_survival(config)
        if args.command == "compare":
            return cmd_compare(config)
        if args.command == "sample-psi":
            return cmd_sample_psi(config)
        raise DomainError(f"unknown command {args.command!r}")
    except (DomainError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (AccuracyError, SingularityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Rebind2DError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
