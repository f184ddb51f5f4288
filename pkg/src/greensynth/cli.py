"""Command-line benchmark driver.

Subcommands: ``bench run`` (config-driven convergence suite), ``bench
sommerfeld`` (spectral-identity check), ``bench selftest`` (fast invariant
sweep).  Exit codes: 0 success, 2 configuration error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import contours
from .bench import parse_config, run_suite
from .errors import ConfigError, GreensynthError
from .quadrature import GAUSS_LEGENDRE, GAUSS_HERMITE, QuadratureRule, nodes
from .sommerfeld import SommerfeldCase, expansion_identities_check, sommerfeld_identity_check
from .spectral import Medium, Observation, integrand_parts, physical_krho
from .synthesis import synthesize

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _cmd_run(args):
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        config = parse_config(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = args.out or config.outputs
    if out_dir is None:
        print("config error: no output directory (use --out or `outputs =`)",
              file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = run_suite(config, out_dir, emit_maps=args.maps or None)
    except GreensynthError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for p in report.csv_paths + report.map_paths:
        print(f"wrote {p}")
    for line in report.summary_lines:
        print(line)
    return 0


def _cmd_sommerfeld(args):
    case = SommerfeldCase.from_angle(theta=math.pi / 6, loss=args.loss,
                                     rho=args.rho, N=args.n)
    try:
        main = sommerfeld_identity_check(case)
        flip = sommerfeld_identity_check(case, flip=True)
    except GreensynthError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(f"pole           : {case.krho_pole:.12g}")
    print(f"lhs (physical) : {main.lhs:.12g}")
    print(f"rhs            : {main.rhs:.12g}")
    print(f"rel_err        : {main.rel_err:.3e}  ({main.n_evaluations} evaluations)")
    print(f"flipped path   : {flip.lhs:.12g}  (target {flip.rhs:.12g})")
    print(f"flip rel_err   : {flip.rel_err:.3e}")
    ok = main.rel_err <= 1e-6 and flip.rel_err <= 1e-5
    print("PASS" if ok else "FAIL")
    return 0 if ok else EXIT_NUMERICAL


def _check(name, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'}  {name}{'  ' + detail if detail else ''}")
    return bool(ok)


def _cmd_selftest(_args):
    ok = True
    rng = np.random.default_rng(20240901)

    # quadrature exactness
    for n in (2, 8, 32):
        x, w = nodes(QuadratureRule(GAUSS_LEGENDRE, n))
        worst = max(
            abs(np.sum(w * x ** k) - (2.0 / (k + 1) if k % 2 == 0 else 0.0))
            for k in range(2 * n)
        )
        ok &= _check(f"gauss-legendre exactness N={n}", worst < 1e-13,
                     f"max dev {worst:.2e}")
    x, w = nodes(QuadratureRule(GAUSS_HERMITE, 16))
    dev = abs(np.sum(w) - math.sqrt(math.pi))
    ok &= _check("gauss-hermite weight sum", dev < 1e-13, f"dev {dev:.2e}")

    # physical root quadrant
    med = Medium(2 * math.pi * (1 + 0.3j))
    kz = rng.uniform(-30, 30, 500)
    kr = physical_krho(kz, med)
    ok &= _check("physical root quadrant", bool(np.all(kr.real >= 0) and np.all(kr.imag >= 0)))

    # steepest-descent constant phase
    obs = Observation.from_polar(math.sqrt(2.0), math.pi / 6)
    spec = contours.ContourSpec(variant=contours.EXACT_SD_THETA)
    c = contours.build_contour(spec, QuadratureRule(GAUSS_LEGENDRE, 64), 64,
                               obs, Medium(2 * math.pi))
    live = c.phase_log.real > -700
    dev = np.max(np.abs(c.phase_log.imag[live] - (2 * math.pi * obs.r)))
    ok &= _check("constant phase on SD path", dev < 1e-10 * 2 * math.pi * obs.r,
                 f"max dev {dev:.2e}")

    # cylinder-function identities
    worst = max(expansion_identities_check(z)
                for z in (1.0, 2 + 1j, 0.3 + 2j, 5.0, 0.01))
    ok &= _check("cylinder expansion identities", worst < 1e-10,
                 f"max residual {worst:.2e}")

    # end-to-end synthesis against the closed form
    res = synthesize(spec, QuadratureRule(GAUSS_LEGENDRE, 200), obs, Medium(2 * math.pi))
    ok &= _check("steepest-descent synthesis E", res.E <= 1e-10, f"E = {res.E:.2e}")

    # saddle-point derivative
    h = 1e-6
    _, f_plus = integrand_parts(obs.theta0 + h, obs, med)
    _, f_minus = integrand_parts(obs.theta0 - h, obs, med)
    deriv = abs((f_plus - f_minus) / (2 * h))
    ok &= _check("stationary point at theta0", deriv < 1e-8 * abs(med.k0) * obs.r,
                 f"|f'| = {deriv:.2e}")

    return 0 if ok else EXIT_NUMERICAL


def build_parser():
    parser = argparse.ArgumentParser(prog="bench",
                                     description="2.5-D synthesis benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured convergence suite")
    p_run.add_argument("--config", required=True, help="config file path")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--maps", action="store_true",
                       help="also emit theta-plane and loci map files")
    p_run.set_defaults(func=_cmd_run)

    p_som = sub.add_parser("sommerfeld", help="verify the spectral identity")
    p_som.add_argument("--loss", type=float, default=0.05)
    p_som.add_argument("--rho", type=float, default=1.0)
    p_som.add_argument("--n", type=int, default=400)
    p_som.set_defaults(func=_cmd_sommerfeld)

    p_self = sub.add_parser("selftest", help="run the fast invariant suite")
    p_self.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
