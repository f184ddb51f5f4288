"""Acceptance criteria, one test per criterion, tolerances pinned.

Each test prints a single ``[criterion N] PASS/FAIL`` line (visible with
``pytest -s``).  Sweeps feeding the exponential-vs-algebraic classifier
use dense uniform N windows inside the regime under test, since the
residual-ratio rule needs several samples of the decay it classifies;
plateau tails are trimmed with the published helper.
"""

import math
import time

import numpy as np

from greensynth import (
    ANGULAR,
    EXACT_SD_S,
    EXACT_SD_T,
    EXACT_SD_THETA,
    GAUSS_HERMITE,
    GAUSS_LEGENDRE,
    LINEAR,
    QUADRATIC_SD,
    RIEMANN_MIDPOINT,
    ContourSpec,
    Medium,
    Observation,
    QuadratureRule,
    SommerfeldCase,
    bessel_j0,
    build_contour,
    expansion_identities_check,
    fit_convergence,
    greens3d_exact,
    hankel0,
    physical_krho,
    relative_error,
    sommerfeld_identity_check,
    synthesize,
    trim_plateau,
)
from greensynth.quadrature import nodes as rule_nodes
from greensynth.spectral import phase_exponent

from oracles import as_complex, h0_first, j0_series

K0 = 2 * math.pi
MED = Medium(K0)
CASE_A = Observation.from_polar(math.sqrt(2.0), math.pi / 6)     # Fig 7(a)
CASE_PATH = Observation.from_polar(math.sqrt(2.0), math.pi / 2)  # Fig 8(a/b)
CASE_NEAR = Observation.from_polar(0.1 * math.sqrt(2.0), math.pi / 6)
CASE_FAR = Observation.from_polar(10 * math.sqrt(2.0), math.pi / 6)

# k0'' = 0.05 in absolute units; the knob itself is a fraction of k0'
LOSS_005 = 0.05 / K0


def _report(criterion, ok, detail):
    print(f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def _sweep(spec, rule_kind, ns, obs, med=MED):
    return [(n, synthesize(spec, QuadratureRule(rule_kind, n), obs, med).E)
            for n in ns]


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    res = synthesize(ContourSpec(variant=EXACT_SD_THETA),
                     QuadratureRule(GAUSS_LEGENDRE, 200), CASE_A, MED)
    elapsed = time.perf_counter() - t0
    ok = res.E <= 1e-10 and elapsed < 1.0
    assert _report(1, ok, f"E = {res.E:.2e} (<= 1e-10), {elapsed:.3f} s (< 1 s)")


def test_criterion_2_convergence_orders():
    t0 = time.perf_counter()
    ns = [64, 128, 256, 512, 1024, 2048, 4096]
    bands = {
        (LINEAR, RIEMANN_MIDPOINT): (-1.0, 0.3),
        (LINEAR, GAUSS_LEGENDRE): (-2.0, 0.4),
        (ANGULAR, RIEMANN_MIDPOINT): (-2.0, 0.4),
        (ANGULAR, GAUSS_LEGENDRE): (-4.0, 0.6),
    }
    detail = []
    ok = True
    for (variant, rule_kind), (target, tol) in bands.items():
        fit = fit_convergence(_sweep(ContourSpec(variant=variant), rule_kind,
                                     ns, CASE_A))
        detail.append(f"{variant}+{rule_kind}: {fit.algebraic_slope:+.2f}"
                      f" (want {target}+-{tol})")
        ok &= abs(fit.algebraic_slope - target) <= tol
    # steepest-descent flags: dense window over the convergent regime,
    # plateau trimmed (both paths floor out long before N = 64)
    for variant in (EXACT_SD_THETA, QUADRATIC_SD):
        recs = _sweep(ContourSpec(variant=variant), GAUSS_LEGENDRE,
                      [4, 6, 8, 10, 12, 14, 16, 20, 24, 32, 48, 64], CASE_A)
        fit = fit_convergence(trim_plateau(recs))
        detail.append(f"{variant}: exponential={fit.is_exponential}")
        ok &= fit.is_exponential
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30.0
    assert _report(2, ok, "; ".join(detail) + f"; {elapsed:.1f} s (< 30 s)")


def test_criterion_3_loss_regularizer():
    spec = ContourSpec(variant=LINEAR, imposed_loss=LOSS_005)
    med_eff = MED.with_imposed_loss(LOSS_005)
    assert abs(med_eff.k0.imag - 0.05) < 1e-12  # k0'' = 0.05 as stated
    # convergence of the lossy integral itself turns exponential (dense
    # windows inside each rule's pre-plateau regime)
    fit_r = fit_convergence(_sweep(spec, RIEMANN_MIDPOINT,
                                   list(range(128, 513, 32)), CASE_A))
    fit_g = fit_convergence(_sweep(spec, GAUSS_LEGENDRE,
                                   list(range(24, 129, 8)), CASE_A))
    # the converged value, measured against the unmodified medium, sits
    # strictly above the lossless steepest-descent result
    g_unmod = greens3d_exact(CASE_A, MED)
    lossy = synthesize(spec, QuadratureRule(GAUSS_LEGENDRE, 4096), CASE_A, MED)
    plateau = relative_error(lossy.I, CASE_A, MED, g_unmod)
    sd = synthesize(ContourSpec(variant=EXACT_SD_THETA),
                    QuadratureRule(GAUSS_LEGENDRE, 200), CASE_A, MED)
    ok = fit_r.is_exponential and fit_g.is_exponential and plateau > 10 * sd.E
    assert _report(
        3, ok,
        f"exponential: riemann={fit_r.is_exponential} g-l={fit_g.is_exponential}; "
        f"plateau {plateau:.2e} vs lossless SD {sd.E:.2e}")


def test_criterion_4_pathological_angle():
    # quadratic path runs a wider truncation (its pi/2 default leaves a
    # ~7e-4 remainder at theta0 = pi/2 that would mask the delta gain)
    window = list(range(32, 129, 8))
    variants = {
        EXACT_SD_THETA: ContourSpec(variant=EXACT_SD_THETA),
        QUADRATIC_SD: ContourSpec(variant=QUADRATIC_SD, epsilon=0.75 * math.pi),
    }
    ok = True
    detail = []
    for variant, base in variants.items():
        stalled = fit_convergence(_sweep(base, GAUSS_LEGENDRE, window, CASE_PATH))
        shifted_spec = ContourSpec(variant=variant, delta_shift=0.1,
                                   epsilon=base.epsilon)
        shifted = fit_convergence(_sweep(shifted_spec, GAUSS_LEGENDRE, window,
                                         CASE_PATH))
        e256 = synthesize(shifted_spec, QuadratureRule(GAUSS_LEGENDRE, 256),
                          CASE_PATH, MED).E
        detail.append(f"{variant}: delta0 exp={stalled.is_exponential}, "
                      f"delta0.1 exp={shifted.is_exponential}, E(256)={e256:.1e}")
        ok &= (not stalled.is_exponential) and shifted.is_exponential
        ok &= e256 <= 1e-6
    assert _report(4, ok, "; ".join(detail))


def test_criterion_5_near_field_saturation():
    # angular truncation at 1.5 rad, the value consistent with the
    # near-field saturation experiment (the 1.5 pi default places the
    # truncation error below the double-precision floor)
    rule = QuadratureRule(GAUSS_LEGENDRE, 2048)
    rule_half = QuadratureRule(GAUSS_LEGENDRE, 1024)
    plateaus = {}
    ok = True
    for ls in (1.0, 2.0):
        lin = synthesize(ContourSpec(variant=LINEAR, limit_scale=ls),
                         rule, CASE_NEAR, MED)
        lin_chk = synthesize(ContourSpec(variant=LINEAR, limit_scale=ls),
                             rule_half, CASE_NEAR, MED)
        ang = synthesize(ContourSpec(variant=ANGULAR, theta_imag_max=1.5,
                                     limit_scale=ls), rule, CASE_NEAR, MED)
        ang_chk = synthesize(ContourSpec(variant=ANGULAR, theta_imag_max=1.5,
                                         limit_scale=ls), rule_half, CASE_NEAR, MED)
        # saturated: doubling N moves E by < 10%
        ok &= abs(lin.E - lin_chk.E) <= 0.1 * lin.E
        ok &= abs(ang.E - ang_chk.E) <= 0.1 * ang.E
        plateaus[ls] = (lin.E, ang.E)
    sd = synthesize(ContourSpec(variant=EXACT_SD_THETA),
                    QuadratureRule(GAUSS_LEGENDRE, 512), CASE_NEAR, MED)
    angular_gain = plateaus[1.0][1] / plateaus[2.0][1]
    linear_gain = plateaus[1.0][0] / plateaus[2.0][0]
    ok &= sd.E <= 1e-8
    ok &= angular_gain >= 100.0          # >= 2 orders of magnitude
    ok &= 1.0 < linear_gain < angular_gain  # a smaller factor
    assert _report(
        5, ok,
        f"SD E(512) = {sd.E:.1e}; angular plateau gain x{angular_gain:.0f}; "
        f"linear gain x{linear_gain:.1f}")


def test_criterion_6_far_field():
    # As stated: quadratic path + Gauss-Legendre at the default parameters must
    # reach E <= 1e-12 within N <= 16.  The resolution analysis (see the
    # decisions ledger) puts the best reachable accuracy for ANY
    # truncation parameter at ~1e-6 for a 16-point Gauss-Legendre rule at
    # k0 r = 20 pi sqrt(2); the criterion is left to fail honestly.
    best = math.inf
    for n in range(1, 17):
        res = synthesize(ContourSpec(variant=QUADRATIC_SD),
                         QuadratureRule(GAUSS_LEGENDRE, n), CASE_FAR, MED)
        best = min(best, res.E)
    ok = best <= 1e-12
    _report(6, ok, f"best E over N<=16: {best:.2e} (target 1e-12)")
    assert ok, (
        f"quadratic-SD + Gauss-Legendre at r = 10 sqrt(2), theta0 = pi/6 "
        f"reaches only E = {best:.2e} within N <= 16; the Gaussian factor "
        f"exp(-k0 r t^2/2) needs ~28 Gauss-Legendre points at any "
        f"truncation (see decisions ledger)")


def test_criterion_7_formulation_equivalence():
    worst = 0.0
    for k0 in (K0 + 0j, K0 * (1 + 0.5j)):
        med = Medium(k0)
        for r in (0.1 * math.sqrt(2.0), math.sqrt(2.0), 10 * math.sqrt(2.0)):
            for theta0 in (0.0, math.pi / 6, math.pi / 4):
                obs = Observation.from_polar(r, theta0)
                vals = {}
                for variant in (EXACT_SD_THETA, EXACT_SD_S, EXACT_SD_T):
                    kind = GAUSS_HERMITE if variant == EXACT_SD_S else GAUSS_LEGENDRE
                    vals[variant] = synthesize(ContourSpec(variant=variant),
                                               QuadratureRule(kind, 200),
                                               obs, med).I
                scale = abs(vals[EXACT_SD_THETA])
                for a in vals:
                    for b in vals:
                        worst = max(worst, abs(vals[a] - vals[b]) / scale)
    ok = worst <= 1e-8
    assert _report(7, ok, f"worst pairwise relative gap {worst:.2e} (<= 1e-8)")


def test_criterion_8_sommerfeld_identity():
    case = SommerfeldCase.from_angle(theta=math.pi / 6, loss=0.05, rho=1.0, N=400)
    main = sommerfeld_identity_check(case)
    flip = sommerfeld_identity_check(case, flip=True)
    flip_gap = abs(flip.lhs - (-main.rhs)) / abs(main.rhs)
    ok = main.rel_err <= 1e-6 and flip_gap <= 1e-5
    assert _report(8, ok, f"rel_err {main.rel_err:.2e} (<= 1e-6); "
                          f"flip gap {flip_gap:.2e} (<= 1e-5)")


def test_criterion_9_property_suites():
    ok = True
    detail = []

    # quadrature exactness degrees
    worst = 0.0
    for n in (2, 8, 24, 64):
        x, w = rule_nodes(QuadratureRule(GAUSS_LEGENDRE, n))
        for k in range(2 * n):
            exact = 2.0 / (k + 1) if k % 2 == 0 else 0.0
            worst = max(worst, abs(float(np.sum(w * x ** k)) - exact))
        xh, wh = rule_nodes(QuadratureRule(GAUSS_HERMITE, n))
        for k in range(n):
            mom = math.gamma(k + 0.5)
            worst = max(worst, abs(float(np.sum(wh * xh ** (2 * k))) - mom) / mom)
    ok &= worst <= 1e-12
    detail.append(f"quadrature {worst:.1e}")

    # constant-phase invariant on live steepest-descent nodes
    worst = 0.0
    for med in (MED, Medium(K0 * (1 + 0.5j))):
        for obs in (CASE_A, CASE_NEAR, CASE_FAR):
            c = build_contour(ContourSpec(variant=EXACT_SD_THETA),
                              QuadratureRule(GAUSS_LEGENDRE, 128), 128, obs, med)
            f = phase_exponent(c.theta, obs, med)
            f0 = phase_exponent(obs.theta0, obs, med)
            live = f.real - f0.real > -700.0
            dev = np.max(np.abs(f.imag[live] - f0.imag)) / (abs(med.k0) * obs.r)
            worst = max(worst, float(dev))
    ok &= worst <= 1e-10
    detail.append(f"constant-phase {worst:.1e}")

    # Jacobian finite differences (center of the exact theta-plane path)
    spec = ContourSpec(variant=EXACT_SD_THETA)
    c = build_contour(spec, QuadratureRule(GAUSS_LEGENDRE, 48), 48, CASE_A, MED)
    x, w = rule_nodes(QuadratureRule(GAUSS_LEGENDRE, 48))
    half = math.pi / 2
    h = 1e-6
    worst = 0.0
    for i in range(8, 40):
        def theta_of(xv):
            tp = half * xv
            return (CASE_A.theta0 + tp
                    + 1j * math.log((1 - math.sin(tp)) / math.cos(tp)))
        fd = (theta_of(x[i] + h) - theta_of(x[i] - h)) / (2 * h)
        worst = max(worst, abs(c.weight[i] / w[i] - fd) / abs(fd))
    ok &= worst <= 1e-6
    detail.append(f"jacobian-fd {worst:.1e}")

    # physical-root quadrant invariant
    rng = np.random.default_rng(11)
    quad_ok = True
    for k0 in (K0, K0 * (1 + 0.02j), K0 * (1 + 0.7j)):
        kr = physical_krho(rng.uniform(-40.0, 40.0, 3000), Medium(k0))
        quad_ok &= bool(np.all(kr.real >= 0) and np.all(kr.imag >= 0))
    ok &= quad_ok
    detail.append(f"quadrant {'ok' if quad_ok else 'violated'}")

    # cylinder-function identities
    worst = max(expansion_identities_check(z)
                for z in (1.0, 2 + 1j, 0.3 + 2j, 5.0, 0.5 - 0.2j, 2 - 1j))
    ok &= worst <= 1e-10
    detail.append(f"identities {worst:.1e}")

    # special-function oracle grid
    worst = 0.0
    for z in (1.0, 1j, 0.5 + 0.5j, 5.0, 12.2, 8 - 3j, 30 + 5j):
        ref = as_complex(h0_first(z))
        worst = max(worst, abs(hankel0(1, z) - ref) / abs(ref))
        refj = as_complex(j0_series(z))
        worst = max(worst, abs(bessel_j0(z) - refj) / max(abs(refj), 1e-30))
    ok &= worst <= 1e-12
    detail.append(f"oracle-grid {worst:.1e}")

    assert _report(9, ok, "; ".join(detail))
