import cmath
import math

import numpy as np
import pytest

from greensynth import (
    ANGULAR,
    EXACT_SD_S,
    EXACT_SD_T,
    EXACT_SD_THETA,
    GAUSS_HERMITE,
    GAUSS_LEGENDRE,
    LINEAR,
    ContourSpec,
    Medium,
    Observation,
    QuadratureRule,
    SingularityError,
    fit_convergence,
    greens25,
    greens3d_exact,
    relative_error,
    synthesize,
    trim_plateau,
)

K0 = 2 * math.pi
MED = Medium(K0)

# e^{i 2 pi sqrt(2)} / (4 pi sqrt(2)), frozen from the 60-digit oracle
G_EXACT_SQRT2 = complex(-0.048291627171734557, 0.028882619928414458)
# H0^(1)(2 pi), frozen from the series oracle
H1_AT_2PI = complex(0.22027690853993446, -0.22910851002471906)


def test_greens3d_values():
    obs = Observation.from_polar(1.0, 0.3)
    val = greens3d_exact(obs, MED)
    assert abs(val - 1.0 / (4 * math.pi)) < 1e-15
    obs = Observation.from_polar(math.sqrt(2.0), math.pi / 6)
    assert abs(greens3d_exact(obs, MED) - G_EXACT_SQRT2) < 1e-15
    # lossy attenuation: |g| = e^{-k0'' r} / (4 pi r)
    lossy = Medium(K0 * (1 + 0.5j))
    val = greens3d_exact(Observation.from_polar(1.0, 0.1), lossy)
    assert abs(abs(val) - math.exp(-math.pi) / (4 * math.pi)) < 1e-15


def test_greens25_reductions():
    # kz = 0 is the conventional 2-D field
    val = greens25((1.0, 0.0), (0.0, 0.0, 0.0), 0.0, MED)
    want = 0.25j * H1_AT_2PI
    assert abs(val - want) < 1e-14
    # z' = 0 removes the axial phase regardless of kz
    a = greens25((1.0, 0.0), (0.0, 0.0, 0.0), 1.3, MED)
    b = greens25((1.0, 0.0), (0.0, 0.0, 0.0), -1.3, MED)
    assert abs(a - b) < 1e-14
    with pytest.raises(SingularityError):
        greens25((1.0, 2.0), (1.0, 2.0, 0.5), 0.0, MED)


def test_relative_error_definition():
    obs = Observation.from_polar(math.sqrt(2.0), math.pi / 6)
    g = greens3d_exact(obs, MED)
    # E is literal relative error for any medium
    assert relative_error(g, obs, MED) == 0.0
    assert abs(relative_error(1.1 * g, obs, MED) - 0.1) < 1e-12
    lossy = Medium(K0 * (1 + 0.5j))
    gl = greens3d_exact(obs, lossy)
    assert abs(relative_error(1.25 * gl, obs, lossy) - 0.25) < 1e-12


def test_synthesize_result_invariant():
    obs = Observation.from_polar(math.sqrt(2.0), math.pi / 6)
    spec = ContourSpec(variant=EXACT_SD_THETA, imposed_loss=0.01)
    res = synthesize(spec, QuadratureRule(GAUSS_LEGENDRE, 64), obs, MED)
    med_eff = MED.with_imposed_loss(0.01)
    recomputed = 4 * math.pi * obs.r * abs(res.g_exact - res.I) \
        / abs(cmath.exp(1j * med_eff.k0 * obs.r))
    assert abs(recomputed - res.E) <= 1e-15 * max(1.0, res.E)
    assert res.g_exact == greens3d_exact(obs, med_eff)


def test_exact_sd_converges_to_oracle():
    obs = Observation.from_polar(math.sqrt(2.0), math.pi / 6)
    res = synthesize(ContourSpec(variant=EXACT_SD_THETA),
                     QuadratureRule(GAUSS_LEGENDRE, 100), obs, MED)
    assert res.E <= 1e-10


def test_mode_integrand_consistency():
    # the synthesis integrand at a real kz node is the 2.5-D mode up to
    # the axial phase and the 1/(2 pi) synthesis measure
    obs = Observation.from_polar(1.3, 0.4)
    for kz in (0.0, 0.5 * K0, 1.7 * K0):
        from greensynth import physical_krho
        from greensynth.special_functions import hankel0 as h0
        krho = physical_krho(kz, MED)
        integrand = (1j / (8 * math.pi)) * h0(1, krho * obs.rho) \
            * cmath.exp(1j * kz * obs.z)
        mode = greens25((obs.rho, 0.0), (0.0, 0.0, 0.0), kz, MED)
        want = mode * cmath.exp(1j * kz * obs.z) / (2 * math.pi)
        assert abs(integrand - want) <= 1e-14 * abs(want)


def test_oracle_equivalence_grid():
    # full-spectrum variants at N = 200 stay within 1e-8 of the closed
    # form over lossless and lossy cases (pathological angle excluded)
    for k0 in (K0 + 0j, K0 * (1 + 0.5j)):
        med = Medium(k0)
        for r in (0.1 * math.sqrt(2.0), math.sqrt(2.0), 10 * math.sqrt(2.0)):
            for theta0 in (0.0, math.pi / 6, math.pi / 4):
                obs = Observation.from_polar(r, theta0)
                for variant in (EXACT_SD_THETA, EXACT_SD_S, EXACT_SD_T):
                    kind = GAUSS_HERMITE if variant == EXACT_SD_S else GAUSS_LEGENDRE
                    res = synthesize(ContourSpec(variant=variant),
                                     QuadratureRule(kind, 200), obs, med)
                    assert res.E <= 1e-8, (variant, k0, r, theta0, res.E)


def test_formulation_equivalence_spot():
    obs = Observation.from_polar(math.sqrt(2.0), math.pi / 4)
    vals = {}
    for variant in (EXACT_SD_THETA, EXACT_SD_S, EXACT_SD_T):
        kind = GAUSS_HERMITE if variant == EXACT_SD_S else GAUSS_LEGENDRE
        vals[variant] = synthesize(ContourSpec(variant=variant),
                                   QuadratureRule(kind, 200), obs, MED).I
    ref = abs(vals[EXACT_SD_THETA])
    for a in vals:
        for b in vals:
            assert abs(vals[a] - vals[b]) <= 1e-8 * ref


def test_reciprocity_in_z():
    spec = ContourSpec(variant=EXACT_SD_THETA)
    for variant in (EXACT_SD_THETA, ANGULAR, LINEAR):
        spec = ContourSpec(variant=variant)
        up = synthesize(spec, QuadratureRule(GAUSS_LEGENDRE, 96),
                        Observation(rho=1.1, z=0.7), MED)
        dn = synthesize(spec, QuadratureRule(GAUSS_LEGENDRE, 96),
                        Observation(rho=1.1, z=-0.7), MED)
        assert abs(up.I - dn.I) <= 1e-12 * abs(up.I)


def test_truncation_saturation_near_field():
    # r = 0.1 sqrt(2): truncated paths plateau; doubling the limits lowers
    # the floor (angular truncation at 1.5 rad, the figure-consistent value)
    obs = Observation.from_polar(0.1 * math.sqrt(2.0), math.pi / 6)
    rule = QuadratureRule(GAUSS_LEGENDRE, 2048)
    plateaus = {}
    for ls in (1.0, 2.0):
        lin = synthesize(ContourSpec(variant=LINEAR, limit_scale=ls), rule, obs, MED)
        ang = synthesize(ContourSpec(variant=ANGULAR, theta_imag_max=1.5,
                                     limit_scale=ls), rule, obs, MED)
        # already saturated: doubling N moves nothing
        lin2 = synthesize(ContourSpec(variant=LINEAR, limit_scale=ls),
                          QuadratureRule(GAUSS_LEGENDRE, 1024), obs, MED)
        assert abs(lin.E - lin2.E) <= 0.05 * lin.E
        plateaus[ls] = (lin.E, ang.E)
    assert plateaus[2.0][0] < plateaus[1.0][0]
    assert plateaus[2.0][1] < plateaus[1.0][1]


def test_synthesize_rejects_on_axis():
    with pytest.raises(SingularityError):
        synthesize(ContourSpec(variant=EXACT_SD_THETA),
                   QuadratureRule(GAUSS_LEGENDRE, 16),
                   Observation(rho=0.0, z=1.0), MED)


def test_fit_convergence_synthetic():
    n = np.array([16, 32, 64, 128, 256, 512])
    fit = fit_convergence(list(zip(n, 3.0 / n)))
    assert abs(fit.algebraic_slope + 1.0) <= 0.01
    assert not fit.is_exponential
    fit = fit_convergence(list(zip(n, 5.0 / n ** 4)))
    assert abs(fit.algebraic_slope + 4.0) <= 0.01
    assert not fit.is_exponential
    n_small = np.array([4, 8, 12, 16, 20, 24])
    fit = fit_convergence(list(zip(n_small, 0.5 * 2.0 ** -n_small)))
    assert fit.is_exponential
    # degenerate: everything at the clamp floor
    fit = fit_convergence([(4, 1e-16), (8, 1e-16), (16, 1e-16), (32, 1e-16)])
    assert fit.at_floor and fit.is_exponential and math.isnan(fit.algebraic_slope)


def test_fit_convergence_validation():
    with pytest.raises(ValueError):
        fit_convergence([(4, 1.0), (8, 0.5), (16, 0.2)])
    with pytest.raises(ValueError):
        fit_convergence([(4, 1.0), (8, 0.5), (8, 0.2), (16, 0.1)])


def test_trim_plateau():
    recs = [(4, 1.0), (8, 1e-3), (16, 1e-6), (32, 1.1e-9), (64, 1e-9),
            (128, 1.2e-9), (256, 0.9e-9)]
    kept = trim_plateau(recs)
    assert [n for n, _ in kept] == [4, 8, 16, 32]
    # still-descending sequences come back unchanged
    recs = [(4, 1.0), (8, 0.25), (16, 0.0625), (32, 0.015625)]
    assert trim_plateau(recs) == recs


def test_growth_flag_propagates():
    obs = Observation.from_polar(math.sqrt(2.0), math.pi / 2)
    res = synthesize(ContourSpec(variant="quadratic_sd", delta_shift=0.1),
                     QuadratureRule(GAUSS_LEGENDRE, 32), obs, MED)
    assert res.growth_flagged
