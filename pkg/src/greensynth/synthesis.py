"""Assembly of the cylindrical-mode synthesis and its error metric.

``synthesize`` integrates the sampled contour and compares against the
closed-form point-source field.  The relative error is

    E = 4 pi r |g_exact - I| / |e^{i k0 r}|

which reduces to |g_exact - I| / |g_exact| for every medium, matches the
printed benchmark normalization at r = 1, and is literal relative error.
``fit_convergence`` classifies an E(N) sweep as algebraic (log-log
slope) or exponential (semilog fit wins and slopes down).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contours import LINEAR, ContourSpec, SampledContour, build_contour
from .errors import SingularityError
from .quadrature import QuadratureRule
from .special_functions import hankel0, hankel0_scaled
from .spectral import (
    SYNTHESIS_PREFACTOR,
    Medium,
    Observation,
    physical_krho,
)

#: Double-precision error floor used for plotting and fitting.
ERROR_FLOOR = 1e-15

#: exp() underflows double precision below this exponent.
_EXP_UNDERFLOW = -745.0


def greens3d_exact(obs: Observation, medium: Medium):
    """Closed-form 3-D point-source field e^{i k0 r} / (4 pi r)."""
    r = obs.r
    if r == 0:
        raise SingularityError("3-D Green's function singular at r = 0")
    return np.exp(1j * medium.k0 * r) / (4.0 * math.pi * r)


def greens25(obs_rho, source, kz, medium: Medium):
    """One axial-wavenumber mode of the point-source field.

    ``obs_rho`` is the 2-D observation point (x, y); ``source`` the 3-D
    source (x', y', z').  Returns i/4 H0^(1)(krho |rho - rho'|) e^{-i kz z'}
    with krho on the physical root.
    """
    dx = obs_rho[0] - source[0]
    dy = obs_rho[1] - source[1]
    dist = math.hypot(dx, dy)
    if dist == 0:
        raise SingularityError("2.5-D mode singular at coincident transverse points")
    krho = physical_krho(kz, medium)
    return 0.25j * hankel0(1, krho * dist) * np.exp(-1j * kz * source[2])


def relative_error(I, obs: Observation, medium: Medium, g_exact=None):
    """E = 4 pi r |g_exact - I| / |e^{i k0 r}|."""
    if g_exact is None:
        g_exact = greens3d_exact(obs, medium)
    scale = math.exp(-medium.k0.imag * obs.r)
    return 4.0 * math.pi * obs.r * abs(g_exact - I) / scale


@dataclass(frozen=True)
class SynthesisResult:
    """Numerical integral, oracle value, and their relative distance."""

    I: complex
    g_exact: complex
    E: float
    N: int
    spec: ContourSpec
    rule: QuadratureRule
    growth_flagged: bool = False


def integrate_contour(contour: SampledContour):
    """Weighted sum of the synthesis integrand over a sampled path."""
    obs, med = contour.obs, contour.medium
    if contour.variant == LINEAR:
        if obs.rho == 0:
            raise SingularityError("synthesis requires rho > 0")
        vals = hankel0(1, contour.krho * obs.rho) * np.exp(1j * contour.kz * obs.z)
        return SYNTHESIS_PREFACTOR * np.sum(contour.weight * vals)
    if obs.rho == 0:
        raise SingularityError(
            "synthesis requires rho > 0; observations on the axis are the "
            "theta0 = +/-pi/2 pathology and must come in with rho = r cos(theta0)"
        )
    # Nodes whose rapid factor underflows contribute nothing; skipping them
    # avoids feeding extreme arguments to the Hankel evaluator.
    live = contour.phase_log.real > _EXP_UNDERFLOW
    theta = contour.theta[live]
    krho = contour.krho[live]
    h_hat = krho * hankel0_scaled(krho * obs.rho)
    vals = h_hat * np.exp(contour.phase_log[live])
    acc = np.sum(contour.weight[live] * vals)
    return contour.prefactor * SYNTHESIS_PREFACTOR * acc


def synthesize(spec: ContourSpec, rule: QuadratureRule, obs: Observation,
               medium: Medium) -> SynthesisResult:
    """Integrate one (path, rule, N) triple and measure it against the oracle.

    The oracle uses the medium actually integrated (after any imposed
    loss); benchmarking against the unmodified medium is the caller's
    concern.
    """
    contour = build_contour(spec, rule, rule.N, obs, medium)
    I = complex(integrate_contour(contour))
    g_exact = complex(greens3d_exact(obs, contour.medium))
    E = relative_error(I, obs, contour.medium, g_exact)
    return SynthesisResult(I=I, g_exact=g_exact, E=E, N=rule.N, spec=spec,
                           rule=rule, growth_flagged=contour.growth_flag)


@dataclass(frozen=True)
class ConvergenceFit:
    """Least-squares classification of an E(N) sequence."""

    algebraic_slope: float
    is_exponential: bool
    at_floor: bool


def _lstsq_residual(x, y):
    coeffs, res = np.polyfit(x, y, 1, full=True)[:2]
    resid = math.sqrt(res[0]) if res.size else 0.0
    return coeffs[0], resid


def fit_convergence(records, floor=ERROR_FLOOR) -> ConvergenceFit:
    """Fit log E against log N (algebraic) and N (exponential).

    ``records`` may be SynthesisResult objects or (N, E) pairs, ordered by
    strictly increasing N with E > 0.  Errors are clamped at ``floor``;
    a sequence entirely at the floor is reported as exponential with an
    undefined slope.
    """
    pairs = [(r.N, r.E) if hasattr(r, "N") else (r[0], r[1]) for r in records]
    if len(pairs) < 4:
        raise ValueError("need at least 4 records to fit")
    n = np.array([p[0] for p in pairs], dtype=float)
    e = np.array([p[1] for p in pairs], dtype=float)
    if np.any(np.diff(n) <= 0):
        raise ValueError("records must have strictly increasing N")
    if np.any(e < 0):
        raise ValueError("errors must be positive")
    e = np.maximum(e, floor)
    if np.all(e <= 10.0 * floor):
        return ConvergenceFit(algebraic_slope=math.nan, is_exponential=True,
                              at_floor=True)
    log_e = np.log(e)
    slope_alg, res_alg = _lstsq_residual(np.log(n), log_e)
    slope_exp, res_exp = _lstsq_residual(n, log_e)
    is_exp = bool(res_exp < 0.5 * res_alg and slope_exp < 0.0)
    return ConvergenceFit(algebraic_slope=float(slope_alg),
                          is_exponential=is_exp, at_floor=False)


def trim_plateau(records, factor=3.0, min_keep=4):
    """Drop a trailing floor/plateau, keeping one representative point.

    A converged-then-flat sweep (typical for the steepest-descent paths)
    otherwise drowns the fit in its plateau.  Sequences still descending
    at the end are returned unchanged.
    """
    pairs = [(r.N, r.E) if hasattr(r, "N") else (r[0], r[1]) for r in records]
    e = np.array([p[1] for p in pairs], dtype=float)
    e = np.maximum(e, ERROR_FLOOR)
    floor_est = e.min()
    tail = 0
    for val in e[::-1]:
        if val <= factor * floor_est:
            tail += 1
        else:
            break
    if tail < 2:
        return list(records)
    keep = max(min_keep, len(records) - tail + 1)
    return list(records)[:keep]
