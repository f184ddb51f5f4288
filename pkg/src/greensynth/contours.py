"""Sampled integration contours for the six synthesis formulations.

Each variant turns a quadrature rule on its canonical domain into an
ordered set of spectral samples with composite weights (rule weight x
path Jacobian, including every change-of-variable correction).  The
steepest-descent family also records a global prefactor e^{f(theta_c)}
and a per-node exponent ``phase_log`` so the assembly in ``synthesis``
never forms an overflowing intermediate:

    I = prefactor * sum_i weight_i * i/(8 pi) * H_hat(theta_i) * e^{phase_log_i}

For the linear (kz) path ``phase_log`` is unused and the plain integrand
H0^(1)(krho rho) e^{i kz z} applies.

Regularizers: ``delta_shift`` recenters the path at theta0 (1 - delta);
``imposed_loss`` adds i * loss * k0' to the wavenumber before anything is
derived; ``limit_scale`` stretches the linear/angular truncation extents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import RuleCompatibilityError
from .quadrature import (
    GAUSS_HERMITE,
    GAUSS_LEGENDRE,
    RIEMANN_MIDPOINT,
    QuadratureRule,
    nodes,
)
from .spectral import Medium, Observation, SpectralPoint, phase_exponent, physical_krho

LINEAR = "linear"
ANGULAR = "angular"
QUADRATIC_SD = "quadratic_sd"
EXACT_SD_THETA = "exact_sd_theta"
EXACT_SD_S = "exact_sd_s"
EXACT_SD_T = "exact_sd_t"

VARIANTS = (LINEAR, ANGULAR, QUADRATIC_SD, EXACT_SD_THETA, EXACT_SD_S, EXACT_SD_T)

#: Variants parametrized in the complex angle plane.
THETA_VARIANTS = (ANGULAR, QUADRATIC_SD, EXACT_SD_THETA, EXACT_SD_S, EXACT_SD_T)

#: Growth-region tolerance for the quadratic-path warning flag.
_GROWTH_TOL = 1e-12


@dataclass(frozen=True)
class ContourSpec:
    """Variant selector plus per-variant and regularization parameters.

    ``epsilon = None`` resolves at build time to pi/2 - alpha, the widest
    quadratic-path truncation that stays out of the growth regions.
    """

    variant: str
    kz_halfwidth_multiplier: float = 2.0
    theta_imag_max: float = 1.5 * math.pi
    epsilon: float | None = None
    delta_shift: float = 0.0
    imposed_loss: float = 0.0
    limit_scale: float = 1.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown contour variant {self.variant!r}")
        if self.epsilon is not None and not (0.0 < self.epsilon <= math.pi):
            raise ValueError("epsilon must lie in (0, pi]")
        if not (0.0 <= self.delta_shift < 1.0):
            raise ValueError("delta_shift must lie in [0, 1)")
        if self.theta_imag_max <= 0.0:
            raise ValueError("theta_imag_max must be positive")
        if self.kz_halfwidth_multiplier <= 0.0:
            raise ValueError("kz_halfwidth_multiplier must be positive")
        if self.imposed_loss < 0.0:
            raise ValueError("imposed_loss must be >= 0")
        if self.limit_scale <= 0.0:
            raise ValueError("limit_scale must be positive")


@dataclass(frozen=True)
class ContourSample:
    """One quadrature abscissa on a path."""

    spectral: SpectralPoint
    weight: complex


@dataclass(frozen=True)
class SampledContour:
    """Immutable sampled path ready for assembly.

    Array fields are aligned: theta (nan+0j entries for the linear path),
    kz, krho, weight, phase_log.  ``prefactor`` is the factored-out
    e^{f(theta_c)} of the s/t formulations (1 elsewhere).
    """

    variant: str
    theta: np.ndarray
    kz: np.ndarray
    krho: np.ndarray
    weight: np.ndarray
    phase_log: np.ndarray
    prefactor: complex
    medium: Medium          # effective medium actually integrated
    obs: Observation
    theta_center: float
    growth_flag: bool = False
    spec: ContourSpec | None = field(default=None, repr=False)
    parameter: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("theta", "kz", "krho", "weight", "phase_log"):
            getattr(self, name).setflags(write=False)
        if self.parameter is not None:
            self.parameter.setflags(write=False)

    @property
    def points(self):
        """Spec-shaped view: ordered ContourSample list."""
        has_theta = self.variant != LINEAR
        return [
            ContourSample(
                spectral=SpectralPoint(
                    kz=complex(self.kz[i]),
                    krho=complex(self.krho[i]),
                    theta=complex(self.theta[i]) if has_theta else None,
                ),
                weight=complex(self.weight[i]),
            )
            for i in range(self.kz.size)
        ]


def _effective(spec: ContourSpec, obs: Observation, medium: Medium):
    med = medium.with_imposed_loss(spec.imposed_loss)
    theta_c = obs.theta0 * (1.0 - spec.delta_shift)
    return med, theta_c


def _rule_points(rule: QuadratureRule):
    x, w = nodes(rule)
    return x, w


def _check_rule(spec: ContourSpec, rule: QuadratureRule):
    if spec.variant == EXACT_SD_S:
        if rule.kind != GAUSS_HERMITE:
            raise RuleCompatibilityError(
                "the s-plane steepest-descent path absorbs the exp(-s^2) "
                "kernel and requires the Gauss-Hermite rule"
            )
    elif rule.kind not in (RIEMANN_MIDPOINT, GAUSS_LEGENDRE):
        raise RuleCompatibilityError(
            f"{rule.kind} is only valid with the s-plane path"
        )


def build_contour(spec: ContourSpec, rule: QuadratureRule, N: int,
                  obs: Observation, medium: Medium) -> SampledContour:
    """Sample the requested path with an N-point rule.

    Weights carry the full measure (rule weight, interval rescaling,
    complex path Jacobian and correction terms), so downstream assembly
    is a plain weighted sum of integrand values.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    rule = replace(rule, N=N)
    _check_rule(spec, rule)
    med, theta_c = _effective(spec, obs, medium)

    builder = {
        LINEAR: _build_linear,
        ANGULAR: _build_angular,
        QUADRATIC_SD: _build_quadratic,
        EXACT_SD_THETA: _build_sd_theta,
        EXACT_SD_S: _build_sd_s,
        EXACT_SD_T: _build_sd_t,
    }[spec.variant]
    return builder(spec, rule, obs, med, theta_c)


def _theta_contour(spec, obs, med, theta_c, theta, weight, phase_log,
                   prefactor=1.0 + 0.0j, growth=False, parameter=None):
    kz = med.k0 * np.sin(theta)
    krho = med.k0 * np.cos(theta)
    return SampledContour(
        variant=spec.variant, theta=theta, kz=kz, krho=krho,
        weight=weight, phase_log=phase_log, prefactor=complex(prefactor),
        medium=med, obs=obs, theta_center=theta_c, growth_flag=growth,
        spec=spec, parameter=parameter,
    )


def _build_linear(spec, rule, obs, med, theta_c):
    # Panel the real-line spectrum at the branch points +/- k0', so the
    # logarithmic singularities sit at panel endpoints (interior nodes
    # never touch them and Gauss-Legendre keeps its endpoint-singular
    # rate).  Budget split proportional to panel length, symmetric.
    halfwidth = spec.kz_halfwidth_multiplier * med.k0.real * spec.limit_scale
    branch = med.k0.real
    if halfwidth > branch:
        edges = [-halfwidth, -branch, branch, halfwidth]
        l_evan = halfwidth - branch
        n_evan = int(round(rule.N * l_evan / (2.0 * halfwidth)))
        n_evan = min(max(n_evan, 1 if rule.N >= 3 else 0), (rule.N - 1) // 2)
        counts = [n_evan, rule.N - 2 * n_evan, n_evan]
    else:
        edges = [-halfwidth, halfwidth]
        counts = [rule.N]
    kz_parts, w_parts = [], []
    for lo, hi, n in zip(edges[:-1], edges[1:], counts):
        if n == 0:
            continue
        x, w = _rule_points(replace(rule, N=n))
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        kz_parts.append(mid + half * x)
        w_parts.append(half * w)
    kz = np.concatenate(kz_parts).astype(complex)
    weight = np.concatenate(w_parts).astype(complex)
    krho = physical_krho(kz, med)
    theta = np.full(kz.shape, np.nan, dtype=complex)
    phase_log = np.zeros(kz.shape, dtype=complex)
    return SampledContour(
        variant=spec.variant, theta=theta, kz=kz, krho=krho,
        weight=weight, phase_log=phase_log, prefactor=1.0 + 0.0j,
        medium=med, obs=obs, theta_center=theta_c, spec=spec,
        parameter=kz.real.copy(),
    )


def _split_angular_budget(N, leg_len, real_len):
    """Node counts (N1, N2, N1) proportional to partition length."""
    total = 2.0 * leg_len + real_len
    n_leg = int(round(N * leg_len / total))
    n_leg = min(n_leg, (N - 1) // 2)  # keep at least one real-partition node
    n_leg = max(n_leg, 1 if N >= 3 else 0)
    return n_leg, N - 2 * n_leg


def _segment(rule_x, rule_w, p_start, p_end):
    """Affine image of the canonical rule on a directed complex segment."""
    mid = 0.5 * (p_start + p_end)
    half = 0.5 * (p_end - p_start)
    return mid + half * rule_x.astype(complex), half * rule_w.astype(complex)


def _build_angular(spec, rule, obs, med, theta_c):
    # Three partitions: down the theta' = -pi/2 evanescent leg, across the
    # propagating interval, down the theta' = +pi/2 leg.  The +i theta''
    # start (and -i theta'' end) keep krho = k0 cos(theta) on the positive
    # imaginary axis for a lossless medium, i.e. the physical evanescent
    # root on both legs.
    t_max = spec.theta_imag_max * spec.limit_scale
    n_leg, n_real = _split_angular_budget(rule.N, t_max, math.pi)
    thetas, weights = [], []
    if n_leg:
        x, w = _rule_points(replace(rule, N=n_leg))
        th, wt = _segment(x, w, -math.pi / 2 + 1j * t_max, -math.pi / 2 + 0j)
        thetas.append(th)
        weights.append(wt)
    x, w = _rule_points(replace(rule, N=n_real))
    th, wt = _segment(x, w, -math.pi / 2 + 0j, math.pi / 2 + 0j)
    thetas.append(th)
    weights.append(wt)
    if n_leg:
        x, w = _rule_points(replace(rule, N=n_leg))
        th, wt = _segment(x, w, math.pi / 2 + 0j, math.pi / 2 - 1j * t_max)
        thetas.append(th)
        weights.append(wt)
    theta = np.concatenate(thetas)
    weight = np.concatenate(weights)
    phase_log = phase_exponent(theta, obs, med)
    return _theta_contour(spec, obs, med, theta_c, theta, weight, phase_log)


def _quadratic_direction(alpha):
    """Steepest-descent direction e^{-i(pi/4 + alpha/2)} at the saddle."""
    return np.exp(-1j * (math.pi / 4 + alpha / 2))


def _build_quadratic(spec, rule, obs, med, theta_c):
    alpha = med.loss_angle
    eps = spec.epsilon if spec.epsilon is not None else (math.pi / 2 - alpha)
    x, w = _rule_points(rule)
    direction = _quadratic_direction(alpha)
    t = eps * x
    theta = theta_c + t * direction
    weight = (eps * w) * direction
    phase_log = phase_exponent(theta, obs, med)
    # warn (not fail) if the truncated ray wandered into a growth region
    growth = bool(np.max(phase_log.real) > _GROWTH_TOL * med.magnitude * obs.r)
    return _theta_contour(spec, obs, med, theta_c, theta, weight, phase_log,
                          growth=growth, parameter=t)


def _sd_theta_imag(theta_p, alpha):
    return np.log((math.cos(alpha) - np.sin(theta_p)) / np.cos(alpha - theta_p))


def _sd_theta_correction(theta_p, alpha):
    return 1.0 - 1j * (np.cos(theta_p) / (math.cos(alpha) - np.sin(theta_p))
                       + np.tan(alpha - theta_p))


def _build_sd_theta(spec, rule, obs, med, theta_c):
    alpha = med.loss_angle
    half = math.pi / 2 - alpha
    x, w = _rule_points(rule)
    theta_p = half * x                      # theta' in (-pi/2+alpha, pi/2-alpha)
    theta = theta_c + theta_p + 1j * _sd_theta_imag(theta_p, alpha)
    c = _sd_theta_correction(theta_p, alpha)
    weight = w * half * c
    phase_log = phase_exponent(theta, obs, med)
    return _theta_contour(spec, obs, med, theta_c, theta, weight, phase_log,
                          parameter=theta_p)


def _sd_offset(q, k0r, sign):
    """Saddle offset u with i k0 r (cos u - 1) = -q, on the descent branch."""
    return sign * np.arccos(1.0 - q / (1j * k0r))


def _sd_phase_correction(q, u, d, k0r):
    """f(theta_c + u) - f(theta_c) + q, written cancellation-free.

    Equals q (1 - cos d) - i k0 r sin(u) sin(d) with d the delta-shift
    offset; identically zero when d = 0, so the absorbed kernel stays
    exact for the unshifted path.
    """
    if d == 0.0:
        return np.zeros_like(q, dtype=complex)
    return q * (1.0 - math.cos(d)) - 1j * k0r * np.sin(u) * math.sin(d)


def _build_sd_s(spec, rule, obs, med, theta_c):
    s, w = _rule_points(rule)
    k0r = med.k0 * obs.r
    sign = np.where(s >= 0.0, 1.0, -1.0)   # sign(0) := +1; Jacobian continuous there
    q = (s * s).astype(complex)
    u = _sd_offset(q, k0r, sign)
    theta = theta_c + u
    c = -2j / np.sqrt(q - 2j * k0r)
    weight = w * c
    d = theta_c - obs.theta0
    phase_log = _sd_phase_correction(q, u, d, k0r)
    prefactor = np.exp(phase_exponent(theta_c, obs, med))
    return _theta_contour(spec, obs, med, theta_c, theta, weight, phase_log,
                          prefactor=prefactor, parameter=s.copy())


def _build_sd_t(spec, rule, obs, med, theta_c):
    x, w = _rule_points(rule)
    k0r = med.k0 * obs.r
    t = (math.pi / 2) * x                   # t in (-pi/2, pi/2), endpoints excluded
    tan_t = np.tan(t)
    q = (tan_t * tan_t).astype(complex)
    sign = np.where(t >= 0.0, 1.0, -1.0)
    u = _sd_offset(q, k0r, sign)
    theta = theta_c + u
    sec2 = 1.0 + tan_t * tan_t
    c = -2j * sec2 / np.sqrt(q - 2j * k0r)
    weight = w * (math.pi / 2) * c
    d = theta_c - obs.theta0
    # explicit exp(-tan^2 t) kernel plus the shift correction
    phase_log = -q + _sd_phase_correction(q, u, d, k0r)
    prefactor = np.exp(phase_exponent(theta_c, obs, med))
    return _theta_contour(spec, obs, med, theta_c, theta, weight, phase_log,
                          prefactor=prefactor, parameter=t)


def stability_map(medium: Medium, obs: Observation, theta_re, theta_im):
    """Re f(theta0 + theta' + i theta'') over a rectangular offset grid.

    Positive entries mark regions where the rapid factor grows
    exponentially; the returned matrix is indexed [theta_im, theta_re].
    Evaluated directly from the exponent (the closed expansion is
    -(r |k0| / 2) [e^{-theta''} sin(alpha + theta') + e^{theta''} sin(alpha - theta')],
    and the two agree to roundoff).
    """
    theta_re = np.asarray(theta_re, dtype=float)
    theta_im = np.asarray(theta_im, dtype=float)
    if theta_re.size < 2 or theta_im.size < 2:
        raise ValueError("stability grid must be non-degenerate")
    tp, ts = np.meshgrid(theta_re, theta_im)
    theta = obs.theta0 + tp + 1j * ts
    return phase_exponent(theta, obs, medium).real
