"""Medium/observation geometry and branch-correct spectral mappings.

The synthesis integral runs over axial wavenumbers kz (equivalently a
complex angle theta with kz = k0 sin(theta)).  This module owns the two
branch rules everything else relies on:

* ``physical_krho`` picks the root of sqrt(k0^2 - kz^2) lying in the
  closed first quadrant, the choice compatible with a decaying
  (radiating) cylindrical spectrum.
* ``theta_to_modes`` performs the angular substitution with *no*
  re-rooting: a theta-parametrized contour defines its own branch.

It also splits the angular integrand into the slowly-varying cylinder
part and the rapidly-varying exponential whose saddle sits at the
observation angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularityError
from .special_functions import hankel0_scaled

#: Prefactor of the cylindrical synthesis integral, i/(8 pi).
SYNTHESIS_PREFACTOR = 1j / (8.0 * np.pi)


@dataclass(frozen=True)
class Medium:
    """Homogeneous medium with complex wavenumber k0 = k0' + i k0''."""

    k0: complex

    def __post_init__(self):
        k0 = complex(self.k0)
        object.__setattr__(self, "k0", k0)
        if not (math.isfinite(k0.real) and math.isfinite(k0.imag)):
            raise ValueError("k0 must be finite")
        if k0.real <= 0:
            raise ValueError("k0 must have positive real part")
        if k0.imag < 0:
            raise ValueError("k0 must have non-negative imaginary part (lossy or lossless)")

    @property
    def magnitude(self):
        return abs(self.k0)

    @property
    def loss_angle(self):
        """Loss angle alpha in [0, pi/2), with k0 = |k0| e^{i alpha}."""
        return math.atan2(self.k0.imag, self.k0.real)

    def with_imposed_loss(self, fraction):
        """Medium with i * fraction * k0' added to k0 (loss regularizer)."""
        if fraction < 0:
            raise ValueError("imposed loss fraction must be >= 0")
        if fraction == 0:
            return self
        return Medium(self.k0 + 1j * fraction * self.k0.real)


@dataclass(frozen=True)
class Observation:
    """Source-relative observation point in the (rho, z) half plane."""

    rho: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "z", float(self.z))
        if self.rho < 0:
            raise ValueError("rho must be >= 0")
        if self.r == 0:
            raise ValueError("observation must not coincide with the source")

    @classmethod
    def from_polar(cls, r, theta0):
        """Observation at distance r and angle theta0 from the rho axis."""
        return cls(rho=r * math.cos(theta0), z=r * math.sin(theta0))

    @property
    def r(self):
        return math.hypot(self.rho, self.z)

    @property
    def theta0(self):
        """Observation angle in [-pi/2, pi/2]; atan2 keeps rho = 0 exact."""
        return math.atan2(self.z, self.rho)


@dataclass(frozen=True)
class SpectralPoint:
    """One spectral sample: optional complex angle plus (kz, krho).

    kz^2 + krho^2 = k0^2 holds to 1e-12 relative to the dominant term.
    Points produced by ``physical_krho`` from real kz lie in the closed
    first quadrant of the krho plane; theta-parametrized points inherit
    whatever branch the contour defines.
    """

    kz: complex
    krho: complex
    theta: complex | None = field(default=None)


def physical_krho(kz, medium: Medium):
    """Root of sqrt(k0^2 - kz^2) selected by the radiation condition.

    Picks the root with non-negative imaginary part, breaking the
    Im = 0 tie toward non-negative real part.  For real kz (and any valid
    medium) the result lies in the closed first quadrant.  Scalar in,
    scalar out; arrays broadcast.
    """
    kz_arr = np.asarray(kz, dtype=complex)
    root = np.sqrt(medium.k0 ** 2 - kz_arr * kz_arr)
    flip = (root.imag < 0) | ((root.imag == 0) & (root.real < 0))
    root = np.where(flip, -root, root)
    if np.isscalar(kz) or np.ndim(kz) == 0:
        return complex(root)
    return root


def theta_to_modes(theta, medium: Medium):
    """Angular substitution kz = k0 sin(theta), krho = k0 cos(theta).

    No re-rooting happens here: the parametrization is branch-defining.
    """
    th = np.asarray(theta, dtype=complex)
    kz = medium.k0 * np.sin(th)
    krho = medium.k0 * np.cos(th)
    if np.isscalar(theta) or np.ndim(theta) == 0:
        return SpectralPoint(kz=complex(kz), krho=complex(krho), theta=complex(th))
    return kz, krho


def phase_exponent(theta, obs: Observation, medium: Medium):
    """Rapidly-varying exponent f(theta) = i k0 r cos(theta - theta0)."""
    th = np.asarray(theta, dtype=complex)
    f = 1j * medium.k0 * obs.r * np.cos(th - obs.theta0)
    if np.isscalar(theta) or np.ndim(theta) == 0:
        return complex(f)
    return f


def slow_part(theta, obs: Observation, medium: Medium):
    """Slowly-varying factor H^(k0 cos(theta) rho) of the angular integrand.

    Equals k0 cos(theta) H0^(1)(w) / e^{iw} with w = k0 cos(theta) rho,
    evaluated through the scaled Hankel routine so the ratio stays finite
    on deformed contours.  Requires rho > 0; cos(theta) = 0 sits on the
    (suppressed) logarithmic singularity and is rejected.
    """
    if obs.rho == 0:
        raise SingularityError("slowly-varying part undefined at rho = 0")
    th = np.asarray(theta, dtype=complex)
    krho = medium.k0 * np.cos(th)
    if np.any(krho == 0):
        raise SingularityError("cos(theta) = 0: logarithmic singularity")
    h = krho * hankel0_scaled(krho * obs.rho)
    if np.isscalar(theta) or np.ndim(theta) == 0:
        return complex(h)
    return h


def integrand_parts(theta, obs: Observation, medium: Medium):
    """(H_hat, f) with the full integrand equal to i/(8 pi) H_hat e^f."""
    return slow_part(theta, obs, medium), phase_exponent(theta, obs, medium)


def krho_loci(media, kz_values):
    """Physical-root loci of krho over a (medium, kz) grid.

    Returns a 2-D complex array indexed [medium, kz]; each row is the
    image of the real kz line under the physical root for one medium,
    ready for the conformal-map figure.
    """
    media = list(media)
    kz_values = np.asarray(kz_values, dtype=float)
    if not media or kz_values.size == 0:
        raise ValueError("loci grids must be non-empty")
    out = np.empty((len(media), kz_values.size), dtype=complex)
    for i, med in enumerate(media):
        out[i] = physical_krho(kz_values, med)
    return out
