"""Numerical verification of the half-space spectral identities.

The closed form under test:

    integral over the deformed krho contour of
        krho H0^(1)(krho rho) / (krho^2 - p^2) dkrho  =  i pi H0^(1)(p rho)

with the pole p in the first quadrant (lossy medium).  The contour comes
in from -K along (and above) the upper lip of the negative-axis branch
cut, tilted into the second quadrant where the Hankel factor decays,
passes the origin on the upper side, runs under the physical pole, and
leaves tilted into the first quadrant.  Closing that contour upward picks
the first-quadrant pole and nothing else.

The mirrored route (shallow lower lip, dip under the origin) stays on the
principal branch throughout but wraps the logarithmic cut the other way;
its value is the negated closed form, and it doubles as the check that
the deformation direction, not luck, selects the physical pole.  Its
lower-lip tail has no exponential decay, so it runs with a far larger
truncation radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .errors import NumericalFailure, SingularityError
from .quadrature import GAUSS_LEGENDRE, QuadratureRule, nodes
from .special_functions import bessel_j0, hankel0, hankel0_rotated2

#: Default truncation radius, in units of |pole|.
KMAX_FACTOR = 40.0

#: Truncation radius for the mirrored (algebraic-tail) route.
KMAX_FACTOR_FLIP = 800.0

#: Upward tilt of the decaying legs.
_TILT = 0.18

#: Integrand magnitude the decaying route must reach before truncation.
_TAIL_BOUND = 1e-12


@dataclass(frozen=True)
class SommerfeldCase:
    """Pole location, transverse distance, loss fraction, node budget."""

    krho_pole: complex
    rho: float
    loss: float
    N: int

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError("rho must be positive")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.loss < 0:
            raise ValueError("loss must be >= 0")
        p = complex(self.krho_pole)
        if self.loss > 0 and not (p.real > 0 and p.imag > 0):
            raise ValueError("lossy cases put the physical pole in the first quadrant")

    @classmethod
    def from_angle(cls, theta, loss, rho=1.0, N=400, k0_real=2.0 * math.pi):
        """Pole k0 cos(theta) for the medium k0_real (1 + i loss)."""
        k0 = k0_real * (1.0 + 1j * loss)
        return cls(krho_pole=k0 * math.cos(theta), rho=rho, loss=loss, N=N)


@dataclass(frozen=True)
class SommerfeldResult:
    lhs: complex
    rhs: complex
    rel_err: float
    tail_magnitude: float
    n_evaluations: int


def _integrand(krho, pole, rho):
    # scaled form: hankel1e * exp(iz) lets the deep upper-half-plane tail
    # underflow to zero instead of tripping the Amos overflow guard
    z = krho * rho
    return krho * _sp.hankel1e(0, z) * np.exp(1j * z) / (krho * krho - pole * pole)


def _physical_waypoints(pole, rho, kmax_factor):
    a = abs(pole)
    r_o = 0.1 * a                      # origin detour radius
    kmax = kmax_factor * a
    p_re = pole.real
    width = max(pole.imag, 0.02 * a)   # pole halo half-width
    rise_start = min(p_re + 4.0 * width, 0.5 * kmax)
    return [
        complex(-kmax, _TILT * kmax),
        complex(-r_o, r_o),
        complex(r_o, r_o),
        complex(2.0 * r_o, 0.0),
        complex(rise_start, 0.0),
        complex(kmax, _TILT * (kmax - rise_start)),
    ], width


def _mirror_waypoints(pole, rho, kmax_factor):
    a = abs(pole)
    r_o = 0.1 * a
    kmax = kmax_factor * a
    lip = 0.5 * min(pole.imag, r_o)    # stay above the mirrored pole
    p_re = pole.real
    width = max(pole.imag, 0.02 * a)
    rise_start = min(p_re + 4.0 * width, 0.5 * kmax)
    return [
        complex(-kmax, -lip),
        complex(-r_o, -lip),
        complex(0.0, -r_o),
        complex(r_o, -lip),
        complex(2.0 * r_o, 0.0),
        complex(rise_start, 0.0),
        complex(kmax, _TILT * (kmax - rise_start)),
    ], width


def _refine_edges(edges, pole, width):
    """Insert pole-halo breakpoints on near-horizontal segments.

    All legs run left to right; any segment passing the real part of the
    physical or mirrored pole gets panel edges hugging the peak.
    """
    out = []
    for a, b in zip(edges[:-1], edges[1:]):
        out.append(a)
        if abs(a.imag - b.imag) < 0.05 * abs(a - b):
            lo, hi = sorted((a.real, b.real))
            y = 0.5 * (a.imag + b.imag)
            marks = []
            for centre in (pole.real, -pole.real):
                marks += [centre - 4 * width, centre - width,
                          centre + width, centre + 4 * width]
            for m in sorted(marks):
                if lo < m < hi:
                    out.append(complex(m, y))
    out.append(edges[-1])
    return out


def _geometric_split(a, b):
    """Halving cascade toward whichever end sits near the origin.

    A panel converges well only when its length is comparable to its
    distance from the logarithmic branch point; long legs that terminate
    near the origin get geometrically shrinking sub-panels there.
    """
    length = abs(b - a)
    near_b = abs(b) < abs(a)
    inner = abs(b) if near_b else abs(a)
    if length < 4.0 * inner:
        return [(a, b)]
    cuts = []
    frac = 1.0
    while frac * length > 2.0 * inner and len(cuts) < 40:
        frac *= 0.5
        cuts.append(frac)
    pieces = []
    prev = a if near_b else b
    endpoint = b if near_b else a
    for f in cuts:
        nxt = endpoint + (a - b if near_b else b - a) * f
        pieces.append((prev, nxt))
        prev = nxt
    pieces.append((prev, endpoint))
    if not near_b:
        pieces = [(q, p) for p, q in reversed(pieces)]
    return pieces


def _panelize(edges, rho, budget, pole, max_wavelengths=2.0, osc_floor=False):
    """Split straight segments into panels and spread the node budget.

    Panels are capped at ``max_wavelengths`` oscillation periods and
    refined geometrically toward the origin; node shares follow the
    oscillation count, boosted for panels hugging the branch point or a
    pole.  The mirrored route runs long panels parallel to the branch
    cut, where Gauss-Legendre endpoint clustering resolves the nearby
    discontinuity; ``osc_floor`` then guarantees each panel at least
    ~pi points per period regardless of the budget.
    """
    wavelength = 2.0 * math.pi / rho
    panels = []
    for a, b in zip(edges[:-1], edges[1:]):
        for p, q in _geometric_split(a, b):
            n_sub = max(1, int(math.ceil(abs(q - p) / (max_wavelengths * wavelength))))
            for j in range(n_sub):
                panels.append((p + (q - p) * j / n_sub, p + (q - p) * (j + 1) / n_sub))
    live, costs, floors = [], [], []
    for a, b in panels:
        # the Hankel factor decays like exp(-Im(krho) rho); panels whose
        # envelope underflows contribute nothing and only eat budget
        envelope = math.exp(-rho * max(0.0, min(a.imag, b.imag)))
        if envelope < 1e-17:
            continue
        length = abs(b - a)
        mid = 0.5 * (a + b)
        dist = min(abs(mid), abs(mid - pole), abs(mid + pole)) + 1e-30
        boost = 1.0 + 2.0 / (1.0 + dist / length)
        periods = length / wavelength
        live.append((a, b))
        costs.append((periods + 2.0) * boost)
        if osc_floor:
            floor = 3.2 * periods + 6.0
            if mid.real < 0 and abs(mid.imag) < length:
                # panel parallel to the branch cut at distance |Im|:
                # the Bernstein rate sqrt(2 d / L) sets the node count
                # needed for ~1e-7 per panel
                floor += 8.0 * math.sqrt(length / (2.0 * abs(mid.imag) + 1e-30))
            floors.append(int(math.ceil(floor)))
        else:
            floors.append(4)
    costs = np.asarray(costs)
    shares = costs / costs.sum()
    counts = np.maximum(floors, np.rint(budget * shares).astype(int))
    return live, counts


def _integrate_path(edges, pole, rho, budget, max_wavelengths=2.0,
                    osc_floor=False):
    panels, counts = _panelize(edges, rho, budget, pole,
                               max_wavelengths=max_wavelengths,
                               osc_floor=osc_floor)
    total = 0.0 + 0.0j
    n_eval = 0
    for (a, b), n in zip(panels, counts):
        x, w = nodes(QuadratureRule(GAUSS_LEGENDRE, int(n)))
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        kr = mid + half * x
        total += half * np.sum(w * _integrand(kr, pole, rho))
        n_eval += int(n)
    return total, n_eval


def sommerfeld_identity_check(case: SommerfeldCase, flip=False,
                              kmax_factor=None) -> SommerfeldResult:
    """Integrate the deformed spectral contour and compare to the residue.

    ``flip=True`` runs the mirrored route that wraps the branch cut the
    other way; its value converges to the negated closed form.
    """
    pole = complex(case.krho_pole)
    if pole == 0:
        raise SingularityError("pole at the branch point")
    rhs = 1j * math.pi * hankel0(1, pole * case.rho)
    if flip:
        factor = kmax_factor if kmax_factor is not None else KMAX_FACTOR_FLIP
        edges, width = _mirror_waypoints(pole, case.rho, factor)
        # the lower-lip tail decays only algebraically; scale the budget
        # with the much larger truncation radius it needs
        budget_scale = max(1.0, factor / KMAX_FACTOR)
    else:
        factor = kmax_factor if kmax_factor is not None else KMAX_FACTOR
        edges, width = _physical_waypoints(pole, case.rho, factor)
        budget_scale = 1.0
        tail = abs(_integrand(edges[0], pole, case.rho))
        if tail > _TAIL_BOUND:
            raise NumericalFailure(
                f"integrand magnitude {tail:.3e} at truncation exceeds "
                f"{_TAIL_BOUND:g}; raise kmax_factor"
            )
    edges = _refine_edges(edges, pole, width)
    lhs, n_eval = _integrate_path(edges, pole, case.rho,
                                  int(case.N * budget_scale),
                                  max_wavelengths=64.0 if flip else 2.0,
                                  osc_floor=flip)
    tail_mag = abs(_integrand(edges[-1], pole, case.rho))
    target = -rhs if flip else rhs
    rel = abs(lhs - target) / abs(rhs)
    return SommerfeldResult(lhs=complex(lhs), rhs=complex(target),
                            rel_err=float(rel), tail_magnitude=float(tail_mag),
                            n_evaluations=n_eval)


def expansion_identities_check(z):
    """Max residual of the cylinder-function expansion identities at z.

    Checks 2 J0(z) = H0^(1)(z) + H0^(2)(z) and the connection formula
    H0^(1)(z) = e^{i pi} H0^(2)(e^{i pi} z), the latter with its rotation
    taken toward the opposite half plane, where both principal branches
    stay evaluable.
    """
    z = complex(z)
    if z == 0:
        raise SingularityError("identities singular at z = 0")
    res_a = abs(2.0 * bessel_j0(z) - hankel0(1, z) - hankel0(2, z))
    if z.imag >= 0:
        res_b = abs(hankel0(1, z) + hankel0_rotated2(z))
    else:
        # same identity read the other way: H0^(1)(z e^{i pi}) = -H0^(2)(z)
        res_b = abs(hankel0(1, -z) + hankel0(2, z))
    return max(res_a, res_b)
