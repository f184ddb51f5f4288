"""Complex-argument cylinder functions and Hermite polynomials.

Every integrand in the package reduces to zeroth-order cylinder functions
of a complex argument plus, for the Gauss-Hermite weights, physicists'
Hermite polynomials.  The cylinder functions are delegated to the Amos
routines behind ``scipy.special``; the module owns the argument guards,
the branch conventions, and the scaled product H0^(1)(z)*exp(-iz) that
keeps deformed-contour integrands finite when Im(z) is large.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .errors import DomainOverflowError, SingularityError

#: Euler-Mascheroni constant, used by the small-argument Hankel form.
EULER_MASCHERONI = 0.5772156649015329

#: Magnitude guard for the cylinder-function evaluators.
BESSEL_ARG_MAX = 700.0

#: Hermite recurrence guard (values overflow double precision far earlier
#: for large |x|, but callers stay well inside this).
HERMITE_N_MAX = 200


def _asarray_checked(z, guard_overflow=True):
    a = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise DomainOverflowError("non-finite argument to cylinder function")
    if guard_overflow and np.any(np.abs(a) >= BESSEL_ARG_MAX):
        raise DomainOverflowError(
            f"|z| >= {BESSEL_ARG_MAX:g} outside the guarded evaluation range"
        )
    return a


def _scalar_like(result, z):
    if np.isscalar(z) or np.ndim(z) == 0:
        return complex(result)
    return result


def bessel_j0(z):
    """Zeroth-order Bessel function J0 for complex argument.

    Accepts scalars or arrays; |z| must stay below ``BESSEL_ARG_MAX``.
    """
    a = _asarray_checked(z)
    return _scalar_like(_sp.jv(0, a), z)


def hankel0(kind, z):
    """Zeroth-order Hankel function of the first or second kind.

    ``kind`` is 1 or 2.  The logarithmic branch point at the origin is a
    hard error; the branch cut follows the principal log (negative real
    axis).
    """
    if kind not in (1, 2):
        raise ValueError(f"kind must be 1 or 2, got {kind!r}")
    a = _asarray_checked(z)
    if np.any(a == 0):
        raise SingularityError("Hankel function is logarithmically singular at z = 0")
    fn = _sp.hankel1 if kind == 1 else _sp.hankel2
    return _scalar_like(fn(0, a), z)


def hankel0_scaled(z):
    """The ratio H0^(1)(z) * exp(-i z), evaluated without overflow.

    On steepest-descent contours Im(z) grows large and the two factors
    overflow/underflow individually while their product stays O(|z|^-1/2).
    """
    a = _asarray_checked(z, guard_overflow=False)
    if np.any(a == 0):
        raise SingularityError("Hankel function is logarithmically singular at z = 0")
    if not np.all(np.isfinite(a)):
        raise DomainOverflowError("non-finite argument to hankel0_scaled")
    return _scalar_like(_sp.hankel1e(0, a), z)


def hankel0_rotated2(z):
    """H0^(2) continued to the argument z*e^{-i pi}.

    Realizes the connection-formula rotation used by the expansion
    identities.  For Im(z) > 0 the rotated point lies in the open lower
    half plane and the principal evaluation applies; on the positive real
    axis the Amos routines ignore the signed zero, so the lower-lip value
    is recovered through the reflection H0^(2)(conj w) = conj H0^(1)(w),
    which here collapses to -conj H0^(2)(z).
    """
    a = _asarray_checked(z)
    if np.any(a == 0):
        raise SingularityError("Hankel function is logarithmically singular at z = 0")
    if np.any(a.imag < 0):
        raise ValueError("rotation defined for Im(z) >= 0 only")
    rotated = _sp.hankel2(0, -a)
    needs_lip = (a.imag == 0) & (a.real > 0)
    if np.any(needs_lip):
        lower_lip = -np.conj(_sp.hankel2(0, a))
        rotated = np.where(needs_lip, lower_lip, rotated)
    return _scalar_like(rotated, z)


def hermite(n, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence."""
    if n < 0 or int(n) != n:
        raise ValueError(f"order must be a non-negative integer, got {n!r}")
    if n > HERMITE_N_MAX:
        raise DomainOverflowError(f"Hermite order {n} exceeds guard {HERMITE_N_MAX}")
    x = float(x)
    if n == 0:
        return 1.0
    h_prev, h = 1.0, 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h
