"""Node/weight generation for the three quadrature rules.

Riemann-midpoint and Gauss-Legendre live on [-1, 1]; Gauss-Hermite lives
on the real line with the exp(-x^2) kernel folded into the weights.
Nodes are computed on first use and memoized per (kind, N), so the sweep
over N in the convergence benchmarks never pays twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import NumericalFailure

RIEMANN_MIDPOINT = "riemann_midpoint"
GAUSS_LEGENDRE = "gauss_legendre"
GAUSS_HERMITE = "gauss_hermite"

RULE_KINDS = (RIEMANN_MIDPOINT, GAUSS_LEGENDRE, GAUSS_HERMITE)

#: Gauss-Hermite cap: the smallest weight is ~exp(-x_max^2) with
#: x_max^2 ~ 2N+1, and underflows double precision past 2N+1 ~ 708.
GAUSS_HERMITE_N_MAX = 350

_NEWTON_TOL = 1e-14
_NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class QuadratureRule:
    """A rule kind plus its node count."""

    kind: str
    N: int

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        if self.N < 1:
            raise ValueError("node count must be >= 1")
        if self.kind == GAUSS_HERMITE and self.N > GAUSS_HERMITE_N_MAX:
            raise ValueError(
                f"Gauss-Hermite capped at N = {GAUSS_HERMITE_N_MAX} "
                "(weight underflow)"
            )


def nodes(rule: QuadratureRule):
    """Abscissas and weights for ``rule`` on its canonical domain."""
    return _nodes_cached(rule.kind, rule.N)


@lru_cache(maxsize=None)
def _nodes_cached(kind, n):
    if kind == RIEMANN_MIDPOINT:
        x = -1.0 + (2.0 * np.arange(n) + 1.0) / n
        w = np.full(n, 2.0 / n)
    elif kind == GAUSS_LEGENDRE:
        x, w = _gauss_legendre(n)
    else:
        x, w = _gauss_hermite(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _legendre_and_derivative(n, x):
    """P_n(x) and P_n'(x) via the ascending recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def _gauss_legendre(n):
    if n == 1:
        return np.zeros(1), np.full(1, 2.0)
    # Chebyshev-based initial guesses, then damped Newton on P_n.
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(_NEWTON_MAX_ITER):
        p, dp = _legendre_and_derivative(n, x)
        step = p / dp
        step = np.clip(step, -0.5 / n, 0.5 / n)  # damping: stay inside a cell
        x = x - step
        if np.max(np.abs(step)) < _NEWTON_TOL:
            break
    else:
        raise NumericalFailure(f"Gauss-Legendre roots did not converge for N={n}")
    x = np.sort(x)
    _, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # enforce the exact symmetry the recurrence delivers only to roundoff
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w


def _hermite_orthonormal(n, x):
    """Orthonormal Hermite value h_n(x) and h_{n-1}(x), scaled O(1).

    h_k = H_k / sqrt(2^k k! sqrt(pi)); recurrence
    h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}.
    """
    h_prev = np.zeros_like(x)
    h = np.full_like(x, np.pi ** -0.25)
    for k in range(n):
        h_prev, h = h, x * np.sqrt(2.0 / (k + 1)) * h - np.sqrt(k / (k + 1.0)) * h_prev
    return h, h_prev


def _gauss_hermite(n):
    if n == 1:
        return np.zeros(1), np.full(1, np.sqrt(np.pi))
    # Eigenvalues of the Jacobi matrix seed the roots; one Newton polish
    # on the orthonormal recurrence sharpens them to full precision.
    off = np.sqrt(np.arange(1, n) / 2.0)
    x = eigh_tridiagonal(np.zeros(n), off, eigvals_only=True)
    for _ in range(_NEWTON_MAX_ITER):
        h, h_prev = _hermite_orthonormal(n, x)
        dh = np.sqrt(2.0 * n) * h_prev
        step = h / dh
        x = x - step
        if np.max(np.abs(step)) < _NEWTON_TOL:
            break
    else:
        raise NumericalFailure(f"Gauss-Hermite roots did not converge for N={n}")
    x = np.sort(x)
    _, h_prev = _hermite_orthonormal(n, x)
    # The classical weight 2^{n-1} n! sqrt(pi) / (n H_{n-1}(x))^2 written in
    # orthonormal terms; equal analytically, finite for every n here.
    w = 1.0 / (n * h_prev * h_prev)
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w
