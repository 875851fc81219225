"""Deterministic numerics for the threshold constants.

Everything here is double precision: the survival recurrence, the
fixed-point map t -> 1 - exp(-c t^d), the critical constants beta_d and
c*_d, the tangency density c_collapse, the expected-s density, and the
closed-form large-d approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, log

import numpy as np


class ConvergenceError(RuntimeError):
    """Raised when an iteration fails to meet its tolerance; carries the
    last iterate in ``last``."""

    def __init__(self, message: str, last: float):
        super().__init__(message)
        self.last = last


@dataclass(frozen=True)
class ThresholdConstants:
    d: int
    beta_d: float
    c_star: float
    c_collapse: float
    beta_asym: float
    c_star_asym: float


def gamma_recurrence(d: int, c: float, r_max: int) -> np.ndarray:
    """gamma_0..gamma_{r_max}: gamma_0 = 0, gamma_r = exp(-c (1-gamma_{r-1})^d)."""
    if c < 0:
        raise ValueError("c must be >= 0")
    out = np.zeros(r_max + 1)
    for r in range(1, r_max + 1):
        out[r] = exp(-c * (1 - out[r - 1]) ** d)
    return out


def beta_sequence(d: int, c: float, k_max: int) -> np.ndarray:
    """beta_0..beta_{k_max}, with beta_k = 1 - gamma_{k+1}."""
    return 1.0 - gamma_recurrence(d, c, k_max + 1)[1:]


def fixed_point_beta(
    d: int, c: float, tol: float = 1e-12, max_iter: int = 10**6
) -> float:
    """Limit of t -> 1 - exp(-c t^d) started at t = 1.

    Converges to 0 below c_collapse and to the larger positive root above
    it; near the tangency convergence is slow, hence the generous cap.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    t = 1.0
    for _ in range(max_iter):
        t_next = 1.0 - exp(-c * t**d)
        if abs(t_next - t) < tol:
            return t_next
        t = t_next
    raise ConvergenceError(
        f"fixed-point iteration did not converge in {max_iter} steps", last=t
    )


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ConvergenceError(
            f"bracket [{lo}, {hi}] does not straddle a sign change", last=lo
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_beta(d: int, tol: float = 1e-12) -> float:
    """Root of -ln(1-b) = (d+1) b / (d+1 - d b) in (1 - e^-d, 1).

    The defining equation has a second, smaller root below 1 - e^-d; the
    threshold constant is always the larger one.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    g = lambda b: -log(1.0 - b) * (d + 1 - d * b) - (d + 1) * b
    return _bisect(g, 1.0 - exp(-d) + 1e-15, 1.0 - 1e-15, tol)


def solve_c_star(d: int, tol: float = 1e-12) -> float:
    """c*_d = -ln(1 - beta_d) / beta_d^d."""
    b = solve_beta(d, tol)
    return -log(1.0 - b) / b**d


def solve_c_collapse(d: int, tol: float = 1e-12) -> float:
    """Density at which t -> 1 - exp(-c t^d) first gains a positive fixed
    point (the two interior roots of 1 - exp(-c t^d) = t merge).

    Eliminating c from the tangency system leaves d (1-t) (-ln(1-t)) = t;
    the tangency point solves that and c = -ln(1-t)/t^d.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    g = lambda t: d * (1.0 - t) * (-log(1.0 - t)) - t
    t = _bisect(g, 1e-9, 1.0 - 1e-12, tol)
    return -log(1.0 - t) / t**d


def tangency_point(d: int, tol: float = 1e-12) -> tuple[float, float]:
    """(t*, c_collapse): the merged-root location and its density."""
    g = lambda t: d * (1.0 - t) * (-log(1.0 - t)) - t
    t = _bisect(g, 1e-9, 1.0 - 1e-12, tol)
    return t, -log(1.0 - t) / t**d


def expected_s_density(d: int, c: float, k: int) -> float:
    """Per-(d-1)-face density of E[s] after k phases:
    -beta_k + c beta_{k-1}^d (1 - beta_{k-1}) + c beta_{k-1}^{d+1} / (d+1).

    E[s] is approximately C(n, d) times this value.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    betas = beta_sequence(d, c, k)
    bk, bkm1 = betas[k], betas[k - 1]
    return -bk + c * bkm1**d * (1.0 - bkm1) + c * bkm1 ** (d + 1) / (d + 1)


def asymptotic_constants(d: int) -> tuple[float, float]:
    """Closed-form large-d approximations (o(1) factors dropped):
    c*_d ~ (d+1) - (d^2+d+1) e^{-(d+1)},
    beta_d ~ 1 - e^{-(d+1)} - (d+1)^2 e^{-2(d+1)}.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    c_star_asym = (d + 1) - (d * d + d + 1) * exp(-(d + 1))
    beta_asym = 1.0 - exp(-(d + 1)) - (d + 1) ** 2 * exp(-2 * (d + 1))
    return c_star_asym, beta_asym


def select_k_star(d: int, c: float, eps: float = 1e-9, cap: int = 10_000) -> int:
    """Smallest k with |beta_k - beta_{k-1}| < eps, capped."""
    g = exp(-c)  # gamma_1
    for k in range(1, cap + 1):
        g_next = exp(-c * (1.0 - g) ** d)  # gamma_{k+1}
        if abs(g_next - g) < eps:  # |beta_k - beta_{k-1}|
            return k
        g = g_next
    return cap


def threshold_constants(d: int, tol: float = 1e-12) -> ThresholdConstants:
    """Per-dimension constants record."""
    beta = solve_beta(d, tol)
    c_star = -log(1.0 - beta) / beta**d
    c_coll = solve_c_collapse(d, tol)
    c_star_asym, beta_asym = asymptotic_constants(d)
    return ThresholdConstants(d, beta, c_star, c_coll, beta_asym, c_star_asym)
