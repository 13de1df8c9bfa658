"""Lieb-Liniger ground-state energy from the Love-equation moments.

The coupling is ``gamma = 2 pi kappa / T_0(kappa)`` and the dimensionless
energy ``e(gamma) = 4 pi^2 T_2(kappa) / T_0(kappa)^3`` with ``kappa``
obtained by inverting the coupling map numerically.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import scipy.optimize

from . import large, matching, nystrom, small
from .errors import ConvergenceError, DomainError

__all__ = [
    "METHODS",
    "METHOD_RANGES",
    "moments",
    "gamma_of_kappa",
    "kappa_of_gamma",
    "ground_state_energy",
    "LiebLinigerPoint",
    "lieb_liniger_point",
]

METHODS = ("nystrom", "small-series", "large-series")
METHOD_RANGES = {
    "nystrom": (nystrom.KAPPA_MIN, 1e7),
    "small-series": (0.0, 1.0),
    "large-series": (4.0, math.inf),
}
LARGE_SYSTEM_M = 6


@functools.lru_cache(maxsize=4)
def _t2_series(digits: int | None = None):
    table = matching.run_matching(small.MAX_ORDER, digits)
    return matching.t2_series_from_table(table)


@functools.lru_cache(maxsize=4096)
def _nystrom_moments(kappa: float, tolerance: float) -> tuple[float, float]:
    sol = nystrom.solve_love(kappa, tolerance)
    return nystrom.moment(sol, 0), nystrom.moment(sol, 2)


def _check_method(method: str, kappa: float):
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; choose one of {', '.join(METHODS)}")
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    lo, hi = METHOD_RANGES[method]
    if not lo < kappa <= hi if method == "small-series" else not lo <= kappa <= hi:
        raise DomainError(f"kappa = {kappa} is outside the range [{lo}, {hi}] of method {method!r}")


def moments(kappa: float, method: str = "nystrom", tolerance: float = nystrom.DEFAULT_TOLERANCE):
    """``(T_0, T_2)`` at ``kappa`` from the selected backend."""
    kappa = float(kappa)
    _check_method(method, kappa)
    if method == "nystrom":
        return _nystrom_moments(kappa, tolerance)
    if method == "small-series":
        return 2 * math.pi * small.eval_small_kappa(kappa), _t2_series()(kappa)
    t0 = 2 * math.pi * large.capacitance_large_series(kappa)
    return t0, large.solve_large_system(kappa, LARGE_SYSTEM_M).t2


def gamma_of_kappa(kappa: float, method: str = "nystrom", tolerance: float = nystrom.DEFAULT_TOLERANCE) -> float:
    """``gamma = 2 pi kappa / T_0(kappa)``."""
    t0, _ = moments(kappa, method, tolerance)
    return 2 * math.pi * kappa / t0


def kappa_of_gamma(gamma: float, method: str = "nystrom", tolerance: float = nystrom.DEFAULT_TOLERANCE) -> float:
    """Invert the coupling map by a bracketed Brent root search.

    The bracket starts at ``max(sqrt(gamma)/2, gamma/pi)``, a lower bound
    from both asymptotes, and is widened upward until it straddles the root.
    """
    gamma = float(gamma)
    if not (gamma > 0 and math.isfinite(gamma)):
        raise DomainError(f"gamma must be positive and finite, got {gamma}")
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; choose one of {', '.join(METHODS)}")
    lo_m, hi_m = METHOD_RANGES[method]

    def g(k):
        return gamma_of_kappa(k, method, tolerance) - gamma

    bound = max(math.sqrt(gamma) / 2, gamma / math.pi)
    lo = min(max(bound, lo_m), hi_m)
    g_lo = g(lo)
    if g_lo > 0:
        if lo != bound:
            raise DomainError(f"gamma = {gamma} maps outside the range of method {method!r}")
        raise ConvergenceError(
            f"gamma({lo:.6g}) = {g_lo + gamma:.10g} exceeds {gamma} at the asymptotic lower bound"
        )
    hi = lo
    g_hi = g_lo
    for _ in range(200):
        if g_hi > 0:
            break
        step = min(hi * 2, hi_m)
        if step == hi:
            raise DomainError(f"gamma = {gamma} maps above the range of method {method!r}")
        g_step = g(step)
        if g_step < g_hi:
            raise ConvergenceError(
                f"gamma(kappa) is not increasing between {hi:.6g} and {step:.6g} "
                f"({g_hi + gamma:.10g} -> {g_step + gamma:.10g})"
            )
        lo, g_lo = hi, g_hi
        hi, g_hi = step, g_step
    else:
        raise ConvergenceError(f"could not bracket the root for gamma = {gamma}")
    if g_lo == 0:
        return lo
    return scipy.optimize.brentq(g, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=200)


@dataclass(frozen=True)
class LiebLinigerPoint:
    gamma: float
    kappa: float
    t0: float
    t2: float
    method: str

    @property
    def energy(self) -> float:
        return 4 * math.pi**2 * self.t2 / self.t0**3


def lieb_liniger_point(gamma: float, method: str = "nystrom", tolerance: float = nystrom.DEFAULT_TOLERANCE) -> LiebLinigerPoint:
    kappa = kappa_of_gamma(gamma, method, tolerance)
    t0, t2 = moments(kappa, method, tolerance)
    return LiebLinigerPoint(gamma=float(gamma), kappa=kappa, t0=t0, t2=t2, method=method)


def ground_state_energy(gamma: float, method: str = "nystrom", tolerance: float = nystrom.DEFAULT_TOLERANCE) -> float:
    """``e(gamma) = 4 pi^2 T_2 / T_0^3`` at ``kappa = kappa_of_gamma(gamma)``."""
    return lieb_liniger_point(gamma, method, tolerance).energy
