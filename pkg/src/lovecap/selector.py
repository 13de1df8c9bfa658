"""Method selection and a single entry point for the capacitance."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import large, nystrom, small
from .errors import DomainError, ValidityError

__all__ = [
    "METHODS",
    "SMALL_KAPPA_MAX",
    "LARGE_KAPPA_MIN",
    "resolve_method",
    "valid_range",
    "CapacitanceResult",
    "capacitance",
    "physical_capacitance",
]

METHODS = ("auto", "nystrom", "small", "large")
# auto crossover: series below 1 and above 4, Nystrom in between
SMALL_KAPPA_MAX = 1.0
LARGE_KAPPA_MIN = 4.0


def resolve_method(kappa: float, method: str = "auto") -> str:
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; choose one of {', '.join(METHODS)}")
    if method != "auto":
        return method
    if kappa < SMALL_KAPPA_MAX:
        return "small"
    if kappa > LARGE_KAPPA_MIN:
        return "large"
    return "nystrom"


def valid_range(method: str) -> tuple[float, float]:
    """Closed interval of kappa on which ``method`` may be evaluated."""
    return {
        "nystrom": (nystrom.KAPPA_MIN, 1e7),
        "small": (0.0, SMALL_KAPPA_MAX),
        "large": (large.LARGE_SERIES_KAPPA_MIN, math.inf),
    }[method]


@dataclass(frozen=True)
class CapacitanceResult:
    kappa: float
    value: float
    method: str
    error_estimate: float

    @property
    def label(self) -> str:
        return self.method


def capacitance(
    kappa: float,
    method: str = "auto",
    order: int = small.MAX_ORDER,
    tolerance: float = nystrom.DEFAULT_TOLERANCE,
    node_budget: int = nystrom.DEFAULT_NODE_BUDGET,
) -> CapacitanceResult:
    """Reduced capacitance at ``kappa`` by the selected method.

    For the series the error estimate is the magnitude of the last term
    kept, a heuristic rather than a bound.
    """
    kappa = float(kappa)
    if not (kappa > 0 and math.isfinite(kappa)):
        raise DomainError(f"kappa must be positive and finite, got {kappa}")
    chosen = resolve_method(kappa, method)
    lo, hi = valid_range(chosen)
    if not lo <= kappa <= hi or (chosen == "small" and kappa == 0):
        suggestion = resolve_method(kappa, "auto")
        raise ValidityError(
            f"kappa = {kappa} is outside the validated range [{lo}, {hi}] of method "
            f"{chosen!r}; use method {suggestion!r}"
        )
    if chosen == "nystrom":
        sol = nystrom.solve_love(kappa, tolerance, node_budget)
        return CapacitanceResult(kappa, sol.capacitance, "nystrom", sol.error_estimate)
    if chosen == "small":
        value = small.eval_small_kappa(kappa, order)
        last = small.last_term_small_kappa(kappa, order)
        return CapacitanceResult(kappa, value, f"small(order={order})", last)
    value = large.capacitance_large_series(kappa)
    coeffs = large.large_series_coefficients(20)
    last = abs(float(coeffs[-1])) / kappa ** (len(coeffs) - 1)
    return CapacitanceResult(kappa, value, "large", last)


def physical_capacitance(radius: float, gap: float, epsilon0: float, **kwargs) -> tuple[float, CapacitanceResult]:
    """Capacitance in farads, ``4 pi epsilon0 R C(gap / R)``, for plates of radius R."""
    if not (radius > 0 and gap > 0 and epsilon0 > 0):
        raise DomainError("radius, gap and epsilon0 must all be positive")
    result = capacitance(gap / radius, **kwargs)
    return 4 * math.pi * epsilon0 * radius * result.value, result
