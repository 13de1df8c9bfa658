"""Evaluable truncated asymptotic series."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import DomainError
from .special import LogPoly, default_digits, to_mpf, working_precision

__all__ = ["SeriesExpansion", "SmallKappaSeries", "log_variable"]


def log_variable(kappa) -> mpf:
    """``L = ln(16 pi / kappa)`` at the current precision."""
    return mpmath.log(16 * mp.pi / to_mpf(kappa))


@dataclass(frozen=True)
class SeriesExpansion:
    """``prefactor * sum_j b_j(L) (kappa / scale)^j`` with ``L = ln(16 pi/kappa)``.

    ``coeffs`` maps the power ``j`` to a LogPoly in ``L``.  For series in
    ``1/kappa`` the powers are negative and the polynomials constant.
    """

    coeffs: dict
    scale: object = 1
    prefactor: object = 1
    digits: int = 50
    name: str = ""

    @property
    def powers(self) -> list[int]:
        return sorted(self.coeffs)

    @property
    def max_power(self) -> int:
        return max(self.coeffs)

    def term_mp(self, j: int, kappa) -> mpf:
        with working_precision(self.digits):
            k = to_mpf(kappa)
            if k <= 0:
                raise DomainError(f"kappa must be positive, got {kappa}")
            poly: LogPoly = self.coeffs[j]
            return to_mpf(self.prefactor) * poly(log_variable(k)) * (k / to_mpf(self.scale)) ** j

    def evaluate_mp(self, kappa, order: int | None = None) -> mpf:
        """Partial sum over powers ``j <= order`` (all powers by default)."""
        with working_precision(self.digits):
            return mpmath.fsum(
                self.term_mp(j, kappa) for j in self.powers if order is None or j <= order
            )

    def __call__(self, kappa, order: int | None = None) -> float:
        return float(self.evaluate_mp(kappa, order))


class SmallKappaSeries(SeriesExpansion):
    """Capacitance series ``(1/pi) sum_j b_j(L) (kappa / 8 pi)^j``."""

    def __init__(self, coeffs: dict, digits: int | None = None):
        digits = default_digits() if digits is None else digits
        with working_precision(digits):
            super().__init__(
                coeffs=dict(coeffs), scale=8 * mp.pi, prefactor=1 / mp.pi, digits=digits, name="C"
            )

    def b(self, j: int) -> LogPoly:
        return self.coeffs[j]
