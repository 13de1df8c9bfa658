"""Closed-form small-kappa capacitance series (hard-coded reference table).

The table holds ``b_j(L)`` for ``j = -1 .. 7`` in the normalization
``C(kappa) = (1/pi) sum_j b_j (kappa / 8 pi)^j`` with ``L = ln(16 pi/kappa)``.
Each power of ``L`` is an exact rational combination of the monomials
``1, zeta(3), zeta(5), zeta(7), zeta(3)^2, zeta(3) zeta(5)``; the table is
independent of the matching engine and serves as its trust anchor.
"""

from __future__ import annotations

import math
from fractions import Fraction as F

import mpmath
from mpmath import mpf

from .errors import DomainError
from .series import SmallKappaSeries
from .special import LogPoly, constants, default_digits, working_precision

__all__ = [
    "B_TABLE",
    "builtin_coefficients",
    "kirchhoff_capacitance",
    "eval_small_kappa",
    "last_term_small_kappa",
    "MAX_ORDER",
]

MAX_ORDER = 7

# b_j: list over powers of L (ascending) of {monomial: rational}
B_TABLE = {
    -1: [{"1": F(1, 32)}],
    0: [{"1": F(-1, 4)}, {"1": F(1, 4)}],
    1: [{"1": F(-1)}, {}, {"1": F(1, 2)}],
    2: [{"1": F(-1), "z3": F(-3)}, {}, {"1": F(2)}],
    3: [
        {"z3": F(-32)},
        {"1": F(4), "z3": F(12)},
        {"1": F(8)},
        {"1": F(-8, 3)},
    ],
    4: [
        {"1": F(2), "z3": F(-240), "z5": F(-135)},
        {"1": F(16), "z3": F(304)},
        {"1": F(16), "z3": F(-48)},
        {"1": F(-32)},
        {"1": F(16, 3)},
    ],
    5: [
        {"1": F(8), "z3": F(-1104), "z3^2": F(648), "z5": F(-4896)},
        {"1": F(40), "z3": F(4096), "z5": F(1620)},
        {"1": F(-32), "z3": F(-2016)},
        {"1": F(-192), "z3": F(192)},
        {"1": F(352, 3)},
        {"1": F(-64, 5)},
    ],
    6: [
        {"1": F(64, 3), "z3": F(-2368), "z3^2": F(32928), "z5": F(-90720), "z7": F(-28350)},
        {"1": F(32), "z3": F(34048), "z3^2": F(-10368), "z5": F(84816)},
        {"1": F(-448), "z3": F(-40832), "z5": F(-12960)},
        {"1": F(-1792, 3), "z3": F(11520)},
        {"1": F(3712, 3), "z3": F(-768)},
        {"1": F(-1280, 3)},
        {"1": F(512, 15)},
    ],
    7: [
        {"1": F(32), "z3": F(9952), "z3^2": F(818048), "z5": F(-1053360),
         "z3z5": F(434160), "z7": F(-1855872)},
        {"1": F(-896, 3), "z3": F(183552), "z3^2": F(-700032), "z5": F(2153664), "z7": F(567000)},
        {"1": F(-2112), "z3": F(-503808), "z3^2": F(103680), "z5": F(-900000)},
        {"1": F(1792, 3), "z3": F(954880, 3), "z5": F(86400)},
        {"1": F(7936), "z3": F(-60672)},
        {"1": F(-6656), "z3": F(3072)},
        {"1": F(70144, 45)},
        {"1": F(-2048, 21)},
    ],
}


def _monomials(c):
    return {
        "1": 1,
        "z3": c.zeta3,
        "z5": c.zeta5,
        "z7": c.zeta7,
        "z3^2": c.zeta3**2,
        "z3z5": c.zeta3 * c.zeta5,
    }


def _combine(term: dict, mono: dict):
    return mpmath.fsum(mpf(r.numerator) / r.denominator * mono[name] for name, r in term.items())


def builtin_coefficients(digits: int | None = None) -> SmallKappaSeries:
    """The hard-coded ``b_{-1} .. b_7`` table evaluated at ``digits`` digits."""
    digits = default_digits() if digits is None else digits
    with working_precision(digits):
        mono = _monomials(constants(digits))
        coeffs = {
            j: LogPoly(_combine(term, mono) for term in powers) for j, powers in B_TABLE.items()
        }
    return SmallKappaSeries(coeffs, digits=digits)


def kirchhoff_capacitance(kappa: float) -> float:
    """Leading two orders: ``1/(4 kappa) + (ln(16 pi/kappa) - 1)/(4 pi)``."""
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    return 1 / (4 * kappa) + (math.log(16 * math.pi / kappa) - 1) / (4 * math.pi)


_series_cache: dict[int, SmallKappaSeries] = {}


def eval_small_kappa(kappa: float, order: int = MAX_ORDER, digits: int | None = None) -> float:
    """Partial sum of the small-kappa series through ``(kappa/8pi)^order``."""
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if not -1 <= order <= MAX_ORDER:
        raise DomainError(f"order must lie in [-1, {MAX_ORDER}], got {order}")
    return _cached_series(digits)(kappa, order)


def _cached_series(digits: int | None) -> SmallKappaSeries:
    digits = default_digits() if digits is None else digits
    if digits not in _series_cache:
        _series_cache[digits] = builtin_coefficients(digits)
    return _series_cache[digits]


def last_term_small_kappa(kappa: float, order: int = MAX_ORDER, digits: int | None = None) -> float:
    """Magnitude of the ``(kappa/8pi)^order`` term, a rough truncation-error scale."""
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if not -1 <= order <= MAX_ORDER:
        raise DomainError(f"order must lie in [-1, {MAX_ORDER}], got {order}")
    return float(abs(_cached_series(digits).term_mp(order, kappa)))
