"""Large-kappa solution of the Love equation by Legendre expansion.

With ``f(x) = sum_n a_n P_n(x)`` (even n only) the kernel is expanded as

    kappa / (pi (kappa^2 + (x-y)^2)) = (1/(pi kappa)) sum_m (-1)^m ((x-y)/kappa)^(2m)

which converges for ``|x - y| < kappa``.  Projecting onto ``P_n`` gives a
linear system for the ``a_n`` whose entries are built from the moments
``F_n^l = int_{-1}^{1} x^l P_n(x) dx``.  The capacitance is ``a_0 / pi``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp, mpf

from .errors import DomainError, ValidityError
from .special import working_precision

__all__ = [
    "MAX_M",
    "LARGE_SERIES_KAPPA_MIN",
    "legendre_moment",
    "LegendreSolution",
    "solve_large_system",
    "LARGE_SERIES",
    "capacitance_large_series",
    "f_large_eval",
]

MAX_M = 12
LARGE_SERIES_KAPPA_MIN = 2.0
# relative margin above the degenerate point kappa = 2/pi of the M = 0 system
SYSTEM_MARGIN = 0.1
_SYSTEM_DIGITS = 30


@functools.lru_cache(maxsize=None)
def legendre_moment(n: int, l: int) -> Fraction:
    """``F_n^l = int_{-1}^{1} x^l P_n(x) dx`` as an exact rational."""
    if n < 0 or l < 0:
        raise DomainError(f"indices must be >= 0, got n={n}, l={l}")
    if l < n or (l + n) % 2:
        return Fraction(0)
    f = math.factorial
    return Fraction(2 ** (n + 1) * f(l) * f((l + n) // 2), f(l + n + 1) * f((l - n) // 2))


@functools.lru_cache(maxsize=None)
def _kernel_block(m: int, n_max: int) -> tuple:
    # sum_l (-1)^l binom(2m, l) F_r^l F_n^(2m-l) for even n, r <= n_max, exact
    evens = range(0, n_max + 1, 2)
    rows = []
    for n in evens:
        row = []
        for r in evens:
            acc = Fraction(0)
            for l in range(2 * m + 1):
                fr = legendre_moment(r, l)
                if fr:
                    acc += (-1) ** l * math.comb(2 * m, l) * fr * legendre_moment(n, 2 * m - l)
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class LegendreSolution:
    """``a`` holds ``a_0, a_1, ..., a_{2M}`` with the odd entries zero."""

    kappa: float
    M: int
    a: tuple

    @property
    def capacitance(self) -> float:
        return self.a[0] / math.pi

    @property
    def t0(self) -> float:
        return 2 * self.a[0]

    @property
    def t2(self) -> float:
        """Second moment ``int x^2 f = sum_n a_n F_n^2``."""
        return sum(float(legendre_moment(n, 2)) * a for n, a in enumerate(self.a))


def solve_large_system(kappa: float, M: int = 3, digits: int = _SYSTEM_DIGITS) -> LegendreSolution:
    """Solve the truncated Legendre system over ``n, r in {0, 2, ..., 2M}``."""
    kappa = float(kappa)
    if not 0 <= M <= MAX_M:
        raise DomainError(f"M must lie in [0, {MAX_M}], got {M}")
    if not math.isfinite(kappa) or kappa <= 2 / math.pi * (1 + SYSTEM_MARGIN):
        raise ValidityError(
            f"kappa = {kappa} is too close to 2/pi (or below): the truncated system is ill-conditioned"
        )
    with working_precision(digits):
        k = mpf(kappa)
        size = M + 1
        mat = mpmath.matrix(size, size)
        for m in range(M + 1):
            block = _kernel_block(m, 2 * M)
            factor = (-1) ** m / (mp.pi * k ** (2 * m + 1))
            for i in range(size):
                for j in range(size):
                    entry = block[i][j]
                    if entry:
                        mat[i, j] -= factor * (mpf(entry.numerator) / entry.denominator)
        for i in range(size):
            mat[i, i] += mpf(2) / (4 * i + 1)
        rhs = mpmath.matrix([2] + [0] * M)
        try:
            sol = mpmath.lu_solve(mat, rhs)
        except ZeroDivisionError:
            raise ValidityError(f"Legendre system is singular at kappa = {kappa}, M = {M}") from None
        a = [0.0] * (2 * M + 1)
        for i in range(size):
            a[2 * i] = float(sol[i])
    return LegendreSolution(kappa=kappa, M=M, a=tuple(a))


# (power of 1/kappa, rational prefactor, polynomial in pi ascending, power of pi below)
LARGE_SERIES = (
    (0, Fraction(1), (1,), 1),
    (1, Fraction(2), (1,), 2),
    (2, Fraction(4), (1,), 3),
    (3, Fraction(-4, 3), (-6, 0, 1), 4),
    (4, Fraction(-16, 3), (-3, 0, 1), 5),
    (5, Fraction(16, 15), (30, 0, -15, 0, 2), 6),
    (6, Fraction(32, 3), (6, 0, -4, 0, 1), 7),
    (7, Fraction(-32, 315), (-1260, 0, 1050, 0, -371, 0, 45), 8),
    (8, Fraction(-64, 315), (-1260, 0, 1260, 0, -567, 0, 128), 9),
)


def large_series_coefficients(digits: int = 50) -> list:
    """Coefficients of ``1/kappa^j``, ``j = 0..8``, as mpf values."""
    with working_precision(digits):
        pi = mp.pi
        out = []
        for _, pref, poly, pi_power in LARGE_SERIES:
            value = mpmath.polyval(list(reversed(poly)), pi)
            out.append(mpf(pref.numerator) / pref.denominator * value / pi**pi_power)
        return out


_coeff_cache: dict = {}


def capacitance_large_series(kappa: float, digits: int = 50) -> float:
    """Nine-term expansion of the capacitance in ``1/kappa``; needs ``kappa >= 2``."""
    kappa = float(kappa)
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if kappa < LARGE_SERIES_KAPPA_MIN:
        raise ValidityError(
            f"the large-kappa series is not accurate below kappa = {LARGE_SERIES_KAPPA_MIN} (got {kappa})"
        )
    if digits not in _coeff_cache:
        _coeff_cache[digits] = large_series_coefficients(digits)
    coeffs = _coeff_cache[digits]
    with working_precision(digits):
        inv = 1 / mpf(kappa)
        return float(mpmath.polyval(list(reversed(coeffs)), inv))


def f_large_eval(sol: LegendreSolution, x) -> float | np.ndarray:
    """Legendre partial sum ``sum_n a_n P_n(x)`` on ``[-1, 1]``."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1):
        raise DomainError("x must lie in [-1, 1]")
    out = np.polynomial.legendre.legval(xa, np.asarray(sol.a))
    return float(out) if np.ndim(out) == 0 else out
