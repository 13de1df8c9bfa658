"""Extended-precision constants, polygamma values and truncated jet algebra.

All arithmetic here runs on :mod:`mpmath` numbers at the *current* mpmath
precision.  Callers that need a specific number of digits wrap their work
in :func:`working_precision`; the matching engine does this internally.

Two value types carry most of the load:

``LogPoly``
    a polynomial in ``Lambda = ln(kappa)`` with mpf coefficients.
``Jet``
    a truncated Taylor series in an auxiliary variable ``x`` whose
    coefficients are ``LogPoly`` values.  ``Jet.derivative(n)`` returns
    ``d^n A/dx^n`` at ``x = 0``.
"""

from __future__ import annotations

import contextlib
import functools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
from mpmath import mp, mpf

from .errors import DomainError

__all__ = [
    "DEFAULT_DIGITS",
    "default_digits",
    "working_precision",
    "to_mpf",
    "parity",
    "ConstantsRegistry",
    "constants",
    "polygamma",
    "LogPoly",
    "Jet",
    "gamma_jet",
    "exp_ln_jet",
    "euler_moment_identity",
    "EULER_NUMBERS",
]

DEFAULT_DIGITS = 50

EULER_NUMBERS = (1, 0, -1, 0, 5, 0, -61, 0, 1385)


def default_digits() -> int:
    """Working precision in decimal digits; ``LOVECAP_PRECISION`` overrides."""
    value = os.environ.get("LOVECAP_PRECISION")
    if value is None or value.strip() == "":
        return DEFAULT_DIGITS
    digits = int(value)
    if digits < 15:
        raise DomainError(f"LOVECAP_PRECISION must be >= 15, got {digits}")
    return digits


@contextlib.contextmanager
def working_precision(digits: int | None = None):
    """Temporarily set the mpmath precision to ``digits`` decimal digits."""
    with mp.workdps(default_digits() if digits is None else int(digits)):
        yield


def to_mpf(value) -> mpf:
    """Convert ints, Fractions, floats, strings and mpf to an mpf."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    if isinstance(value, mpmath.mpc):
        raise TypeError("complex value where a real was expected")
    return mpf(value)


def parity(k: int) -> int:
    """The parity helper ``[1 - (-1)^k] / 2``: 1 for odd k, 0 for even k."""
    return k & 1


def _is_pole(a: mpf) -> bool:
    return a <= 0 and a == mpmath.floor(a)


# ---------------------------------------------------------------------------
# constants


@dataclass(frozen=True)
class ConstantsRegistry:
    digits: int
    pi: mpf
    sqrt_pi: mpf
    euler_gamma: mpf
    ln2: mpf
    zeta3: mpf
    zeta5: mpf
    zeta7: mpf
    euler_numbers: tuple = EULER_NUMBERS

    def zeta(self, n: int) -> mpf:
        try:
            return {3: self.zeta3, 5: self.zeta5, 7: self.zeta7}[n]
        except KeyError:
            raise DomainError(f"zeta({n}) is not stored in the registry") from None


@functools.lru_cache(maxsize=None)
def _constants(digits: int) -> ConstantsRegistry:
    with mp.workdps(digits):
        return ConstantsRegistry(
            digits=digits,
            pi=+mp.pi,
            sqrt_pi=mpmath.sqrt(mp.pi),
            euler_gamma=+mp.euler,
            ln2=+mp.ln2,
            zeta3=mpmath.zeta(3),
            zeta5=mpmath.zeta(5),
            zeta7=mpmath.zeta(7),
        )


def constants(digits: int | None = None) -> ConstantsRegistry:
    """Constants at ``digits`` digits (default: the current mpmath precision)."""
    return _constants(mp.dps if digits is None else int(digits))


# ---------------------------------------------------------------------------
# polygamma


def polygamma(k: int, a) -> mpf:
    """psi^(k)(a) at the current precision.

    The argument is shifted upward by the recurrence
    ``psi^(k)(x) = psi^(k)(x+1) - (-1)^k k! / x^(k+1)`` until the
    Stirling-type asymptotic series converges to working precision.
    Negative non-integer arguments are allowed.
    """
    if k < 0:
        raise DomainError(f"polygamma order must be >= 0, got {k}")
    a = to_mpf(a)
    if _is_pole(a):
        raise DomainError(f"polygamma has a pole at a = {mpmath.nstr(a, 10)}")

    eps = mpf(2) ** (-mp.prec)
    # the smallest asymptotic term is about exp(-2 pi x)
    target = 0.4 * mp.dps + k + 8
    shift = max(0, int(math.ceil(target - float(a))))

    k_fact = math.factorial(k)
    tail = mpf(0)
    for i in range(shift):
        tail += 1 / (a + i) ** (k + 1)
    x = a + shift

    if k == 0:
        total = mpmath.log(x) - 1 / (2 * x)
    else:
        total = mpf(math.factorial(k - 1)) / x**k + mpf(k_fact) / (2 * x ** (k + 1))
    xx = x * x
    power = x ** (k + 2) if k else xx  # x^(2j+k) at j = 1
    j = 1
    while True:
        b2j = mpmath.bernoulli(2 * j)
        if k == 0:
            term = b2j / (2 * j * power)
        else:
            term = b2j * (mpf(math.factorial(2 * j + k - 1)) / math.factorial(2 * j)) / power
        if k == 0:
            total -= term
        else:
            total += term
        if abs(term) < eps * abs(total) or j > 4 * mp.dps:
            break
        j += 1
        power *= xx
    if k:
        total *= (-1) ** (k + 1)
    return total - (-1) ** k * k_fact * tail


# ---------------------------------------------------------------------------
# LogPoly


class LogPoly:
    """Polynomial in ``Lambda = ln(kappa)``; coefficients in ascending degree.

    The representation is canonical: exact trailing zeros are dropped, so
    the zero polynomial has no coefficients and ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, mpf) else to_mpf(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, value) -> "LogPoly":
        return cls((value,))

    @classmethod
    def lnk(cls) -> "LogPoly":
        """The variable ``Lambda`` itself."""
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> mpf:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else mpf(0)

    def constant_term(self) -> mpf:
        return self.coeff(0)

    def __add__(self, other):
        if not isinstance(other, LogPoly):
            other = LogPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return LogPoly([x + b[i] if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return LogPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, LogPoly):
            other = LogPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LogPoly):
            if not self.coeffs or not other.coeffs:
                return LogPoly()
            out = [mpf(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, x in enumerate(self.coeffs):
                if not x:
                    continue
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
            return LogPoly(out)
        s = to_mpf(other)
        return LogPoly([c * s for c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LogPoly):
            if not other.is_constant() or other.is_zero():
                raise DomainError("LogPoly division only by a nonzero constant")
            other = other.coeffs[0]
        s = to_mpf(other)
        return LogPoly([c / s for c in self.coeffs])

    def __pow__(self, n: int):
        out = LogPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, lam):
        """Evaluate at ``Lambda = lam`` (mpf, float or complex)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc if self.coeffs else mpf(0)

    def compose_linear(self, offset, slope) -> "LogPoly":
        """Return ``p(offset + slope * t)`` as a polynomial in ``t``."""
        base = LogPoly((offset, slope))
        out = LogPoly()
        for c in reversed(self.coeffs):
            out = out * base + c
        return out

    def swap_log_variable(self) -> "LogPoly":
        """Rewrite in ``L = ln(16 pi) - Lambda`` (the map is an involution)."""
        return self.compose_linear(mpmath.log(16 * mp.pi), -1)

    def truncate(self, degree: int) -> "LogPoly":
        return LogPoly(self.coeffs[: degree + 1])

    def chop(self, abs_tol) -> "LogPoly":
        """Zero every coefficient with magnitude at most ``abs_tol``."""
        return LogPoly([c if abs(c) > abs_tol else 0 for c in self.coeffs])

    def max_abs(self) -> mpf:
        return max((abs(c) for c in self.coeffs), default=mpf(0))

    def allclose(self, other, abs_tol) -> bool:
        return (self - other).max_abs() <= abs_tol

    def to_strings(self, digits: int | None = None) -> list[str]:
        n = mp.dps if digits is None else digits
        return [mpmath.nstr(c, n) if c else "0" for c in self.coeffs]

    def __repr__(self):
        body = ", ".join(mpmath.nstr(c, 12) for c in self.coeffs)
        return f"LogPoly([{body}])"


# ---------------------------------------------------------------------------
# Jet


def _as_logpoly(c) -> LogPoly:
    return c if isinstance(c, LogPoly) else LogPoly.const(c)


class Jet:
    """Truncated Taylor series ``sum_k a_k x^k`` with LogPoly coefficients.

    ``coeffs[k]`` is the k-th Taylor coefficient, i.e. ``A^(k)(0) / k!``.
    Products are truncated Cauchy convolutions at the smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise DomainError("a jet needs at least one coefficient")
        self.coeffs = tuple(_as_logpoly(c) for c in coeffs)

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        return cls([_as_logpoly(value)] + [LogPoly()] * order)

    @classmethod
    def variable(cls, order: int) -> "Jet":
        """The jet of ``x`` itself."""
        cs = [LogPoly()] * (order + 1)
        if order >= 1:
            cs[1] = LogPoly.const(1)
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, order: int) -> "Jet":
        return Jet(self.coeffs[: order + 1])

    def derivative(self, n: int) -> LogPoly:
        """``[A(x)]^(n)`` at ``x = 0``."""
        if n > self.order:
            raise DomainError(f"derivative of order {n} exceeds jet order {self.order}")
        return self.coeffs[n] * math.factorial(n)

    def __add__(self, other):
        if not isinstance(other, Jet):
            return Jet([self.coeffs[0] + other, *self.coeffs[1:]])
        n = min(self.order, other.order)
        return Jet([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([c * other for c in self.coeffs])
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = LogPoly()
            for i in range(k + 1):
                if a[i].coeffs and b[k - i].coeffs:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return Jet(out)

    __rmul__ = __mul__

    def _leading_scalar(self, what: str) -> mpf:
        a0 = self.coeffs[0]
        if not a0.is_constant():
            raise DomainError(f"{what} needs a jet with constant leading term")
        return a0.constant_term()

    def reciprocal(self) -> "Jet":
        a0 = self._leading_scalar("reciprocal")
        if not a0:
            raise DomainError("reciprocal of a jet with zero leading term")
        a = self.coeffs
        b = [LogPoly.const(1 / a0)]
        for k in range(1, self.order + 1):
            acc = LogPoly()
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j]
            b.append(-acc / a0)
        return Jet(b)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet([c / other for c in self.coeffs])

    def exp(self) -> "Jet":
        a0 = self._leading_scalar("exp")
        a = self.coeffs
        b = [LogPoly.const(mpmath.exp(a0))]
        # k b_k = sum_j j a_j b_{k-j}
        for k in range(1, self.order + 1):
            acc = LogPoly()
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j] * j
            b.append(acc / k)
        return Jet(b)

    def log(self) -> "Jet":
        a0 = self._leading_scalar("log")
        if a0 <= 0:
            raise DomainError("log of a jet needs a positive leading term")
        a = self.coeffs
        out = [LogPoly.const(mpmath.log(a0))]
        for k in range(1, self.order + 1):
            acc = a[k]
            for j in range(1, k):
                acc = acc - out[j] * a[k - j] * Fraction(j, k)
            out.append(acc / a0)
        return Jet(out)

    def reflect(self) -> "Jet":
        """Substitute ``x -> -x``."""
        return Jet([-c if k & 1 else c for k, c in enumerate(self.coeffs)])

    def allclose(self, other: "Jet", abs_tol) -> bool:
        n = min(self.order, other.order)
        return all(self.coeffs[k].allclose(other.coeffs[k], abs_tol) for k in range(n + 1))

    def __repr__(self):
        return f"Jet(order={self.order}, coeffs={list(self.coeffs)!r})"


def gamma_jet(a, order: int) -> Jet:
    """Taylor expansion of ``Gamma(a + x)`` about ``x = 0`` to ``order``.

    Built as ``Gamma(a) * exp(sum_k psi^(k-1)(a) x^k / k!)``.
    """
    if order < 0:
        raise DomainError(f"jet order must be >= 0, got {order}")
    a = to_mpf(a)
    if _is_pole(a):
        raise DomainError(f"Gamma(a + x) has a pole at a = {mpmath.nstr(a, 10)}")
    log_part = [LogPoly()]
    for k in range(1, order + 1):
        log_part.append(LogPoly.const(polygamma(k - 1, a) / math.factorial(k)))
    return Jet(log_part).exp() * mpmath.gamma(a)


def exp_ln_jet(c, order: int) -> Jet:
    """Taylor expansion of ``exp(x * c)`` with a LogPoly rate ``c``."""
    if order < 0:
        raise DomainError(f"jet order must be >= 0, got {order}")
    c = _as_logpoly(c)
    out = [LogPoly.const(1)]
    for k in range(1, order + 1):
        out.append(out[-1] * c / k)
    return Jet(out)


# ---------------------------------------------------------------------------
# Euler-number moment identities


def _euler_closed_form(p: int, kind: str) -> mpf:
    pi = mp.pi
    if kind == "even":
        if p & 1:
            return mpf(0)
        return (-1) ** (p // 2) * pi**p * EULER_NUMBERS[p]
    if not p & 1:
        return mpf(0)
    return 2 * (-1) ** ((p + 1) // 2) * pi**p * p * EULER_NUMBERS[p - 1]


def _euler_quadrature(p: int, kind: str, pieces: int) -> mpf:
    # x = cos(theta) removes the inverse square root; ln((1-x)/(1+x)) = 2 ln tan(theta/2)
    def integrand(theta):
        w = 2 * mpmath.log(mpmath.tan(theta / 2))
        g = w**p if p else mpf(1)
        return g * mpmath.cos(theta) if kind == "odd" else g

    nodes = mpmath.linspace(0, mp.pi, pieces + 1)
    return mpmath.quad(integrand, nodes) / mp.pi


def euler_moment_identity(p: int, kind: str, pieces: int = 2) -> tuple[mpf, mpf]:
    """Closed form and quadrature of a log-moment over the arcsine weight.

    ``kind == "even"`` integrates ``ln^p((1-x)/(1+x)) / sqrt(1-x^2)``;
    ``kind == "odd"`` the same with an extra factor ``x``.  Both integrals
    carry a ``1/pi`` prefactor.  ``pieces`` sets the number of equal
    sub-intervals in theta handed to the tanh-sinh rule.
    """
    if kind not in ("even", "odd"):
        raise DomainError(f"kind must be 'even' or 'odd', got {kind!r}")
    if not 0 <= p <= len(EULER_NUMBERS) - 1:
        raise DomainError(f"p must lie in [0, {len(EULER_NUMBERS) - 1}], got {p}")
    return _euler_closed_form(p, kind), _euler_quadrature(p, kind, pieces)
