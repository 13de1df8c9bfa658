"""Bulk/edge matching of the small-kappa resolvent expansion.

The bulk resolvent carries coefficients ``c[n, m, k]`` (multiplying
``kappa^(n+m) z^lam(k) (z^2-1)^(-n-1/2) ln^k((z-1)/(z+1))``) and the edge
solution in Laplace space carries ``Q[n, m]``.  After an inverse Laplace
transform both sides are expanded in ``kappa^m s^n ln^l(kappa/4s)`` and the
coefficient functions ``V_b(n, m, l)`` and ``V_e(n, m, l)`` must agree.
Every coefficient is a polynomial in ``Lambda = ln(kappa)`` (a ``LogPoly``).

The unknown ``c[n, m, k]`` is fixed by equation ``(n, m, k)`` and
``Q[a, b]`` (``b >= 1``) by equation ``(-a-1, a+b, 0)``; ``Q[n, 0]`` has a
closed form.  :func:`run_matching` walks the total order ``p = n + m``
upward, solving the Q's of order ``p`` first and then the c's with ``k``
descending and ``m`` ascending.  Each equation is checked to contain
exactly one unknown.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import mpmath
from mpmath import mp, mpf

from .errors import DependencyError, DomainError, OrderingError, ValidityError
from .series import SeriesExpansion, SmallKappaSeries
from .special import (
    Jet,
    LogPoly,
    default_digits,
    exp_ln_jet,
    gamma_jet,
    parity,
    working_precision,
)

__all__ = [
    "MAX_ORDER",
    "CoefficientTable",
    "AffineForm",
    "q_closed_form_rational",
    "q_closed_form",
    "assemble_Vb",
    "assemble_Ve",
    "matching_residual",
    "equation_ids",
    "run_matching",
    "capacitance_series_from_table",
    "t2_series_from_table",
    "f_bulk_eval",
    "resolvent_bulk_eval",
    "table_to_json",
    "table_from_json",
]

MAX_ORDER = 7
# extra digits carried internally on top of the requested precision
GUARD_DIGITS = 10


@dataclass
class CoefficientTable:
    """Bulk coefficients ``c[(n, m, k)]`` and edge coefficients ``q[(n, m)]``."""

    max_order: int
    digits: int
    c: dict = field(default_factory=dict)
    q: dict = field(default_factory=dict)

    def get(self, key):
        kind, *idx = key
        return (self.c if kind == "c" else self.q).get(tuple(idx))

    def set(self, key, value: LogPoly):
        kind, *idx = key
        (self.c if kind == "c" else self.q)[tuple(idx)] = value

    def is_complete(self, order: int) -> bool:
        if order > self.max_order:
            return False
        for p in range(order + 1):
            for m in range(p + 1):
                if any((p - m, m, k) not in self.c for k in range(p + 2)):
                    return False
                if (p - m, m) not in self.q:
                    return False
        return True

    def require(self, order: int):
        if not self.is_complete(order):
            raise DomainError(
                f"coefficient table is complete to order {self.max_order}, "
                f"order {order} requested"
            )


@dataclass
class AffineForm:
    """``known + coeff * unknown`` with at most one unknown coefficient."""

    known: LogPoly
    unknown: tuple | None = None
    coeff: LogPoly = field(default_factory=LogPoly)

    @property
    def value(self) -> LogPoly:
        if self.unknown is not None:
            raise DependencyError(f"{_fmt_key(self.unknown)} is still unknown", [self.unknown])
        return self.known

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        if self.unknown is not None and other.unknown is not None and self.unknown != other.unknown:
            raise DependencyError(
                f"two unknowns: {_fmt_key(self.unknown)}, {_fmt_key(other.unknown)}",
                [self.unknown, other.unknown],
            )
        unknown = self.unknown if self.unknown is not None else other.unknown
        return AffineForm(self.known - other.known, unknown, self.coeff - other.coeff)


def _fmt_key(key) -> str:
    kind, *idx = key
    return f"{kind}[{','.join(map(str, idx))}]"


class _Accumulator:
    def __init__(self, table: CoefficientTable):
        self.table = table
        self.known = LogPoly()
        self.missing: dict = {}

    def add(self, key, weight: LogPoly):
        value = self.table.get(key)
        if value is None:
            self.missing[key] = self.missing.get(key, LogPoly()) + weight
        elif not value.is_zero():
            self.known = self.known + value * weight

    def result(self, eq) -> AffineForm:
        if len(self.missing) > 1:
            names = ", ".join(_fmt_key(k) for k in self.missing)
            raise DependencyError(f"equation {eq} has several unknowns: {names}", self.missing)
        if self.missing:
            (key, coeff), = self.missing.items()
            return AffineForm(self.known, key, coeff)
        return AffineForm(self.known)


# ---------------------------------------------------------------------------
# closed forms


def q_closed_form_rational(n: int) -> Fraction:
    """Rational factor r with ``Q[n, 0] = r * sqrt(pi)``."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    ratio = Fraction(math.factorial(2 * n) ** 2, (4**n * math.factorial(n)) ** 3)
    return -Fraction(1, 2) * ratio * Fraction(2 * n + 1, 2 * n - 1)


def q_closed_form(n: int) -> mpf:
    r = q_closed_form_rational(n)
    return mpf(r.numerator) / r.denominator * mpmath.sqrt(mp.pi)


# ---------------------------------------------------------------------------
# V_b and V_e


@functools.lru_cache(maxsize=None)
def _bulk_bracket(n: int, j: int, lam: int, order: int, dps: int) -> Jet:
    # [Gamma(n+2j+x+1/2) - 2j lam Gamma(n+2j+x-1/2)] / [Gamma(n-x+1/2) Gamma(n+j+x+1/2)]
    with mp.workdps(dps):
        num = gamma_jet(Fraction(2 * (n + 2 * j) + 1, 2), order)
        if j and lam:
            num = num - gamma_jet(Fraction(2 * (n + 2 * j) - 1, 2), order) * (2 * j)
        inv_left = gamma_jet(Fraction(2 * n + 1, 2), order).reflect().reciprocal()
        inv_right = gamma_jet(Fraction(2 * (n + j) + 1, 2), order).reciprocal()
        return num * inv_left * inv_right


@functools.lru_cache(maxsize=None)
def _edge_jet(order: int, dps: int) -> Jet:
    # exp(x ln(4 pi e / kappa)) Gamma(1 + x); the log is 1 + ln(4 pi) - Lambda
    with mp.workdps(dps):
        rate = LogPoly((1 + mpmath.log(4 * mp.pi), -1))
        return exp_ln_jet(rate, order) * gamma_jet(1, order)


def _check_id(eq):
    n, m, l = eq
    if m < 0 or n < -m or l < 0:
        raise DomainError(f"invalid matching equation id {eq}")


def assemble_Vb(eq: tuple[int, int, int], table: CoefficientTable) -> AffineForm:
    """Bulk side ``V_b(n, m, l)`` as an affine form in at most one unknown c."""
    _check_id(eq)
    n, m, l = eq
    top = n + m + 1
    acc = _Accumulator(table)
    for j in range(max(0, -n), m + 1):
        scale = Fraction((-1) ** j, 4**j * math.factorial(j))
        for k in range(l, top + 1):
            bracket = _bulk_bracket(n, j, parity(k), top, mp.dps)
            w = scale * Fraction(math.factorial(k), math.factorial(k - l))
            acc.add(("c", n + j, m - j, k), bracket.derivative(k - l) * w)
    return acc.result(eq)


def assemble_Ve(eq: tuple[int, int, int], table: CoefficientTable) -> AffineForm:
    """Edge side ``V_e(n, m, l)`` as an affine form in at most one unknown Q."""
    _check_id(eq)
    n, m, l = eq
    acc = _Accumulator(table)
    top = m + n + 1
    if l > top:
        return acc.result(eq)
    edge = _edge_jet(top, mp.dps)
    pi = mp.pi
    for j in range(max(l, n + 1), top + 1):
        w = 1 / (pi**j * math.factorial(j - l))
        acc.add(("Q", j - n - 1, top - j), edge.derivative(j - l) * w)
    return acc.result(eq)


def matching_residual(eq, table: CoefficientTable) -> AffineForm:
    """``V_b - V_e`` for one equation."""
    return assemble_Vb(eq, table) - assemble_Ve(eq, table)


def equation_ids(max_order: int, max_m: int | None = None) -> Iterator[tuple[int, int, int]]:
    """All ids with ``n + m <= max_order`` and ``m <= max_m`` (default max_order)."""
    max_m = max_order if max_m is None else max_m
    for m in range(max_m + 1):
        for n in range(-m, max_order - m + 1):
            for l in range(n + m + 2):
                yield (n, m, l)


def _solve_unknown(eq, expected, table, digits):
    aff = matching_residual(eq, table)
    if aff.unknown != expected:
        found = "none" if aff.unknown is None else _fmt_key(aff.unknown)
        raise OrderingError(
            f"equation {eq} was expected to fix {_fmt_key(expected)} but its unknown is {found}",
            equation=eq,
        )
    if not aff.coeff.is_constant() or aff.coeff.is_zero():
        raise OrderingError(f"equation {eq}: unknown enters with a non-constant weight", eq)
    value = (-aff.known / aff.coeff).chop(mpf(10) ** (-(digits + 2)))
    kind, *idx = expected
    bound = sum(idx[:2]) + (1 if kind == "c" else 0)
    if value.degree > bound:
        # structurally present high powers must cancel to working precision
        scale = max(value.max_abs(), mpf(1))
        tail = LogPoly([0] * (bound + 1) + list(value.coeffs[bound + 1:])).max_abs()
        if tail > scale * mpf(10) ** (-(digits - 5)):
            raise OrderingError(
                f"{_fmt_key(expected)} has degree {value.degree} > {bound} in ln(kappa)", eq
            )
        value = value.truncate(bound)
    return value


def run_matching(max_order: int, digits: int | None = None, allow_beyond: bool = False) -> CoefficientTable:
    """Solve ``V_b = V_e`` recursively for every coefficient with ``n + m <= max_order``."""
    if max_order < 0:
        raise DomainError(f"max_order must be >= 0, got {max_order}")
    if max_order > MAX_ORDER and not allow_beyond:
        raise DomainError(f"max_order is capped at {MAX_ORDER}; pass allow_beyond=True to exceed it")
    digits = default_digits() if digits is None else int(digits)
    table = CoefficientTable(max_order=max_order, digits=digits)
    with working_precision(digits + GUARD_DIGITS):
        for n in range(max_order + 1):
            table.q[(n, 0)] = LogPoly.const(q_closed_form(n))
        for p in range(max_order + 1):
            for b in range(1, p + 1):
                a = p - b
                key = ("Q", a, b)
                table.set(key, _solve_unknown((-a - 1, p, 0), key, table, digits))
            for k in range(p + 1, -1, -1):
                for m in range(p + 1):
                    key = ("c", p - m, m, k)
                    table.set(key, _solve_unknown((p - m, m, k), key, table, digits))
    return table


# ---------------------------------------------------------------------------
# series assembled from the table


def capacitance_series_from_table(table: CoefficientTable, order: int | None = None) -> SmallKappaSeries:
    """Capacitance ``1/(4 kappa) + (1/2pi) sum_m (c[0,m,0] - 2 c[0,m,1]) kappa^m``.

    Returned in the ``(1/pi) sum_j b_j(L) (kappa/8pi)^j`` normalization
    with ``L = ln(16 pi / kappa)``.
    """
    order = table.max_order if order is None else order
    table.require(order)
    with working_precision(table.digits + GUARD_DIGITS):
        pi = mp.pi
        coeffs = {-1: LogPoly.const(Fraction(1, 32))}
        for m in range(order + 1):
            lin = table.c[(0, m, 0)] - 2 * table.c[(0, m, 1)]
            coeffs[m] = (lin * ((8 * pi) ** m / 2)).swap_log_variable()
    return SmallKappaSeries(coeffs=coeffs, digits=table.digits)


def t2_series_from_table(table: CoefficientTable, order: int | None = None) -> SeriesExpansion:
    """Second moment ``T_2`` as a series in ``kappa`` truncated at ``kappa^order``.

    ``T_2 = pi/(8 kappa) + sum_j kappa^j [c[0,j,0]/2 - 5/3 c[0,j,1] + 4 c[0,j,2]
    - 8 c[0,j,3] + c[1,j-1,0] - 2 c[1,j-1,1]]``, absent entries being zero.
    Coefficients are stored as polynomials in ``L``.
    """
    order = table.max_order if order is None else order
    table.require(order)

    def c(n, m, k):
        if m < 0 or k > n + m + 1:
            return LogPoly()
        return table.c[(n, m, k)]

    with working_precision(table.digits + GUARD_DIGITS):
        coeffs = {-1: LogPoly.const(mp.pi / 8)}
        for j in range(order + 1):
            term = (
                c(0, j, 0) / 2
                - c(0, j, 1) * Fraction(5, 3)
                + 4 * c(0, j, 2)
                - 8 * c(0, j, 3)
                + c(1, j - 1, 0)
                - 2 * c(1, j - 1, 1)
            )
            coeffs[j] = term.swap_log_variable()
    return SeriesExpansion(coeffs=coeffs, scale=1, prefactor=1, digits=table.digits, name="T2")


def _bulk_terms(table, order):
    for (n, m, k), value in table.c.items():
        if n + m <= order and not value.is_zero():
            yield n, m, k, value


def f_bulk_eval(table: CoefficientTable, x, kappa, order: int | None = None) -> float:
    """Bulk ansatz for ``f(x)`` truncated at total order ``n + m <= order``.

    Valid only away from the edges; requires ``1 - x^2 >= 10 kappa``.
    """
    order = table.max_order if order is None else order
    table.require(order)
    x = float(x)
    kappa = float(kappa)
    if kappa <= 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if 1 - x * x < 10 * kappa:
        raise ValidityError(f"x = {x} is outside the bulk window 1 - x^2 >= 10 kappa at kappa = {kappa}")
    with working_precision(table.digits):
        xm = mpf(x)
        km = mpf(kappa)
        lam = mpmath.log(km)
        w = mpmath.log((1 - xm) / (1 + xm))
        one_minus = 1 - xm * xm
        total = mpmath.mpc(0)
        ipi = mpmath.mpc(0, mp.pi)
        for n, m, k, value in _bulk_terms(table, order):
            inner = mpmath.mpc(0)
            for p in range(k + 1):
                if not parity(k - p + 1):
                    continue
                inner += mpmath.binomial(k, p) * ipi ** (k - p) * w**p
            total += (
                value(lam) * km ** (n + m) * (-1) ** n * xm ** parity(k)
                / one_minus ** (n + mpf(1) / 2) * inner
            )
        total = total / mp.pi
        if abs(total.imag) > mpf(10) ** (-(table.digits - 20)) * max(1, abs(total.real)):
            raise ValidityError(f"bulk density has an imaginary residue {mpmath.nstr(total.imag, 5)}")
        return float(mpmath.sqrt(one_minus) / km + total.real)


def resolvent_bulk_eval(table: CoefficientTable, z, kappa, order: int | None = None) -> complex:
    """Bulk resolvent ``pi z/kappa - pi sqrt(z^2-1)/kappa + sum c ...``.

    The square root is the branch with its cut on ``[-1, 1]``; requires
    ``|z - 1| >= 10 kappa`` and ``|z + 1| >= 10 kappa``.
    """
    order = table.max_order if order is None else order
    table.require(order)
    z = complex(z)
    kappa = float(kappa)
    if kappa <= 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if abs(z - 1) < 10 * kappa or abs(z + 1) < 10 * kappa:
        raise ValidityError(f"z = {z} lies inside an edge disk of radius 10 kappa")
    if z.imag == 0 and -1 <= z.real <= 1:
        raise ValidityError("z lies on the cut [-1, 1]")
    with working_precision(table.digits):
        zm = mpmath.mpc(z)
        km = mpf(kappa)
        lam = mpmath.log(km)
        root = mpmath.sqrt(zm - 1) * mpmath.sqrt(zm + 1)
        w = mpmath.log((zm - 1) / (zm + 1))
        total = mp.pi * (zm - root) / km
        for n, m, k, value in _bulk_terms(table, order):
            total += value(lam) * km ** (n + m) * zm ** parity(k) / ((zm * zm - 1) ** n * root) * w**k
        return complex(total)


# ---------------------------------------------------------------------------
# JSON export


def table_to_json(table: CoefficientTable) -> dict:
    """Serializable form; polynomials are in ``ln(kappa)``, ascending."""
    entries = []
    for (n, m, k), value in sorted(table.c.items()):
        entries.append({"kind": "c", "n": n, "m": m, "k": k, "poly_lnk": value.to_strings(table.digits)})
    for (n, m), value in sorted(table.q.items()):
        entries.append({"kind": "Q", "n": n, "m": m, "poly_lnk": value.to_strings(table.digits)})
    return {"precision": table.digits, "P": table.max_order, "variable": "ln_kappa", "entries": entries}


def table_from_json(doc) -> CoefficientTable:
    if isinstance(doc, str):
        doc = json.loads(doc)
    digits = int(doc["precision"])
    table = CoefficientTable(max_order=int(doc["P"]), digits=digits)
    with working_precision(digits + GUARD_DIGITS):
        for e in doc["entries"]:
            poly = LogPoly(e["poly_lnk"])
            if e["kind"] == "c":
                table.c[(e["n"], e["m"], e["k"])] = poly
            elif e["kind"] == "Q":
                table.q[(e["n"], e["m"])] = poly
            else:
                raise DomainError(f"unknown entry kind {e['kind']!r}")
    return table
