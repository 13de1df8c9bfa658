"""Numbered acceptance checks shared by the test-suite and ``lovecap check``.

Each check returns a :class:`CriterionResult`; wall-clock budgets are part
of the pass condition.
"""

from __future__ import annotations

import functools
import math
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from mpmath import mp, mpf

from . import large, lieb_liniger, matching, nystrom, small, tables
from .special import LogPoly, euler_moment_identity, working_precision

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all"]

DIGITS = 50


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number} {self.name}: {self.detail} ({self.seconds:.1f} s)"


@functools.lru_cache(maxsize=None)
def _table(order: int):
    return matching.run_matching(order, DIGITS)


def _nys(kappa: float) -> float:
    return nystrom.solve_love(kappa, 1e-10).capacitance


def kirchhoff_regime():
    worst = []
    ok = True
    for kappa, tol in ((0.02, 1e-3), (0.005, 1e-4)):
        c = _nys(kappa)
        rel = abs(c - small.kirchhoff_capacitance(kappa)) / c
        ok &= rel < tol
        worst.append(f"kappa={kappa}: rel {rel:.2e} < {tol:g}")
    return ok, "; ".join(worst), 60


def small_series():
    errs = {k: abs(small.eval_small_kappa(k, 7) - _nys(k)) for k in (0.05, 0.1, 0.2)}
    ok = all(e < 1e-6 for e in errs.values())
    return ok, ", ".join(f"kappa={k}: {e:.1e}" for k, e in errs.items()), 120


def large_series():
    ok = True
    parts = []
    for k in (5.0, 10.0, 50.0):
        series = large.capacitance_large_series(k)
        e_nys = abs(series - _nys(k))
        e_sys = abs(large.solve_large_system(k, 3).capacitance - series)
        ok &= e_nys < 1e-6 and e_sys < 1e-6
        parts.append(f"kappa={k:g}: vs nystrom {e_nys:.1e}, vs M=3 {e_sys:.1e}")
    return ok, "; ".join(parts), 30


def _expected_first_order():
    # reference values as polynomials in L = ln(16 pi/kappa), then moved to ln(kappa)
    pi, sp = mp.pi, mp.sqrt(mp.pi)
    in_l = {
        ("c", 0, 0, 0): LogPoly((mpf(1) / 2, mpf(1) / 2)),
        ("c", 0, 0, 1): LogPoly.const(mpf(1) / 2),
        ("c", 0, 1, 0): LogPoly((-2 / (8 * pi), 0, 1 / (8 * pi))),
        ("c", 0, 1, 1): LogPoly(),
        ("c", 1, 0, 2): LogPoly.const(1 / (8 * pi)),
        ("Q", 0, 1): LogPoly((0, 1 / (8 * sp))),
        ("Q", 0, 0): LogPoly.const(sp / 2),
        ("Q", 1, 0): LogPoly.const(-3 * sp / 32),
    }
    return {key: poly.swap_log_variable() for key, poly in in_l.items()}


def engine_exactness():
    table = matching.run_matching(1, DIGITS)
    with working_precision(DIGITS):
        expected = _expected_first_order()
        gaps = {key: (table.get(key) - poly).max_abs() for key, poly in expected.items()}
    worst_key = max(gaps, key=gaps.get)
    worst = gaps[worst_key]
    return worst < 1e-40, f"{len(gaps)} coefficients, worst {worst_key} off by {float(worst):.1e}", 10


def series_rederivation():
    derived = matching.capacitance_series_from_table(_table(7))
    builtin = small.builtin_coefficients(DIGITS)
    ok = True
    parts = []
    with working_precision(DIGITS):
        for j in range(-1, 8):
            ref = builtin.coeffs[j]
            scale = max(ref.max_abs(), mpf(10) ** -DIGITS)
            rel = float((derived.coeffs[j] - ref).max_abs() / scale)
            tol = 1e-30 if j <= 4 else 1e-25
            ok &= rel < tol
            parts.append(f"b{j}:{rel:.0e}")
    return ok, " ".join(parts), 600


def over_determination():
    table = _table(4)
    worst = mpf(0)
    count = 0
    with working_precision(DIGITS + matching.GUARD_DIGITS):
        for eq in matching.equation_ids(4):
            n, m, _ = eq
            if n + m > 4:
                continue
            worst = max(worst, matching.matching_residual(eq, table).value.max_abs())
            count += 1
    return worst < mpf("1e-35"), f"{count} equations, worst residual {float(worst):.1e}", None


def legendre_exactness():
    ok = large.legendre_moment(0, 0) == 2 and large.legendre_moment(2, 2) == Fraction(4, 15)
    zeros = [
        (n, l) for n in range(11) for l in range(11)
        if (l < n or (n + l) % 2) and large.legendre_moment(n, l) != 0
    ]
    ok &= not zeros
    worst = 0.0
    for k in (1.0, 2.0, 5.0, 10.0, 100.0):
        a0 = large.solve_large_system(k, 0).a[0]
        closed = 1 / (1 - 2 / (math.pi * k))
        worst = max(worst, abs(a0 - closed) / closed)
    ok &= worst <= 4 * 2.0**-52
    return ok, f"F00=2, F22=4/15, parity zeros ok={not zeros}, M=0 rel gap {worst:.1e}", None


def lieb_liniger_checks():
    e_big = lieb_liniger.ground_state_energy(1e4)
    tonks = math.pi**2 / 3
    rel_tonks = abs(e_big / tonks - 1)
    trip = max(
        abs(lieb_liniger.kappa_of_gamma(lieb_liniger.gamma_of_kappa(k)) - k) / k for k in (0.1, 1.0, 10.0)
    )
    e_nys = lieb_liniger.ground_state_energy(1.0, "nystrom")
    e_ser = lieb_liniger.ground_state_energy(1.0, "small-series")
    gap = abs(e_nys - e_ser)
    ok = rel_tonks < 0.01 and trip < 1e-10 and gap < 1e-4
    detail = f"e(1e4) vs pi^2/3 {rel_tonks:.1e}, round trip {trip:.1e}, e(1) backends differ {gap:.1e}"
    return ok, detail, 60


def figure_data():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "fig1.csv"
        tables.write_fig1(path, 0.05, 100.0, 60)
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
        rows = tables.read_fig1(path)
    ok = header == ",".join(tables.FIG1_HEADER) and len(rows) == 60
    empty = [r[0] for r in rows if all(v is None for v in r[1:])]
    ok &= not empty
    worst = 0.0
    for _, c_nys, c_small, c_large in rows:
        pairs = [(a, b) for a, b in ((c_nys, c_small), (c_nys, c_large), (c_small, c_large))
                 if a is not None and b is not None]
        for a, b in pairs:
            worst = max(worst, abs(a - b))
    ok &= worst < 1e-6
    return ok, f"{len(rows)} rows, {len(empty)} without a method, worst pair gap {worst:.1e}", None


def euler_moments():
    worst_even = mpf(0)
    with working_precision(30):
        for p in (0, 2, 4):
            closed, quad = euler_moment_identity(p, "even")
            worst_even = max(worst_even, abs(closed - quad))
        recorded = []
        worst_odd = mpf(0)
        for p in (1, 3):
            _, q2 = euler_moment_identity(p, "odd", pieces=2)
            _, q4 = euler_moment_identity(p, "odd", pieces=4)
            worst_odd = max(worst_odd, abs(q2 - q4))
            recorded.append(f"odd p={p}: {mp.nstr(q4, 12)}")
    ok = worst_even < 1e-10 and worst_odd < 1e-10
    return ok, f"even gap {float(worst_even):.1e}, odd refinement gap {float(worst_odd):.1e}; " + ", ".join(recorded), None


CRITERIA: dict[int, tuple[str, Callable]] = {
    1: ("kirchhoff-regime", kirchhoff_regime),
    2: ("small-kappa-series", small_series),
    3: ("large-kappa-series", large_series),
    4: ("matching-exactness", engine_exactness),
    5: ("series-rederivation", series_rederivation),
    6: ("over-determination", over_determination),
    7: ("legendre-exactness", legendre_exactness),
    8: ("lieb-liniger", lieb_liniger_checks),
    9: ("figure-data", figure_data),
    10: ("euler-moments", euler_moments),
}


def run_criterion(number: int) -> CriterionResult:
    name, check = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail, budget = check()
    except Exception as exc:  # a crash is a failure of that criterion, not of the runner
        return CriterionResult(number, name, False, f"raised {type(exc).__name__}: {exc}",
                               time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        ok = False
        detail += f"; exceeded the {budget} s budget"
    return CriterionResult(number, name, bool(ok), detail, elapsed)


def run_all(numbers=None, report: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for number in sorted(CRITERIA) if numbers is None else numbers:
        result = run_criterion(number)
        if report is not None:
            report(result.line())
        results.append(result)
    return results
