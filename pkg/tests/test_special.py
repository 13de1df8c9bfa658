import math
from fractions import Fraction

import mpmath
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from lovecap.errors import DomainError
from lovecap.special import (
    EULER_NUMBERS,
    Jet,
    LogPoly,
    constants,
    default_digits,
    euler_moment_identity,
    exp_ln_jet,
    gamma_jet,
    parity,
    polygamma,
    to_mpf,
    working_precision,
)

# reference digits typed from standard tables
PI_50 = "3.1415926535897932384626433832795028841971693993751"
ZETA3_50 = "1.2020569031595942853997381615114499907649862923405"
EULER_GAMMA_50 = "0.57721566490153286060651209008240243104215933593992"
LN2_50 = "0.69314718055994530941723212145817656807550013436026"


def borwein_zeta(s: int, n: int = 80) -> mpf:
    """zeta(s) from Borwein's accelerated alternating series (independent oracle)."""
    d = [mpf(0)] * (n + 1)
    acc = mpf(0)
    for i in range(n + 1):
        acc += mpf(math.factorial(n + i - 1) * 4**i) / (math.factorial(n - i) * math.factorial(2 * i))
        d[i] = n * acc
    eta = -sum((-1) ** k * (d[k] - d[n]) / mpf(k + 1) ** s for k in range(n)) / d[n]
    return eta / (1 - mpf(2) ** (1 - s))


def test_constant_digits():
    c = constants(50)
    with working_precision(50):
        assert abs(c.pi - mpf(PI_50)) < mpf("1e-49")
        assert abs(c.zeta3 - mpf(ZETA3_50)) < mpf("1e-49")
        assert abs(c.euler_gamma - mpf(EULER_GAMMA_50)) < mpf("1e-49")
        assert abs(c.ln2 - mpf(LN2_50)) < mpf("1e-49")
        assert abs(c.sqrt_pi**2 - c.pi) < mpf("1e-48")


@pytest.mark.parametrize("s", [3, 5, 7])
def test_odd_zeta_against_alternating_series(s):
    with working_precision(60):
        oracle = borwein_zeta(s)
    c = constants(50)
    with working_precision(50):
        assert abs(c.zeta(s) - oracle) < mpf("1e-45")


def test_zeta_registry_rejects_unstored():
    with pytest.raises(DomainError):
        constants(30).zeta(9)


def test_euler_numbers_match_mpmath():
    assert EULER_NUMBERS == tuple(int(mpmath.eulernum(n)) for n in range(len(EULER_NUMBERS)))


def test_default_digits_env(monkeypatch):
    monkeypatch.delenv("LOVECAP_PRECISION", raising=False)
    assert default_digits() == 50
    monkeypatch.setenv("LOVECAP_PRECISION", "40")
    assert default_digits() == 40
    monkeypatch.setenv("LOVECAP_PRECISION", "10")
    with pytest.raises(DomainError):
        default_digits()


def test_parity_and_conversion():
    assert [parity(k) for k in range(-2, 4)] == [0, 1, 0, 1, 0, 1]
    with working_precision(30):
        assert to_mpf(Fraction(1, 3)) * 3 == 1
    with pytest.raises(TypeError):
        to_mpf(mpmath.mpc(1, 1))


@pytest.mark.parametrize("k", [0, 1, 2, 3, 5])
@pytest.mark.parametrize("a", ["0.5", "1", "2.5", "7.25", "-0.5", "-1.5", "-3.5", "30"])
def test_polygamma_against_mpmath(k, a):
    with working_precision(50):
        ours = polygamma(k, mpf(a))
        ref = mpmath.psi(k, mpf(a))
        assert abs(ours - ref) <= mpf("1e-45") * max(1, abs(ref))


@pytest.mark.parametrize("a", [0, -1, -4])
def test_polygamma_pole(a):
    with pytest.raises(DomainError):
        polygamma(1, a)


def test_polygamma_negative_order():
    with pytest.raises(DomainError):
        polygamma(-1, 1)


# ---------------------------------------------------------------------------
# LogPoly

coeff = st.integers(-50, 50).map(lambda n: Fraction(n, 7))
polys = st.lists(coeff, max_size=5)
points = st.integers(-30, 30).map(lambda n: Fraction(n, 10))


@settings(max_examples=60, deadline=None)
@given(polys, polys, points)
def test_logpoly_ring_ops_match_evaluation(a, b, t):
    with working_precision(30):
        p, q, x = LogPoly(a), LogPoly(b), to_mpf(t)
        tol = mpf("1e-25") * (1 + abs(p(x)) + abs(q(x))) ** 2
        assert abs((p + q)(x) - (p(x) + q(x))) < tol
        assert abs((p - q)(x) - (p(x) - q(x))) < tol
        assert abs((p * q)(x) - p(x) * q(x)) < tol
        assert abs((p**2)(x) - p(x) ** 2) < tol


@settings(max_examples=40, deadline=None)
@given(polys, points)
def test_swap_log_variable_is_involution(a, t):
    with working_precision(40):
        p = LogPoly(a)
        lam = to_mpf(t)
        swapped = p.swap_log_variable()
        assert abs(swapped(mpmath.log(16 * mp.pi) - lam) - p(lam)) < mpf("1e-30") * (1 + abs(p(lam)))
        assert swapped.swap_log_variable().allclose(p, mpf("1e-30") * (1 + p.max_abs()) * 10**4)


def test_logpoly_canonical_and_helpers():
    with working_precision(30):
        p = LogPoly([1, 2, 0, 0])
        assert p.degree == 1 and LogPoly().degree == -1
        assert LogPoly([0, 0]).is_zero()
        assert p.coeff(5) == 0 and p.constant_term() == 1
        assert LogPoly.lnk()(mpf(3)) == 3
        assert p.truncate(0).coeffs == (1,)
        assert LogPoly([mpf("1e-40"), 1]).chop(mpf("1e-35")).coeffs == (0, 1)
        assert (p / 2).coeffs == (mpf(1) / 2, 1)
        assert p.compose_linear(1, 2).coeffs == (3, 4)
        assert LogPoly([mpf(1) / 2]).to_strings(20) == ["0.5"]
        with pytest.raises(DomainError):
            p / LogPoly.lnk()


# ---------------------------------------------------------------------------
# Jet

jet_coeffs = st.lists(st.integers(-9, 9).map(lambda n: Fraction(n, 4)), min_size=5, max_size=5)


def _jet(cs, lead=None):
    cs = list(cs)
    if lead is not None:
        cs[0] = lead
    return Jet([LogPoly.const(c) for c in cs])


@settings(max_examples=40, deadline=None)
@given(jet_coeffs, jet_coeffs, jet_coeffs)
def test_jet_multiplication_algebra(a, b, c):
    with working_precision(30):
        x, y, z = _jet(a), _jet(b), _jet(c)
        tol = mpf("1e-20")
        assert (x * y).allclose(y * x, tol)
        assert ((x * y) * z).allclose(x * (y * z), tol)
        assert (x * (y + z)).allclose(x * y + x * z, tol)


@settings(max_examples=40, deadline=None)
@given(jet_coeffs, st.integers(1, 5))
def test_jet_reciprocal_exp_log(a, lead):
    with working_precision(30):
        x = _jet(a, lead=Fraction(lead, 2))
        one = Jet.constant(1, x.order)
        assert (x * x.reciprocal()).allclose(one, mpf("1e-20"))
        assert x.log().exp().allclose(x, mpf("1e-18") * 10 ** x.order)


def test_jet_exp_matches_series_of_exponential():
    with working_precision(30):
        e = Jet.variable(6).exp()
        for n in range(7):
            assert abs(e.derivative(n).constant_term() - 1) < mpf("1e-25")


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(1), Fraction(5, 2), Fraction(-1, 2), Fraction(-5, 2)])
def test_gamma_jet_derivatives_against_numeric_differentiation(a):
    with working_precision(40):
        jet = gamma_jet(a, 5)
        x0 = to_mpf(a)
        for n in range(6):
            ref = mpmath.diff(mpmath.gamma, x0, n)
            got = jet.derivative(n).constant_term()
            assert abs(got - ref) < mpf("1e-25") * max(1, abs(ref))


def test_reflected_gamma_jet():
    with working_precision(40):
        jet = gamma_jet(Fraction(3, 2), 4).reflect()
        for n in range(5):
            ref = mpmath.diff(lambda x: mpmath.gamma(mpf(3) / 2 - x), 0, n)
            assert abs(jet.derivative(n).constant_term() - ref) < mpf("1e-25")


def test_exp_ln_jet_with_log_coefficient():
    # exp(x (c0 + c1 Lambda)): the n-th derivative is (c0 + c1 Lambda)^n
    with working_precision(30):
        rate = LogPoly([2, -1])
        jet = exp_ln_jet(rate, 4)
        for n in range(5):
            assert jet.derivative(n).allclose(rate**n, mpf("1e-25"))


def test_jet_log_of_nonconstant_leading_term_fails():
    with working_precision(30):
        j = Jet([LogPoly.lnk(), LogPoly.const(1)])
        with pytest.raises(DomainError):
            j.log()


# ---------------------------------------------------------------------------
# Euler-number log moments


@pytest.mark.parametrize("p", [0, 2, 4, 6])
def test_even_euler_moment(p):
    with working_precision(30):
        closed, quad = euler_moment_identity(p, "even")
        assert abs(closed - quad) < mpf("1e-10") * max(1, abs(closed))


def _scipy_odd_moment(p):
    # independent float check, substituting x = cos(theta)
    f = lambda th: (2 * math.log(math.tan(th / 2))) ** p * math.cos(th) / math.pi
    return scipy.integrate.quad(f, 0, math.pi / 2, limit=200)[0] + scipy.integrate.quad(f, math.pi / 2, math.pi, limit=200)[0]


@pytest.mark.parametrize("p", [1, 3])
def test_odd_euler_moment_quadrature(p):
    with working_precision(30):
        _, q2 = euler_moment_identity(p, "odd", pieces=2)
        _, q8 = euler_moment_identity(p, "odd", pieces=8)
    assert abs(q2 - q8) < 1e-20
    assert float(q8) == pytest.approx(_scipy_odd_moment(p), rel=1e-8)


def test_odd_euler_moment_first_value():
    # int x ln((1-x)/(1+x)) / (pi sqrt(1-x^2)) dx = -2
    with working_precision(30):
        _, q = euler_moment_identity(1, "odd")
        assert abs(q + 2) < mpf("1e-25")


def test_euler_moment_domain():
    with pytest.raises(DomainError):
        euler_moment_identity(2, "mixed")
    with pytest.raises(DomainError):
        euler_moment_identity(9, "even")
