import math

import numpy as np
import pytest

from lovecap import large, nystrom
from lovecap.errors import AccuracyError, ConvergenceError, DomainError


def global_gauss_capacitance(kappa: float, n: int = 400):
    """Independent oracle: one global Gauss-Legendre rule, plain dense solve."""
    x, w = np.polynomial.legendre.leggauss(n)
    k = (kappa / math.pi) / (kappa**2 + (x[:, None] - x[None, :]) ** 2)
    f = np.linalg.solve(np.eye(n) - k * w[None, :], np.ones(n))
    return float(w @ f) / (2 * math.pi), float(w @ (x**2 * f))


@pytest.fixture(scope="module")
def sol1():
    return nystrom.solve_love(1.0)


def test_grid_is_symmetric_and_exact_for_polynomials():
    g = nystrom.make_grid(4)
    assert g.size == 64
    np.testing.assert_allclose(g.nodes, -g.nodes[::-1])
    assert g.weights.sum() == pytest.approx(2.0, abs=1e-14)
    assert (g.weights * g.nodes**14).sum() == pytest.approx(2 / 15, abs=1e-14)
    assert g.max_panel_width == pytest.approx(0.25)
    with pytest.raises(DomainError):
        nystrom.make_grid(0)


@pytest.mark.parametrize("kappa", [0.3, 1.0, 3.0])
def test_capacitance_against_global_gauss(kappa):
    c_ref, t2_ref = global_gauss_capacitance(kappa)
    sol = nystrom.solve_love(kappa)
    assert sol.capacitance == pytest.approx(c_ref, abs=1e-10)
    assert nystrom.moment(sol, 2) == pytest.approx(t2_ref, abs=1e-9)


def test_capacitance_against_converged_legendre_system():
    ref = large.solve_large_system(10.0, 12).capacitance
    assert nystrom.solve_love(10.0).capacitance == pytest.approx(ref, abs=1e-12)


def test_huge_kappa_approaches_uniform_density():
    kappa = 1e6
    c = nystrom.solve_love(kappa).capacitance
    assert c == pytest.approx(1 / math.pi + 2 / (math.pi**2 * kappa), rel=1e-12)


def test_solution_properties(sol1):
    assert sol1.error_estimate <= 1e-10
    assert sol1.residual() < 1e-12
    np.testing.assert_allclose(sol1.f_values, sol1.f_values[::-1], rtol=0, atol=0)
    assert nystrom.moment(sol1, 1) == 0.0 and nystrom.moment(sol1, 3) == 0.0
    assert nystrom.moment(sol1, 0) == pytest.approx(2 * math.pi * sol1.capacitance, rel=1e-15)
    # the interpolant reproduces the nodal values
    half = sol1.grid.half
    np.testing.assert_allclose(sol1.interpolate(sol1.grid.nodes[half][:5]), sol1.f_values[half][:5], atol=1e-12)
    # density is largest in the middle and above one
    assert sol1.interpolate(0.0)[0] > sol1.interpolate(0.99)[0] > 1.0


def test_history_converges(sol1):
    h = sol1.history
    assert len(h) >= 2 and abs(h[-1] - h[-2]) < 1e-10


def test_tolerance_and_order_validation():
    with pytest.raises(DomainError):
        nystrom.solve_love(1.0, tolerance=1e-14)
    with pytest.raises(DomainError):
        nystrom.solve_love(1.0, tolerance=0.1)
    with pytest.raises(DomainError):
        nystrom.solve_love(1.0, order=4)
    with pytest.raises(DomainError):
        nystrom.solve_love(-1.0)
    with pytest.raises(DomainError):
        nystrom.solve_love(float("nan"))
    with pytest.raises(DomainError):
        nystrom.moment(nystrom.solve_love(1.0), -1)


def test_tiny_kappa_points_to_series():
    with pytest.raises(ConvergenceError, match="small"):
        nystrom.solve_love(1e-3)


def test_node_budget_exhaustion_reports_best():
    with pytest.raises(ConvergenceError) as info:
        nystrom.solve_love(0.05, tolerance=1e-12, node_budget=700)
    assert "node budget" in str(info.value)


def test_resolvent_large_z_expansion(sol1):
    t0 = nystrom.moment(sol1, 0)
    t2 = nystrom.moment(sol1, 2)
    t4 = nystrom.moment(sol1, 4)
    for z in (10.0, 100.0):
        r = nystrom.resolvent_numeric(sol1, z)
        assert r.imag == 0.0
        assert (z * r.real - t0 - t2 / z**2) == pytest.approx(t4 / z**4, rel=0.02)


def test_resolvent_near_cut_is_resampled(sol1):
    # frozen reference, stable under refinement of the solution
    r = nystrom.resolvent_numeric(sol1, 2.0)
    assert r.real == pytest.approx(1.992283020042201, abs=1e-12)
    fine = nystrom.solve_love(1.0, tolerance=1e-12)
    assert nystrom.resolvent_numeric(fine, 2.0).real == pytest.approx(r.real, abs=1e-12)


def test_resolvent_conjugate_symmetry(sol1):
    z = 0.3 + 0.5j
    assert nystrom.resolvent_numeric(sol1, z) == pytest.approx(nystrom.resolvent_numeric(sol1, z.conjugate()).conjugate())


def test_resolvent_rejects_cut(sol1):
    with pytest.raises(AccuracyError):
        nystrom.resolvent_numeric(sol1, 0.5)
    with pytest.raises(AccuracyError):
        nystrom.resolvent_numeric(sol1, 1.0 + 1e-7, max_nodes=10_000)
