"""Nystrom solution of the Love equation.

Solves

    f(x) - (kappa/pi) int_{-1}^{1} f(y) / (kappa^2 + (x - y)^2) dy = 1

on a composite Gauss-Legendre grid and evaluates the capacitance
``C = (1/2pi) int f``, the moments ``T_n = int x^n f`` and the resolvent
``R(z) = int f(x) / (z - x) dx``.

Only the nodes in ``(0, 1)`` are unknowns: the kernel column of the mirror
node ``-y`` is folded onto ``y``, which makes ``f`` exactly even.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import AccuracyError, ConvergenceError, DomainError

__all__ = [
    "KAPPA_MIN",
    "DEFAULT_TOLERANCE",
    "DEFAULT_NODE_BUDGET",
    "QuadratureGrid",
    "LoveSolution",
    "make_grid",
    "solve_love",
    "capacitance_numeric",
    "moment",
    "resolvent_numeric",
]

KAPPA_MIN = 5e-3
DEFAULT_TOLERANCE = 1e-10
DEFAULT_NODE_BUDGET = 40_000
PANEL_ORDER = 8
# rows assembled at once when applying the kernel without storing it
_CHUNK = 1024


@dataclass(frozen=True)
class QuadratureGrid:
    """Composite Gauss-Legendre rule on ``[-1, 1]``, symmetric under ``x -> -x``.

    ``edges`` are the panel boundaries on ``[0, 1]``; the panels on
    ``[-1, 0]`` are their mirror images.
    """

    nodes: np.ndarray
    weights: np.ndarray
    edges: np.ndarray
    order: int

    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def half(self) -> slice:
        """Slice selecting the nodes in ``(0, 1)``."""
        return slice(self.size // 2, None)

    @property
    def max_panel_width(self) -> float:
        return float(np.max(np.diff(self.edges)))


def make_grid(n_panels: int, order: int = PANEL_ORDER) -> QuadratureGrid:
    """Uniform panels of width ``1/n_panels`` on each half of ``[-1, 1]``."""
    if n_panels < 1 or order < 1:
        raise DomainError("need at least one panel and one node per panel")
    t, wt = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    h = np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + 0.5 * h[:, None] * t[None, :]).ravel()
    w = (0.5 * h[:, None] * wt[None, :]).ravel()
    nodes = np.concatenate([-x[::-1], x])
    weights = np.concatenate([w[::-1], w])
    return QuadratureGrid(nodes=nodes, weights=weights, edges=edges, order=order)


@dataclass(frozen=True)
class LoveSolution:
    kappa: float
    grid: QuadratureGrid
    f_values: np.ndarray
    error_estimate: float = 0.0
    history: tuple = field(default=(), compare=False)

    @property
    def capacitance(self) -> float:
        return capacitance_numeric(self)

    def interpolate(self, x) -> np.ndarray:
        """Evaluate ``f`` anywhere through the Nystrom interpolant."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return 1.0 + _apply_kernel(x, self.grid.nodes, self.grid.weights * self.f_values, self.kappa)

    def residual(self) -> float:
        """Max over nodes of ``|f - K f - 1|``."""
        half = self.grid.half
        x = self.grid.nodes[half]
        kf = _apply_kernel(x, self.grid.nodes, self.grid.weights * self.f_values, self.kappa)
        return float(np.max(np.abs(self.f_values[half] - kf - 1.0)))


def _apply_kernel(x, y, wf, kappa) -> np.ndarray:
    # (kappa/pi) sum_j wf_j / (kappa^2 + (x_i - y_j)^2), row blocks to bound memory
    out = np.empty(x.size)
    k2 = kappa * kappa
    for start in range(0, x.size, _CHUNK):
        d = x[start:start + _CHUNK, None] - y[None, :]
        np.square(d, out=d)
        d += k2
        out[start:start + _CHUNK] = (wf[None, :] / d).sum(axis=1)
    return out * (kappa / math.pi)


def _solve_reduced(kappa: float, grid: QuadratureGrid) -> np.ndarray:
    half = grid.half
    x = grid.nodes[half]
    w = grid.weights[half]
    k2 = kappa * kappa
    a = np.subtract.outer(x, x)
    np.square(a, out=a)
    a += k2
    np.reciprocal(a, out=a)
    b = np.add.outer(x, x)
    np.square(b, out=b)
    b += k2
    np.reciprocal(b, out=b)
    a += b
    del b
    a *= (-kappa / math.pi) * w[None, :]
    a[np.diag_indices_from(a)] += 1.0
    f_half = scipy.linalg.solve(a, np.ones(x.size), overwrite_a=True, check_finite=False)
    return np.concatenate([f_half[::-1], f_half])


def _check_kappa(kappa) -> float:
    kappa = float(kappa)
    if not (kappa > 0 and math.isfinite(kappa)):
        raise DomainError(f"kappa must be positive and finite, got {kappa}")
    return kappa


def solve_love(
    kappa: float,
    tolerance: float = DEFAULT_TOLERANCE,
    node_budget: int = DEFAULT_NODE_BUDGET,
    order: int = PANEL_ORDER,
) -> LoveSolution:
    """Solve the Love equation, doubling the panel count until converged.

    Panels start at width ``min(kappa/2, 1/8)`` with ``order`` Gauss points
    each and are doubled until two successive capacitances differ by less
    than ``tolerance`` (or by less than the float64 round-off floor
    ``1e3 eps C``).  ``node_budget`` caps the total number of nodes on
    ``[-1, 1]``.  The finer of the last two solutions is returned; its
    ``error_estimate`` is the larger of the last capacitance change and the
    max nodal residual.
    """
    kappa = _check_kappa(kappa)
    if not 1e-12 <= tolerance <= 1e-2:
        raise DomainError(f"tolerance must lie in [1e-12, 1e-2], got {tolerance}")
    if order < 8:
        raise DomainError(f"per-panel Gauss order must be >= 8, got {order}")
    if kappa < KAPPA_MIN:
        raise ConvergenceError(
            f"kappa = {kappa} is below {KAPPA_MIN}: the dense Nystrom system exceeds the node "
            "budget; use the small-kappa series (method 'small') instead"
        )
    width = min(kappa / 2, 1 / 8)
    n_panels = math.ceil(1 / width - 1e-9)
    history = []
    previous = None
    while True:
        if 2 * n_panels * order > node_budget:
            best = previous.capacitance if previous is not None else None
            achieved = abs(history[-1] - history[-2]) if len(history) > 1 else None
            raise ConvergenceError(
                f"node budget {node_budget} exhausted at kappa = {kappa} before reaching "
                f"tolerance {tolerance} (best C = {best}, achieved {achieved})",
                best=best,
                achieved=achieved,
            )
        grid = make_grid(n_panels, order)
        f = _solve_reduced(kappa, grid)
        current = LoveSolution(kappa, grid, f)
        history.append(current.capacitance)
        if previous is not None:
            change = abs(history[-1] - history[-2])
            floor = 1e3 * np.finfo(float).eps * abs(history[-1])
            if change < max(tolerance, floor):
                estimate = max(change, current.residual())
                return LoveSolution(kappa, grid, f, estimate, tuple(history))
        previous = current
        n_panels *= 2


def capacitance_numeric(sol: LoveSolution) -> float:
    """``(1/2pi) sum_i w_i f(x_i)``."""
    return float(np.dot(sol.grid.weights, sol.f_values) / (2 * math.pi))


def moment(sol: LoveSolution, n: int) -> float:
    """``T_n = sum_i w_i x_i^n f(x_i)``; odd moments are exactly zero."""
    if n < 0:
        raise DomainError(f"moment order must be >= 0, got {n}")
    if n % 2:
        return 0.0
    return float(np.dot(sol.grid.weights * sol.grid.nodes**n, sol.f_values))


def _distance_to_cut(z: complex) -> float:
    if -1 <= z.real <= 1:
        return abs(z.imag)
    return abs(z - (1 if z.real > 0 else -1))


def resolvent_numeric(sol: LoveSolution, z, max_nodes: int = 400_000) -> complex:
    """``R(z) = sum_i w_i f(x_i) / (z - x_i)``.

    The quadrature needs panels narrower than a tenth of the distance from
    ``z`` to ``[-1, 1]``.  When the solution grid is coarser, ``f`` is
    resampled on a finer grid through the Nystrom interpolant; if that
    grid would exceed ``max_nodes`` the point is rejected.
    """
    z = complex(z)
    dist = _distance_to_cut(z)
    if dist == 0:
        raise AccuracyError(f"z = {z} lies on the cut [-1, 1]")
    grid, f = sol.grid, sol.f_values
    if 10 * grid.max_panel_width > dist:
        n_panels = math.ceil(10 / dist)
        if 2 * n_panels * grid.order > max_nodes:
            raise AccuracyError(
                f"z = {z} is {dist:.3g} from the cut; resolving it needs more than {max_nodes} nodes"
            )
        grid = make_grid(n_panels, grid.order)
        f = sol.interpolate(grid.nodes)
    return complex(np.sum(grid.weights * f / (z - grid.nodes)))
