"""Capacitance of the circular-disk capacitor from the Love integral equation.

Numerical solution for any separation, the small- and large-separation
expansions, the matching recursion that generates the small-separation
coefficients, and the mapping to the Lieb-Liniger ground-state energy.
"""

from .errors import (
    AccuracyError,
    ConvergenceError,
    DependencyError,
    DomainError,
    LovecapError,
    OrderingError,
    ValidityError,
)
from .large import capacitance_large_series, legendre_moment, solve_large_system
from .lieb_liniger import gamma_of_kappa, ground_state_energy, kappa_of_gamma
from .matching import capacitance_series_from_table, run_matching, t2_series_from_table
from .nystrom import moment, resolvent_numeric, solve_love
from .selector import capacitance, physical_capacitance
from .small import eval_small_kappa, kirchhoff_capacitance
from .special import Jet, LogPoly, constants, gamma_jet, polygamma

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ConvergenceError",
    "DependencyError",
    "DomainError",
    "LovecapError",
    "OrderingError",
    "ValidityError",
    "capacitance",
    "physical_capacitance",
    "solve_love",
    "moment",
    "resolvent_numeric",
    "eval_small_kappa",
    "kirchhoff_capacitance",
    "capacitance_large_series",
    "legendre_moment",
    "solve_large_system",
    "run_matching",
    "capacitance_series_from_table",
    "t2_series_from_table",
    "gamma_of_kappa",
    "kappa_of_gamma",
    "ground_state_energy",
    "LogPoly",
    "Jet",
    "constants",
    "gamma_jet",
    "polygamma",
]
