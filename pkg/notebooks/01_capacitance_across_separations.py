# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Capacitance of two coaxial disks at any separation
#
# Unit-radius disks a distance `kappa` apart. The reduced capacitance
# `C(kappa)` comes from a Fredholm equation of the second kind which we
# solve numerically, and from two expansions: one for close plates and one
# for distant plates.

# %%
import numpy as np

from lovecap import capacitance, eval_small_kappa, kirchhoff_capacitance, solve_love
from lovecap.large import capacitance_large_series

# %% [markdown]
# ## The numerical solution
#
# Composite Gauss-Legendre panels, refined until the capacitance stops
# moving. Close plates need narrow panels since the kernel has width `kappa`.

# %%
for kappa in (0.01, 0.1, 1.0, 10.0):
    sol = solve_love(kappa)
    print(f"kappa={kappa:<6} C={sol.capacitance:.12f}  nodes={sol.grid.size:<6} est. error={sol.error_estimate:.1e}")

# %% [markdown]
# ## Close plates
#
# The parallel-plate term `1/(4 kappa)` plus the logarithmic edge correction
# already does well. The full seventh-order series is far better.

# %%
print(f"{'kappa':>8} {'numerical':>16} {'two-term':>10} {'order 7':>10}")
for kappa in (0.01, 0.05, 0.2, 0.5):
    c = solve_love(kappa).capacitance
    print(f"{kappa:>8} {c:>16.12f} {abs(kirchhoff_capacitance(kappa) - c):>10.1e} "
          f"{abs(eval_small_kappa(kappa) - c):>10.1e}")

# %% [markdown]
# ## Distant plates
#
# In inverse powers of `kappa`; the leading term `1/pi` is twice the
# capacitance of one disk in series.

# %%
for kappa in (5.0, 10.0, 50.0):
    c = solve_love(kappa).capacitance
    print(f"kappa={kappa:<5} series gap {abs(capacitance_large_series(kappa) - c):.1e}")

# %% [markdown]
# ## Where to switch
#
# Gap between each expansion and the numerical value across the middle range.
# Both series are good to about 1e-6 near the crossover points used by the
# automatic selector (1 and 4).

# %%
grid = np.geomspace(0.3, 8, 12)
for kappa in grid:
    c = solve_love(kappa).capacitance
    small_gap = abs(eval_small_kappa(kappa) - c) if kappa <= 1 else np.nan
    large_gap = abs(capacitance_large_series(kappa) - c) if kappa >= 2 else np.nan
    print(f"kappa={kappa:7.3f}  small {small_gap:9.1e}  large {large_gap:9.1e}")

# %%
for kappa in (0.05, 2.0, 20.0):
    r = capacitance(kappa)
    print(f"auto at kappa={kappa}: {r.value:.12f} via {r.method} (error ~{r.error_estimate:.0e})")
