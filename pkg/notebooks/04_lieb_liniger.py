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
# # Bosons with contact repulsion
#
# The same integral equation describes the ground state of the
# Lieb-Liniger gas. The coupling is `gamma = 2 pi kappa / T0` and the energy
# per particle is `e = 4 pi^2 T2 / T0^3`, where `T0` and `T2` are moments of
# the density.

# %%
import math

import numpy as np

from lovecap import lieb_liniger as ll

# %%
print(f"{'gamma':>10} {'kappa':>12} {'e(gamma)':>14} {'e/gamma':>10}")
for gamma in np.geomspace(0.01, 1e4, 10):
    point = ll.lieb_liniger_point(gamma)
    print(f"{gamma:>10.3g} {point.kappa:>12.6g} {point.energy:>14.10f} {point.energy / gamma:>10.4f}")

# %% [markdown]
# Weak coupling: `e` is close to `gamma`. Strong coupling: `e` approaches
# `pi^2 / 3`, the free-fermion value.

# %%
print(f"pi^2/3 = {math.pi**2 / 3:.10f}")
print(f"e(1e4) = {ll.ground_state_energy(1e4):.10f}")

# %% [markdown]
# The close-plate series can stand in for the numerical moments at weak
# coupling.

# %%
for gamma in (0.1, 1.0):
    a = ll.ground_state_energy(gamma, "nystrom")
    b = ll.ground_state_energy(gamma, "small-series")
    print(f"gamma={gamma}: numerical {a:.12f}  series {b:.12f}  gap {abs(a - b):.1e}")
