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
# # Distant plates: a Legendre expansion
#
# For `kappa > 2` the kernel can be expanded in powers of `(x - y) / kappa`.
# Writing the density as a sum of even Legendre polynomials gives a small
# linear system. Its matrix entries are exact rationals.

# %%
import numpy as np

from lovecap import large, nystrom

print("F_n^l for n, l <= 6:")
for n in range(0, 7, 2):
    print(n, [str(large.legendre_moment(n, l)) for l in range(7)])

# %% [markdown]
# ## Convergence in the number of modes
#
# Each extra mode buys roughly two powers of `1/kappa`.

# %%
for kappa in (5.0, 20.0):
    ref = nystrom.solve_love(kappa).capacitance
    errs = [abs(large.solve_large_system(kappa, m).capacitance - ref) for m in range(5)]
    print(f"kappa={kappa}: " + "  ".join(f"M={m}:{e:.1e}" for m, e in enumerate(errs)))

# %% [markdown]
# The density flattens toward 1 as the plates separate.

# %%
xs = np.linspace(0, 1, 6)
for kappa in (3.0, 30.0):
    sol = large.solve_large_system(kappa, 6)
    print(f"kappa={kappa}: f = {np.round(large.f_large_eval(sol, xs), 6)}")
