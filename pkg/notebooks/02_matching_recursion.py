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
# # Generating the close-plate coefficients
#
# The resolvent of the density is expanded twice: once in the bulk of the
# plates and once near an edge. Demanding that both agree fixes every
# coefficient, one equation at a time. Each coefficient is a polynomial in
# `ln kappa`, computed here at 50 digits.

# %%
from mpmath import mp

from lovecap import matching, nystrom
from lovecap.small import builtin_coefficients
from lovecap.special import working_precision

table = matching.run_matching(3, 50)
print(f"{len(table.c)} bulk and {len(table.q)} edge coefficients")

# %% [markdown]
# A few low-order bulk coefficients, as polynomials in `ln kappa`
# (ascending powers).

# %%
for key in [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 2), (0, 2, 0)]:
    print(key, table.c[key].to_strings(12))

# %% [markdown]
# ## Consistency
#
# There are more equations than unknowns. The ones not used to solve for
# anything must hold anyway.

# %%
with working_precision(60):
    ids = [eq for eq in matching.equation_ids(3) if eq[0] + eq[1] <= 3]
    worst = max(matching.matching_residual(eq, table).value.max_abs() for eq in ids)
print(f"{len(ids)} equations, largest residual {mp.nstr(worst, 3)}")

# %% [markdown]
# ## The capacitance series
#
# The capacitance coefficients `b_j` follow from the `k = 0, 1` bulk terms.
# Rewritten in `L = ln(16 pi / kappa)` they match the stored table.

# %%
full = matching.run_matching(7, 50)
derived = matching.capacitance_series_from_table(full)
stored = builtin_coefficients(50)
with working_precision(50):
    for j in range(-1, 8):
        gap = (derived.b(j) - stored.b(j)).max_abs() / stored.b(j).max_abs()
        print(f"b_{j:<2} degree {stored.b(j).degree}  relative gap {mp.nstr(gap, 2)}")

# %% [markdown]
# The same table gives the second moment of the density and the density
# itself away from the edges.

# %%
kappa = 0.05
t2 = matching.t2_series_from_table(full, 4)
sol = nystrom.solve_love(kappa)
print(f"T2: series {t2(kappa):.12f}  numerical {nystrom.moment(sol, 2):.12f}")
print(f"f(0): bulk {matching.f_bulk_eval(full, 0.0, kappa, 3):.10f}  numerical {sol.interpolate(0.0)[0]:.10f}")
