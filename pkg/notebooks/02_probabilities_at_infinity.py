# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Probabilities at infinity
#
# Exact profiles G_k for a few fields, how finite n approaches them, and the
# perturbation product formula.

# %%
import numpy as np

from symsum import asymptotic_pgf, convergence_check, make_field, perturbed_pgf, PolyFunction
from symsum.asymptotic import geometric_decay_rate, smith_table

f8 = make_field(2, 3)
{k: [str(x) for x in asymptotic_pgf(f8, k).probabilities()] for k in range(1, 8)}

# %% [markdown]
# Over F_4, k = 5 is not balanced.  A perturbation F on three variables
# multiplies the profile by S(F)/q^3.

# %%
f4 = make_field(2, 2)
F = PolyFunction.parse(f4, "x1*x2 + x1*x2*x3 + x2*x3 + x1*x3")
asymptotic_pgf(f4, 5).pgf, perturbed_pgf(f4, 5, F).pgf

# %% [markdown]
# Finite n.  The deviation from the limit oscillates with period 8 in n but
# shrinks geometrically inside each residue class.

# %%
rows = convergence_check(f4, 5, n_list=range(5, 45))
devs = np.array([float(r.deviation) for r in rows])
devs.reshape(-1, 8).round(5)

# %%
same_phase = [r for r in rows if r.n % 8 == 4]
geometric_decay_rate(same_phase)

# %% [markdown]
# Over F_5, Smith's closed form for k = 6 against the hypercube.

# %%
[str(x) for x in smith_table(5)], [str(x) for x in asymptotic_pgf(make_field(5), 6).probabilities()]

# %% [markdown]
# k = 30 = 6 * 5: the value at 0 changes, so p_{kp} = p_k fails at p = 5.

# %%
asymptotic_pgf(make_field(5), 30, budget=None)[0]
