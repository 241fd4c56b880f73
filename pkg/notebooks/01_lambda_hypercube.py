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
# # Lambda values and the hypercube
#
# A vector over F_q in which the nonzero element a appears m_a times has
# e_k equal to the z^k coefficient of prod (1 + a z)^{m_a}.  The value only
# depends on each m_a modulo D = p^(floor(log_p k) + 1), so the long-run
# distribution of e_k is an average over the box [0, D)^(q-1).

# %%
from symsum import MultiplicityVector, hypercube_histogram, lambda_series, make_field, period_D

f4 = make_field(2, 2)
[f4.format(a) for a in range(f4.q)]

# %%
mv = MultiplicityVector.full_field(f4, (3, 1, 2))
lambda_series(f4, 6, mv)

# %% [markdown]
# Periodicity: adding D to any multiplicity leaves Lambda unchanged.

# %%
D = period_D(2, 5)
shifted = MultiplicityVector.full_field(f4, (3 + D, 1, 2))
lambda_series(f4, 5, mv)[5] == lambda_series(f4, 5, shifted)[5]

# %% [markdown]
# The histogram over the 8^3 = 512 box for k = 5.

# %%
hist = hypercube_histogram(f4, 5)
hist.dense(), hist.total

# %% [markdown]
# Larger boxes are handled digit by digit; F_9 with k = 4 is a 9^8 box.

# %%
f9 = make_field(3, 2)
hist9 = hypercube_histogram(f9, 4, budget=None)
hist9.dense()
