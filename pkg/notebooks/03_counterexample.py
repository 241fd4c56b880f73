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
# # An unbalanced perturbation that is balanced at infinity
#
# Over F_4 the convolution matrix of G_3 is singular.  Any null vector gives a
# non-uniform probability vector b with A b uniform; realising b as the value
# counts of some F makes e_{n,3} + F asymptotically balanced although F is not.

# %%
from symsum import asymptotic_pgf, build_matrix, determinant, find_counterexample, make_field, rational_nullspace

f4 = make_field(2, 2)
A = build_matrix(asymptotic_pgf(f4, 3))
[[str(x) for x in row] for row in A.entries], determinant(A)

# %%
rational_nullspace(A)

# %%
cert = find_counterexample(f4, 3)
cert.j, cert.m, cert.F.format_anf(), cert.verified

# %% [markdown]
# For k = 9 the matrix is invertible and the construction stops.

# %%
find_counterexample(f4, 9).to_json()

# %% [markdown]
# Over prime fields the matrix is circulant; it is singular only when the
# profile is already uniform.

# %%
from symsum.balance import circulant_determinant

[(k, circulant_determinant(asymptotic_pgf(make_field(3), k))) for k in range(1, 9)]
