# %% [markdown]
# # Split pencils keep their logarithmic derivations
#
# Along mu*f1 + nu*f2 the Hilbert function of the module of derivations
# killing the member does not move. That is the computable shadow of the
# non-injectivity of the Torelli map on ST forms.

# %%
from fractions import Fraction

from logtorelli import log_derivation_dims, parse_poly, pencil_hilbert_invariance

xyz = ["x", "y", "z"]
f1, f2 = parse_poly("x^4", xyz), parse_poly("y^4 - y^2*z^2 + z^4", xyz)
samples = [(1, 1), (2, -1), (Fraction(1, 2), 7)]
r = pencil_hilbert_invariance(f1, f2, samples, 5)
for (mu, nu), dims in r.tables:
    print(f"mu={mu} nu={nu}: {dims}")
print("invariant:", r.invariant)

# %% [markdown]
# For smooth members the table is forced by the regular sequence of
# partials, so every smooth quartic shows the same numbers. The table only
# moves when the divisor degenerates, as for four lines in general
# position below.

# %%
print("smooth non-split quartic:", log_derivation_dims(parse_poly("x^4 + y^4 + z^4 + x*y*z^2"), 5).dims)
print("four lines xyz(x+y+z):  ", log_derivation_dims(parse_poly("x^2*y*z + x*y^2*z + x*y*z^2"), 5).dims)
