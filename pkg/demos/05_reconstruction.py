# %% [markdown]
# # Reading the divisor back from its Jacobi ideal
#
# For a non-ST form only the multiples of f have the same Jacobi piece, so
# J(f) pins down the divisor. For the Fermat cubic a 3-dimensional family
# shares it.

# %%
from logtorelli import divisors_with_jacobi_piece, format_poly, jacobi_piece, parse_poly

for text in ("y^2*z - x^3 - x*z^2", "x^3 + y^3 + z^3"):
    f = parse_poly(text)
    fam = divisors_with_jacobi_piece(jacobi_piece(f))
    print(text)
    print("  family dim:", fam.dim)
    print("  basis:", [format_poly(g) for g in fam.members()])
