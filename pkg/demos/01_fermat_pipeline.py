# %% [markdown]
# # The Fermat cubic is not Torelli
#
# A smooth cubic curve is Torelli unless it splits as a sum of polynomials
# in disjoint variables. The Fermat cubic is the textbook split case.

# %%
from logtorelli import (
    extract_decomposition,
    format_poly,
    is_smooth,
    parse_poly,
    st_space,
    torelli_verdict,
    verify_decomposition,
)

f = parse_poly("x^3 + y^3 + z^3")
print("smooth:", is_smooth(f))

# %% [markdown]
# The ST space holds every cubic whose partials fall into the span of the
# partials of f. Anything beyond the multiples of f signals a split.

# %%
S = st_space(f)
print("dim S(f) =", S.dim)
for g in S.members():
    print("  ", format_poly(g))

# %%
d = extract_decomposition(f)
print("change rows:", [[str(x) for x in r] for r in d.change.matrix.rows])
print("f1 =", format_poly(d.f1, ["X", "Y", "Z"]), "   f2 =", format_poly(d.f2, ["X", "Y", "Z"]))
print("verified:", verify_decomposition(f, d))

# %%
v = torelli_verdict(f)
print(v.status)
