# %% [markdown]
# # Recovering a hidden split
#
# Build f1(x, y) + f2(z), hide it behind an integer coordinate change and
# ask the extractor to find a splitting change again.

# %%
from logtorelli import (
    CoordinateChange,
    extract_decomposition,
    format_poly,
    parse_poly,
    split_completely,
    substitute_linear,
    verify_decomposition,
)

f = parse_poly("x^4 - 2*x^2*y^2 + 3*y^4 + x*y^3 + z^4")
A = CoordinateChange([[1, 2, -1], [0, 1, 3], [1, 1, 1]])
g = substitute_linear(f, A)
print("sheared:", format_poly(g))

# %%
d = extract_decomposition(g)
new = ["X", "Y", "Z"]
print("f1 =", format_poly(d.f1, new))
print("f2 =", format_poly(d.f2, new))
print("verified:", verify_decomposition(g, d))
print("trace:", d.trace)

# %% [markdown]
# A cubic whose split needs cube roots: the detector says ST, the
# extractor reports that the base field is too small and certifies it.

# %%
h = parse_poly("x^3 + x*y^2 + y^3", ["x", "y"])
r = extract_decomposition(h)
print(type(r).__name__, "certified:", r.certified)
print(r.deferred[0].describe())

# %%
w = parse_poly("x^3 + y^3 + z^3 + w^3", list("xyzw"))
s = split_completely(substitute_linear(w, CoordinateChange(
    [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 2]])))
print("blocks:", s.blocks)
