# %% [markdown]
# # j = 0 exactly when the cubic splits
#
# For Weierstrass cubics x^3 + a*x*z^2 + b*z^3 - y^2*z the j-invariant
# vanishes iff a = 0. We compare that with the ST detector on a small grid.

# %%
from fractions import Fraction

from logtorelli import corollary_check, parse_poly

base = parse_poly("x^3 - y^2*z")
xz2 = parse_poly("x*z^2")
z3 = parse_poly("z^3")

# %%
print(f"{'a':>6} {'b':>6}  ST     j=0    S-invariant")
for a in (0, 1, -1, Fraction(1, 2)):
    for b in (1, -2, Fraction(3, 4)):
        if 4 * Fraction(a) ** 3 + 27 * Fraction(b) ** 2 == 0:
            continue
        rec = corollary_check(base + xz2.scale(a) + z3.scale(b))
        print(f"{str(a):>6} {str(b):>6}  {rec.st!s:6} {rec.j_zero!s:6} {rec.S_value}")

# %% [markdown]
# The invariant itself is derived on the fly as the one-dimensional kernel
# of the sl3 action on quartic polynomials in the ten cubic coefficients.

# %%
from logtorelli.cubic import invariant_polynomial

print(len(invariant_polynomial()), "terms")
