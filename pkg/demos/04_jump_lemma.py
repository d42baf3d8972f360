# %% [markdown]
# # Jumping lines and the Jacobi ideal
#
# A divisor E = V(g) of degree k-1 jumps for f exactly when g lies in the
# span of the partials of f. The indicator below computes the kernel
# dimension behind that statement.

# %%
import random

from logtorelli import jacobi_piece, jump_locus_filter, parse_poly
from logtorelli.polyring import HomPoly, monomials

f = parse_poly("x^4 + y^4 + z^4 + x*y*z^2")
J = jacobi_piece(f)
print("dim J(f)_3 =", J.dim)

# %%
rng = random.Random(0)
cands = [HomPoly(3, 3, {m: rng.randint(-2, 2) for m in monomials(3, 3)}) for _ in range(5)]
cands += f.gradient()
for rep in jump_locus_filter(f, cands):
    print(f"{rep.indicator_dim}  in J: {rep.g in J}")
