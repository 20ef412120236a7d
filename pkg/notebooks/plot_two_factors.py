"""
Four regular subgroups for SL(2,5) o SL(2,7)
=============================================

Gluing the centers of SL(2,5) and SL(2,7) gives a semisimple group
with two Aut-invariant factors. Each subset J of {1, 2} gives a regular
subgroup G_J, and the maps phi_J move the right regular
representation onto each of them.
"""

import numpy as np

from semisimple_hol.analysis import analyze, summary_text
from semisimple_hol.central_product import Amalgamation, central_product
from semisimple_hol.constructors import builtin
from semisimple_hol.holomorph import CircGroup, rho
from semisimple_hol.permgroup import conjugate_perm

s5, s7 = builtin("SL2_5"), builtin("SL2_7")
G = central_product([s5, s7], Amalgamation.full([s5, s7], [(0, 1)]))
a = analyze(G)
print(summary_text(a))

# phi_{1} turns right translation by g into the G_{1} element rho(x_1) lambda(...)
J = frozenset({1})
g = G.generators[0]
sigma = conjugate_perm(rho(G, g), a.phis[J])
print("0 is sent to", sigma[0], "; sigma is in G_J:", sigma in a.gj[J])

# the twisted product behind G_{1}: left factor multiplies as usual, right one reversed
C = CircGroup(a.decomposition, J)
x, y = 17, 4242
print("x o y =", int(C.mul(x, y)), "  xy =", int(G.mul(x, y)))
print("phi_J is an isomorphism (G, o_I) -> (G, o_J):", a.checks["phi_is_circ_isomorphism"].passed)

# T(G): how the conjugators permute the family
for name, perm in a.tgroup.action.items():
    print(f"{name:>8}", np.array(perm))
