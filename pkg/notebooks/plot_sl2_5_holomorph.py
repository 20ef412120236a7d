"""
The two regular subgroups of Hol(SL(2,5))
=========================================

SL(2,5) is quasisimple, so it has a single factor and two candidate
regular subgroups: the right translations and the left translations.
We build both and then enumerate the 14400-element holomorph to check
that nothing else is a regular normal subgroup of the right order.
"""

from semisimple_hol.central_product import central_product, decompose, inverting_automorphism
from semisimple_hol.constructors import builtin
from semisimple_hol.holomorph import brute_force_J_oracle, build_GJ, holomorph_group

G = central_product([builtin("SL2_5")])
auts, dec = decompose(G)
print(G, "with", dec.n, "factor")

# an automorphism inverting the center; for SL(2,5) the identity would do,
# but the search returns a genuine certificate
alpha = inverting_automorphism(G)
hol = holomorph_group(G, auts + [alpha])

for J in [frozenset(), frozenset({1})]:
    sub = build_GJ(J, dec, hol)
    print("G_J for J =", sorted(J), "has", len(sub.generators), "generators")

found = brute_force_J_oracle(G, hol, guard=20_000, dec=dec)
print("|Hol(G)| =", hol.order)
print("regular normal subgroups:", [sorted(J) for _, J in found])
