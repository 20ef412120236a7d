"""
The exceptional quasisimple groups
==================================

Four families of quasisimple groups admit no automorphism inverting the
center. None of them is small enough to build here, so this walk-through
stays at the level of descriptors: a simple quotient plus the abelian
invariants of the center.
"""

from semisimple_hol.catalog import (
    DescriptorDecomposition,
    QuasisimpleDescriptor as D,
    count_bounds,
    h_bounds,
    in_L,
    list_L,
)
from semisimple_hol.holomorph import compute_H_set

for d in list_L():
    print(f"{d.simple:>9}  center {d.center}  {d.variant or ''}")
print(len(list_L()), "groups up to isomorphism")

print("PSL3_4 with center Z4 x Z3 in the list?", in_L(D("PSL3_4", (4, 3))))

# three factors, two of them exceptional, all centers glued together
bad = [D("PSL3_4", (2, 2, 3))]
good = [D("A6", (3,))]
dec = DescriptorDecomposition.amalgamated([bad, bad, good], (2, 2, 3))
family, h = compute_H_set(dec)
print("n=3, l=2: h =", h, " bounds on |H|:", count_bounds(3, 2), " m =", h_bounds(3, 2)[0])
print("surviving subsets:", [sorted(J) for J in family])
