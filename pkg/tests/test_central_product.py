import numpy as np
import pytest

from semisimple_hol.central_product import (
    Amalgamation,
    DirectProduct,
    InvalidAmalgamation,
    canonical_central_generator,
    central_product,
    components,
    decompose,
    inverting_automorphism,
)
from semisimple_hol.constructors import builtin
from semisimple_hol.groups import abelian_invariants, center, inverts_center

from conftest import ALL_GROUPS, group

EXPECTED = {
    # order, |Z|, component orders, n
    "sl2_5": (120, 2, [120], 1),
    "sl2_5_o_sl2_7": (20160, 2, [120, 336], 2),
    "sl2_5_x_sl2_7": (40320, 4, [120, 336], 2),
    "sl2_5_x_sl2_5": (14400, 4, [120, 120], 1),
    "three_a6": (1080, 3, [1080], 1),
}


@pytest.mark.parametrize("key", ALL_GROUPS)
def test_structure(key):
    G = group(key)
    order, z, comps, n = EXPECTED[key]
    assert G.order == order
    assert center(G).order == z
    assert sorted(C.order for C in components(G)) == comps
    auts, dec = decompose(G)
    assert dec.n == n
    assert dec.l == 0


@pytest.mark.parametrize("key", ALL_GROUPS)
def test_inverting_automorphism(key):
    G = group(key)
    alpha = inverting_automorphism(G)
    assert alpha.verified and alpha.is_bijective
    assert inverts_center(alpha)
    Z = center(G).elements
    assert np.array_equal(alpha.image[Z], G.inverse[Z])


def test_factors_commute(sl2_5_o_sl2_7):
    G = sl2_5_o_sl2_7
    a, b = G.embeddings
    x, y = a.elements[:, None], b.elements[None, ::17]
    assert np.array_equal(G.mul(x, y), G.mul(y, x))


def test_direct_product_coordinates():
    D = DirectProduct([builtin("SL2_5").group, builtin("SL2_7").group])
    assert D.order == 120 * 336
    c = D.coordinates(np.array([12345]))
    assert D.encode(c)[0] == 12345


def test_non_central_amalgamation():
    s5, s7 = builtin("SL2_5"), builtin("SL2_7")
    nonc = int(np.flatnonzero(~center(s5.group).mask)[0])
    with pytest.raises(InvalidAmalgamation):
        central_product([s5, s7], Amalgamation([(0, nonc, 1, canonical_central_generator(s7.group))]))


def test_amalgamation_meeting_factor():
    s5, a6 = builtin("SL2_5"), builtin("THREE_A6")
    # an element of order 2 glued to one of order 3 forces the factors to meet
    with pytest.raises(InvalidAmalgamation):
        central_product([s5, a6], Amalgamation([(0, canonical_central_generator(s5.group),
                                                  1, canonical_central_generator(a6.group))]))
    with pytest.raises(InvalidAmalgamation):
        Amalgamation.full([s5, a6], [(0, 1)])


def test_amalgamated_center(sl2_5_o_sl2_7):
    G = sl2_5_o_sl2_7
    assert abelian_invariants(G, center(G)) == (2,)
    assert G.name == "SL2_5 o SL2_7"


def test_swap_merges_components():
    G = group("sl2_5_x_sl2_5")
    auts, dec = decompose(G)
    assert len(dec.components) == 2 and dec.n == 1
    assert dec.factors[0].order == G.order
