"""Structural invariants checked on every constructed group."""
import numpy as np
import pytest

from semisimple_hol.central_product import (
    NotSemisimple,
    aut_indecomposable_decomposition,
    automorphism_generators,
    components,
    inverting_automorphism,
)
from semisimple_hol.constructors import builtin
from semisimple_hol.groups import (
    center,
    derived_subgroup,
    inner_automorphism,
    inverts_center,
    normal_subgroups,
    search_inverting_automorphism,
    search_isomorphism,
)

from conftest import ALL_GROUPS, group
from test_groups import S4


def _multiplicative_on_sample(hom, pairs=10_000, seed=0):
    G, H = hom.source, hom.target
    rng = np.random.default_rng(seed)
    a, b = rng.integers(0, G.order, size=(2, pairs))
    return np.array_equal(hom.image[G.mul(a, b)], H.mul(hom.image[a], hom.image[b]))


@pytest.mark.parametrize("key", ALL_GROUPS)
def test_group_axioms_on_sample(key):
    group(key).check_axioms(samples=10_000)


@pytest.mark.parametrize("key", ALL_GROUPS)
def test_automorphisms_multiplicative_on_random_pairs(key):
    G = group(key)
    auts = automorphism_generators(G) + [inverting_automorphism(G)]
    assert all(_multiplicative_on_sample(al) for al in auts)


@pytest.mark.parametrize("key", ALL_GROUPS)
def test_components_commute_and_meet_centrally(key):
    G = group(key)
    comps = components(G)
    Z = center(G)
    for i, A in enumerate(comps):
        for B in comps[i + 1:]:
            x = np.array(A.generators)[:, None]
            y = np.array(B.generators)[None, :]
            assert np.array_equal(G.mul(x, y), G.mul(y, x))
            assert (A & B).issubset(Z)


@pytest.mark.parametrize("key", ["sl2_5_x_sl2_5", "sl2_5_o_sl2_7", "sl2_5_x_sl2_7"])
def test_decomposition_is_canonical(key):
    G = group(key)
    auts = automorphism_generators(G)
    base = aut_indecomposable_decomposition(G, auts)
    shuffled = aut_indecomposable_decomposition(G, auts[::-1], comps=components(G)[::-1])
    extra = auts + [inner_automorphism(G, 777), inverting_automorphism(G)]
    enlarged = aut_indecomposable_decomposition(G, extra)
    for other in (shuffled, enlarged):
        assert [A.key for A in other.factors] == [A.key for A in base.factors]


def test_normal_subgroups_are_conjugation_invariant():
    G = group("sl2_5")
    for N in normal_subgroups(G):
        for g in G.generators:
            assert N.mask[G.conjugate(N.elements, g)].all()


def test_not_semisimple():
    with pytest.raises(NotSemisimple):
        components(S4)


def test_builtin_factors_are_perfect():
    for name in ("SL2_5", "SL2_7", "THREE_A6"):
        G = builtin(name).group
        assert derived_subgroup(G).order == G.order
    assert not builtin("SL2_7").descriptor.in_L


def test_diagonal_certificate_fixes_minus_identity():
    f = builtin("SL2_5")
    Z = center(f.group).elements
    assert np.array_equal(f.certificates["diagonal"].image[Z], Z)


def test_search_examples():
    K5, K7, A6 = builtin("SL2_5").group, builtin("SL2_7").group, builtin("THREE_A6").group
    ident = search_isomorphism(K5, K5)
    assert np.array_equal(ident.image, K5.elements)
    assert search_isomorphism(K5, K7) is None
    alpha = search_isomorphism(A6, A6, constraint=inverts_center)
    assert alpha is not None and inverts_center(alpha)
    assert not np.array_equal(alpha.image, A6.elements)


def test_inverting_search_trivial_for_exponent_two():
    for name in ("SL2_5", "SL2_7"):
        K = builtin(name).group
        assert np.array_equal(search_inverting_automorphism(K).image, K.elements)
