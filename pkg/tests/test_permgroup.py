"""Composition convention: maps act on the right and compose left to right."""
import numpy as np
from hypothesis import given, settings, strategies as st

from semisimple_hol.permgroup import PermutationGroup, compose, conjugate_perm, orbit, perm_inverse
from semisimple_hol.holomorph import inversion_perm, lam, rho


perms = st.permutations(list(range(6))).map(np.array)


@settings(max_examples=50, deadline=None)
@given(perms, perms, st.integers(0, 5))
def test_compose_applies_left_factor_first(s, t, x):
    assert compose(s, t)[x] == t[s[x]]


@settings(max_examples=50, deadline=None)
@given(perms, perms)
def test_conjugate_is_inverse_s_t(s, t):
    assert np.array_equal(conjugate_perm(s, t), compose(perm_inverse(t), s, t))


def test_rho_hom_lambda_antihom(sl2_5):
    G = sl2_5
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, G.order, size=(20, 2)):
        ab = int(G.mul(a, b))
        assert np.array_equal(compose(rho(G, a), rho(G, b)), rho(G, ab))
        assert np.array_equal(compose(lam(G, a), lam(G, b)), lam(G, int(G.mul(b, a))))


def test_inversion_swaps_translations(sl2_5):
    G = sl2_5
    inv = inversion_perm(G)
    for g in range(0, G.order, 7):
        assert np.array_equal(conjugate_perm(rho(G, g), inv), lam(G, int(G.inverse[g])))


def test_permutation_group_lookup():
    P = PermutationGroup([np.roll(np.arange(5), 1), np.array([1, 0, 2, 3, 4])])
    assert P.order == 120
    P.check_axioms(samples=2000)
    a, b = 17, 99
    assert np.array_equal(P.perms[P.mul(a, b)], compose(P.perms[a], P.perms[b]))
    assert np.array_equal(P.index_of(P.perms[[3, 4]]), [3, 4])


def test_orbit():
    assert orbit(0, [np.array([1, 2, 0, 3])]).tolist() == [0, 1, 2]
