import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semisimple_hol.fields import FiniteField
from semisimple_hol.matrices import MatrixGroup, transvection
from semisimple_hol.groups import GroupError

QS = [2, 3, 4, 5, 7]


@pytest.mark.parametrize("q", QS)
def test_tables_are_a_field(q):
    F = FiniteField(q)
    r = np.arange(q)
    assert np.array_equal(F.add[r, F.neg], np.zeros(q, dtype=int))
    assert np.all(F.mul[r[1:], F.inv[1:]] == 1)
    # every nonzero element is a power of the primitive element
    powers = {1}
    x = 1
    for _ in range(q - 1):
        x = int(F.mul[x, F.primitive])
        powers.add(x)
    assert powers == set(range(1, q))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(QS), st.data())
def test_field_axioms(q, data):
    F = FiniteField(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add[a, F.add[b, c]] == F.add[F.add[a, b], c]
    assert F.mul[a, F.mul[b, c]] == F.mul[F.mul[a, b], c]
    assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
    assert F.mul[a, b] == F.mul[b, a]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([4, 5, 7]), st.integers(2, 3), st.data())
def test_det_is_multiplicative(q, dim, data):
    F = FiniteField(q)
    mats = st.lists(st.integers(0, q - 1), min_size=dim * dim, max_size=dim * dim)
    A = np.array(data.draw(mats)).reshape(dim, dim)
    B = np.array(data.draw(mats)).reshape(dim, dim)
    assert F.det(F.matmul(A, B)) == F.mul[F.det(A), F.det(B)]


def test_encode_roundtrip():
    F = FiniteField(4)
    A = np.arange(9).reshape(3, 3) % 4
    assert np.array_equal(F.decode(F.encode(A), 3), A)


def test_f4_has_order_three_units():
    F = FiniteField(4)
    w = F.primitive
    assert F.mul[w, F.mul[w, w]] == 1 and F.mul[w, w] != 1


def test_unsupported_field():
    with pytest.raises(ValueError):
        FiniteField(9)


def test_small_matrix_group():
    # the transvections over F2 generate SL(2,2), which has order 6
    G = MatrixGroup(FiniteField(2), [transvection(2, 0, 1, 1), transvection(2, 1, 0, 1)])
    assert G.order == 6
    G.check_axioms()
    assert np.array_equal(G.mul(G.elements, G.inverse), np.zeros(6, dtype=int))


def test_index_of_rejects_foreign_matrix():
    G = MatrixGroup(FiniteField(2), [transvection(2, 0, 1, 1)])
    with pytest.raises(GroupError):
        G.index_of(transvection(2, 1, 0, 1))


def test_max_order_guard():
    with pytest.raises(GroupError):
        MatrixGroup(FiniteField(5), [transvection(2, 0, 1, 1), transvection(2, 1, 0, 1)], max_order=50)
