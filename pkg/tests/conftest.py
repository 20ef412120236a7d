import pytest

from semisimple_hol.central_product import Amalgamation, central_product
from semisimple_hol.constructors import builtin


def make(key):
    s5, s7 = builtin("SL2_5"), builtin("SL2_7")
    if key == "sl2_5":
        return central_product([s5])
    if key == "sl2_5_o_sl2_7":
        return central_product([s5, s7], Amalgamation.full([s5, s7], [(0, 1)]))
    if key == "sl2_5_x_sl2_7":
        return central_product([s5, s7])
    if key == "sl2_5_x_sl2_5":
        return central_product([s5, s5])
    if key == "three_a6":
        return central_product([builtin("THREE_A6")])
    raise KeyError(key)


_GROUPS = {}


def group(key):
    if key not in _GROUPS:
        _GROUPS[key] = make(key)
    return _GROUPS[key]


ALL_GROUPS = ["sl2_5", "sl2_5_o_sl2_7", "sl2_5_x_sl2_7", "sl2_5_x_sl2_5", "three_a6"]


@pytest.fixture(scope="session")
def sl2_5():
    return group("sl2_5")


@pytest.fixture(scope="session")
def sl2_5_o_sl2_7():
    return group("sl2_5_o_sl2_7")
