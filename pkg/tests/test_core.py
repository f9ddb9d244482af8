import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graded_dimensions
from rdimcert.core import (
    UNIT,
    ZERO,
    GradedDimension,
    euler_char,
    gd_dual,
    gd_shift,
    gd_sum,
    gd_tensor,
)
from rdimcert.errors import DomainError

gds = graded_dimensions()
shifts = st.integers(-5, 5)


def test_shift_example():
    assert gd_shift(GradedDimension({0: 1}), 2) == {-2: 1}


def test_tensor_example():
    g = GradedDimension({0: 1, 1: 2})
    assert gd_tensor(g, g) == {0: 1, 1: 4, 2: 4}


def test_euler_examples():
    assert euler_char(GradedDimension({0: 1, 1: 3, 2: 3})) == 1
    assert euler_char(ZERO) == 0


def test_zeros_are_dropped():
    g = GradedDimension({0: 0, 3: 2})
    assert g.degrees() == [3]
    assert g == GradedDimension({3: 2})
    assert hash(g) == hash(GradedDimension({3: 2}))


def test_negative_multiplicity_rejected():
    with pytest.raises(DomainError):
        GradedDimension({0: -1})


def test_immutable():
    with pytest.raises(AttributeError):
        UNIT._items = ()


def test_str():
    assert str(ZERO) == "0"
    assert str(UNIT) == "k[0]"
    assert str(GradedDimension({1: 3})) == "k^3[-1]"


@given(gds)
def test_json_round_trip(g):
    assert GradedDimension.from_json(g.to_json()) == g


@given(gds, gds)
def test_sum_commutative(g, h):
    assert gd_sum(g, h) == gd_sum(h, g)


@given(gds, gds)
def test_tensor_commutative(g, h):
    assert gd_tensor(g, h) == gd_tensor(h, g)


@given(gds, gds, gds)
def test_tensor_associative(f, g, h):
    assert gd_tensor(gd_tensor(f, g), h) == gd_tensor(f, gd_tensor(g, h))


@given(gds, gds, gds)
def test_tensor_distributes_over_sum(f, g, h):
    assert gd_tensor(f, gd_sum(g, h)) == gd_sum(gd_tensor(f, g), gd_tensor(f, h))


@given(gds)
def test_units(g):
    assert gd_tensor(g, UNIT) == g
    assert gd_sum(g, ZERO) == g
    assert gd_tensor(g, ZERO) == ZERO


@given(gds, gds, shifts)
def test_shift_distributes_over_sum(g, h, s):
    assert gd_shift(gd_sum(g, h), s) == gd_sum(gd_shift(g, s), gd_shift(h, s))


@given(gds, gds, shifts)
def test_shift_moves_through_tensor(g, h, s):
    assert gd_shift(gd_tensor(g, h), s) == gd_tensor(gd_shift(g, s), h)


@given(gds, shifts, shifts)
def test_shift_composes(g, a, b):
    assert gd_shift(gd_shift(g, a), b) == gd_shift(g, a + b)


@given(gds, gds)
def test_euler_multiplicative(g, h):
    assert euler_char(gd_tensor(g, h)) == euler_char(g) * euler_char(h)


@given(gds, gds)
def test_euler_additive(g, h):
    assert euler_char(gd_sum(g, h)) == euler_char(g) + euler_char(h)


@given(gds, shifts)
def test_euler_under_shift(g, s):
    assert euler_char(gd_shift(g, s)) == (-1) ** (s % 2) * euler_char(g)


@given(gds)
def test_dual_involution(g):
    assert gd_dual(gd_dual(g)) == g


@given(gds, gds)
def test_dual_of_tensor(g, h):
    assert gd_dual(gd_tensor(g, h)) == gd_tensor(gd_dual(g), gd_dual(h))


@given(gds)
def test_total_is_additive(g):
    assert gd_sum(g, g).total() == 2 * g.total()
