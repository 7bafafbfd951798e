import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chipfire.chip import (IllegalMoveError, apply_firing_vector, can_fire, check_configuration,
                           fire, format_configuration, in_debt, parse_configuration,
                           point_configuration, reduce_firing_vector)
from chipfire.graph import make_cycle, make_path

from conftest import named_graphs

C3 = make_cycle(3)
GRAPHS = named_graphs(6)


@st.composite
def graph_and_config(draw, lo=-10, hi=10):
    g = draw(st.sampled_from(GRAPHS))
    c = draw(st.lists(st.integers(lo, hi), min_size=g.n, max_size=g.n))
    return g, tuple(c)


def test_can_fire():
    assert can_fire(C3, (3, 0, 0), 0)
    assert not can_fire(C3, (1, 1, 1), 0)
    assert can_fire(make_path(2), (1, 0), 0)


def test_fire_examples():
    assert fire(C3, (3, 0, 0), 0) == (1, 1, 1)
    assert fire(C3, (0, 0, 0), 0, "general") == (-2, 1, 1)
    with pytest.raises(IllegalMoveError):
        fire(C3, (1, 1, 1), 0)
    with pytest.raises(ValueError):
        fire(C3, (3, 0, 0), 0, "sideways")


def test_apply_firing_vector_examples():
    assert apply_firing_vector(C3, (3, 0, 0), (1, 1, 1)) == (3, 0, 0)
    assert apply_firing_vector(C3, (3, 0, 0), (1, 0, 0)) == (1, 1, 1)
    assert apply_firing_vector(C3, (3, 0, 0), (2, 0, 1)) == (0, 3, 0)


def test_reduce_firing_vector_examples():
    assert reduce_firing_vector((1, -1, 0)) == (2, 0, 1)
    assert reduce_firing_vector((0, 0, 0)) == (0, 0, 0)
    assert reduce_firing_vector((5, 5, 5)) == (0, 0, 0)


def test_configuration_text_form():
    assert parse_configuration("4,0,0,0") == (4, 0, 0, 0)
    assert format_configuration((4, 0, 0, 0)) == "4,0,0,0"
    assert parse_configuration("-1,2", allow_negative=True) == (-1, 2)
    for bad in ("4,,0", "a,b", "-1,2"):
        with pytest.raises(ValueError):
            parse_configuration(bad)


def test_check_configuration():
    assert check_configuration(C3, [1, 2, 3]) == (1, 2, 3)
    with pytest.raises(ValueError):
        check_configuration(C3, (1, 2))
    with pytest.raises(ValueError):
        check_configuration(C3, (1, -2, 3))
    assert check_configuration(C3, (1, -2, 3), general=True) == (1, -2, 3)
    assert in_debt((1, -2, 3)) and not in_debt((0, 0))


def test_point_configuration():
    assert point_configuration(4, 7, 2) == (0, 0, 7, 0)


@settings(max_examples=300, deadline=None)
@given(graph_and_config(), st.data())
def test_fire_preserves_total(gc, data):
    g, c = gc
    v = data.draw(st.integers(0, g.n - 1))
    assert sum(fire(g, c, v, "general")) == sum(c)
    x = data.draw(st.lists(st.integers(-5, 5), min_size=g.n, max_size=g.n))
    assert sum(apply_firing_vector(g, c, x)) == sum(c)


@settings(max_examples=300, deadline=None)
@given(graph_and_config(), st.data())
def test_general_fires_commute(gc, data):
    g, c = gc
    i = data.draw(st.integers(0, g.n - 1))
    j = data.draw(st.integers(0, g.n - 1))
    assert fire(g, fire(g, c, i, "general"), j, "general") == \
        fire(g, fire(g, c, j, "general"), i, "general")


@settings(max_examples=300, deadline=None)
@given(graph_and_config(), st.data())
def test_all_ones_shift_changes_nothing(gc, data):
    g, c = gc
    x = data.draw(st.lists(st.integers(-5, 5), min_size=g.n, max_size=g.n))
    assert apply_firing_vector(g, c, [v + 1 for v in x]) == apply_firing_vector(g, c, x)
    assert apply_firing_vector(g, c, reduce_firing_vector(x)) == apply_firing_vector(g, c, x)
    assert min(reduce_firing_vector(x)) == 0


@settings(max_examples=200, deadline=None)
@given(graph_and_config(), st.data())
def test_firing_vector_equals_sequential_fires(gc, data):
    g, c = gc
    x = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
    moves = [v for v, k in enumerate(x) for _ in range(k)]
    moves = data.draw(st.permutations(moves))
    out = c
    for v in moves:
        out = fire(g, out, v, "general")
    assert out == apply_firing_vector(g, c, x)
