import pytest
from hypothesis import given, strategies as st

from perverscope.perversity import (BUILTINS, Perversity, PerversityError, StratPerversity, builtin, classify,
                                    delta_range, dual, perverse_dimension, perverse_dimensions, require_gm,
                                    validate_gm)


def gm_perversities(max_dim=6):
    steps = st.lists(st.integers(0, 1), min_size=0, max_size=max_dim)
    return steps.map(lambda s: Perversity(tuple([0] + [-sum(s[:i + 1]) for i in range(len(s))])))


def test_builtins_in_dimension_four():
    assert builtin("zero", 4).values == (0, 0, 0, 0, 0)
    assert builtin("top", 4).values == (0, -1, -2, -3, -4)
    assert builtin("lower-middle", 4).values == (0, -1, -1, -2, -2)
    assert builtin("upper-middle", 4).values == (0, 0, -1, -1, -2)
    with pytest.raises(PerversityError):
        builtin("nope", 2)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_are_gm(name):
    for d in range(7):
        assert validate_gm(builtin(name, d)) is None


def test_gm_violations():
    assert validate_gm(Perversity((1, 0))) == (0, 0)
    assert validate_gm(Perversity((0, 1))) == (0, 1)
    assert validate_gm(Perversity((0, -2))) == (0, 1)
    with pytest.raises(PerversityError):
        require_gm(Perversity((0, 0, -2)))


@given(gm_perversities())
def test_dual_is_gm_and_involutive(p):
    assert validate_gm(dual(p)) is None
    assert dual(dual(p)) == p


def test_dual_swaps_middles():
    for d in range(6):
        assert dual(builtin("lower-middle", d)) == builtin("upper-middle", d)
        assert dual(builtin("zero", d)) == builtin("top", d)


@given(gm_perversities())
def test_perverse_dimensions_lie_in_delta_range(p):
    lo, hi = delta_range(p)
    for d, x in enumerate(perverse_dimensions(p)):
        assert lo <= x <= hi
        if classify(p, d) == "!":
            assert x == -d - p(d)
        elif classify(p, d) == "*":
            assert x == -p(d)


def test_classification_examples():
    p = builtin("zero", 2)
    assert [classify(p, d) for d in range(3)] == ["both", "!", "!"]
    p = builtin("top", 2)
    assert [classify(p, d) for d in range(3)] == ["both", "*", "*"]
    assert perverse_dimension(builtin("zero", 2), 2) == -2
    assert perverse_dimension(builtin("top", 2), 2) == 2


def test_strat_perversity_lookup():
    p = StratPerversity({"a": 0, "b": -1})
    assert p("b") == -1
    with pytest.raises(PerversityError):
        p("c")
