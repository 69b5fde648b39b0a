"""
Tests for points, switches, distances and the collapsed encoding.
"""

import itertools

import pytest


def test_shape_basics():
    """Test size, head axes and lexicographic point order."""
    from src.hyperlattice import Shape

    shape = Shape((2, 3), 1)
    assert shape.n == 2
    assert shape.size == 6
    assert shape.head_axes == frozenset({1})
    assert shape.points() == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]
    assert shape.index((2, 1)) == 3
    assert str(shape) == "2,3"


def test_shape_validation():
    """Test that bad radices and slice parameters are refused."""
    from src.errors import InvalidShapeError
    from src.hyperlattice import Shape

    with pytest.raises(InvalidShapeError, match="positive"):
        Shape((2, 0), 1)
    with pytest.raises(InvalidShapeError, match="1 <= t <= 2"):
        Shape((2, 2), 3)
    with pytest.raises(InvalidShapeError, match="Malformed shape"):
        Shape.parse("2,x", 1)
    assert Shape.parse("2, 2,3", 2) == Shape((2, 2, 3), 2)


def test_invalid_point():
    """Test that out-of-range coordinates are rejected."""
    from src.errors import InvalidPointError
    from src.hyperlattice import Shape

    shape = Shape((2, 2), 1)
    with pytest.raises(InvalidPointError, match="not a point"):
        shape.validate_point((3, 1))
    with pytest.raises(InvalidPointError):
        shape.index((1, 1, 1))


def test_switch():
    """Test s(L, a, b) takes b on L and a elsewhere."""
    from src.hyperlattice import switch

    a, b = (1, 2, 3), (3, 1, 2)
    assert switch({1}, a, b) == (3, 2, 3)
    assert switch({2, 3}, a, b) == (1, 1, 2)
    assert switch(set(), a, b) == a
    assert switch({1, 2, 3}, a, b) == b


def test_switch_bad_axis():
    """Test that axes outside [n] raise InvalidAxisError."""
    from src.errors import InvalidAxisError
    from src.hyperlattice import switch

    with pytest.raises(InvalidAxisError, match="outside"):
        switch({4}, (1, 1, 1), (2, 2, 2))
    with pytest.raises(InvalidAxisError):
        switch({0}, (1, 1, 1), (2, 2, 2))


def test_distances():
    """Test full and head-restricted distances."""
    from src.hyperlattice import diff_axes, distance, t_distance

    a, b = (1, 1, 1), (2, 1, 3)
    assert diff_axes(a, b) == frozenset({1, 3})
    assert distance(a, b) == 2
    assert t_distance(a, b, 1) == (1, frozenset({1}))
    assert t_distance(a, b, 2) == (1, frozenset({1}))
    assert t_distance(a, b, 3) == (2, frozenset({1, 3}))
    assert distance(a, a) == 0


def test_collapse_tail_rank():
    """Test that trailing coordinates become a 1-based lexicographic rank."""
    from src.hyperlattice import CollapsedPoint, Shape, collapse

    shape = Shape((2, 3, 4), 1)
    assert collapse(shape, (2, 3, 4)) == CollapsedPoint((2,), 12)
    assert collapse(shape, (1, 1, 1)) == CollapsedPoint((1,), 1)
    assert collapse(shape, (1, 2, 1)).tail == 5


def test_collapse_full_head():
    """Test that t = n gives an empty tail of rank 1."""
    from src.hyperlattice import Shape, collapse

    shape = Shape((2, 3, 4), 3)
    assert collapse(shape, (2, 3, 4)).as_tuple() == (2, 3, 4, 1)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_collapse_is_order_preserving_bijection(t):
    """Test that collapse keeps lexicographic order and inverts."""
    from src.hyperlattice import Shape, collapse, uncollapse

    shape = Shape((2, 2, 3), t)
    encoded = [collapse(shape, p) for p in shape.points()]
    assert encoded == sorted(encoded)
    assert [uncollapse(shape, c) for c in encoded] == shape.points()


def test_uncollapse_bad_tail():
    """Test that a tail rank past the end is refused."""
    from src.errors import InvalidPointError
    from src.hyperlattice import CollapsedPoint, Shape, uncollapse

    with pytest.raises(InvalidPointError, match="Tail rank"):
        uncollapse(Shape((2, 2, 2), 1), CollapsedPoint((1,), 5))


def test_point_text():
    """Test point parsing, printing and variable names."""
    from src.errors import ParseError
    from src.hyperlattice import format_point, parse_point, varname

    assert parse_point("(1, 2,1)") == (1, 2, 1)
    assert format_point((1, 2, 1)) == "(1,2,1)"
    assert varname((1, 2, 1)) == "x_1_2_1"
    with pytest.raises(ParseError, match="Malformed point"):
        parse_point("1,2")


def test_switch_preserves_column_multisets():
    """Test that switching a pair never changes the per-axis coordinate multisets."""
    from src.hyperlattice import Shape, switch

    shape = Shape((2, 2, 2), 3)
    for a, b in itertools.combinations(shape.points(), 2):
        for K in ({1}, {2, 3}, {1, 3}):
            c, d = switch(K, a, b), switch(K, b, a)
            for i in range(3):
                assert sorted((a[i], b[i])) == sorted((c[i], d[i]))
