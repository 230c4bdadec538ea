from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glcsurf.exact import (
    SingularMatrixError,
    as_fraction,
    det,
    is_integral,
    is_negative_definite_matrix,
    lcd,
    leading_minors,
    solve,
)
from oracles import adjugate_inverse, leibniz_det
from property_checks import examples

small = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
square = st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@examples(200)
@given(square)
def test_det_matches_permutation_expansion(m):
    assert det(m) == leibniz_det(m)


@examples(200)
@given(square, st.data())
def test_solve_matches_adjugate(m, data):
    rhs = data.draw(st.lists(small, min_size=len(m), max_size=len(m)))
    if leibniz_det(m) == 0:
        with pytest.raises(SingularMatrixError):
            solve(m, rhs)
        return
    inv = adjugate_inverse(m)
    expected = [sum(inv[i][j] * rhs[j] for j in range(len(m))) for i in range(len(m))]
    assert solve(m, rhs) == expected


def test_det_small():
    assert det([]) == 1
    assert det([[2, 1], [1, 2]]) == 3
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0


def test_solve_shape_errors():
    with pytest.raises(ValueError):
        solve([[1, 2]], [1])
    with pytest.raises(ValueError):
        solve([[1]], [1, 2])


def test_leading_minors_and_negative_definite():
    m = [[-2, 1], [1, -2]]
    assert leading_minors(m) == [-2, 3]
    assert is_negative_definite_matrix(m)
    assert not is_negative_definite_matrix([[-1, 2], [2, -1]])
    assert not is_negative_definite_matrix([[0]])
    with pytest.raises(ValueError):
        is_negative_definite_matrix([])


def test_as_fraction():
    assert as_fraction(3) == Fraction(3)
    assert as_fraction(Fraction(1, 2)) == Fraction(1, 2)
    assert as_fraction("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_lcd_and_integrality():
    assert lcd([]) == 1
    assert lcd([Fraction(1, 4), Fraction(1, 6), 2]) == 12
    assert is_integral(Fraction(4, 2))
    assert not is_integral(Fraction(1, 3))
