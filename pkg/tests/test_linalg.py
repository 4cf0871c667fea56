from fractions import Fraction

import pytest

from polygpt.linalg import dot, invert, mat_vec, rank, rat, rat_str, solve_square, vec_sub


def test_rat_parsing_roundtrip():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(5) == Fraction(5)
    assert rat_str(Fraction(-7, 2)) == "-7/2"
    assert rat_str(Fraction(6, 3)) == 2


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)


def test_dot_dimension_mismatch():
    with pytest.raises(ValueError):
        dot((1, 2), (1, 2, 3))


def test_exact_rank():
    rows = [(Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))]
    assert rank(rows) == 1
    rows = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    assert rank(rows) == 2
    assert rank([]) == 0


def test_float_rank_with_tolerance():
    rows = [(1.0, 2.0), (2.0, 4.0 + 1e-13)]
    assert rank(rows, tol=1e-9) == 1


def test_solve_square_and_invert():
    a = [(Fraction(2), Fraction(1)), (Fraction(1), Fraction(3))]
    x = solve_square(a, (Fraction(5), Fraction(10)))
    assert mat_vec(a, x) == (Fraction(5), Fraction(10))
    inv = invert(a)
    assert mat_vec(inv, mat_vec(a, (Fraction(7), Fraction(-2)))) == (Fraction(7), Fraction(-2))
    singular = [(Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))]
    assert solve_square(singular, (Fraction(1), Fraction(1))) is None
    assert invert(singular) is None


def test_vec_sub():
    assert vec_sub((Fraction(3), Fraction(1)), (Fraction(1), Fraction(1))) == (2, 0)
