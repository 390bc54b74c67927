"""Polynomial layer: ordering, arithmetic, linear-form matrices, minors."""

from fractions import Fraction

import pytest

from monadforge.fields import QQ, PrimeField
from monadforge.forms import (Form, LinearFormMatrix, drl_key, form_det,
                              minor_ideal, monomials_of_degree)
from monadforge.matrices import Matrix
from monadforge.rng import CounterRng


def x(i, nvars=3):
    return Form.variable(QQ, nvars, i)


def test_order_is_graded_reverse_lex():
    # In three variables x2^2 beats x1*x3: same degree, and the last
    # nonzero entry of (1,0,1)-(0,2,0) is positive.
    assert drl_key((0, 2, 0)) > drl_key((1, 0, 1))
    f = x(0) * x(2) - x(1) * x(1)
    assert f.leading()[0] == (0, 2, 0)
    # Degree dominates everything else.
    assert drl_key((3, 0, 0)) > drl_key((0, 0, 2))


def test_monomials_of_degree_descending():
    monos = monomials_of_degree(2, 2)
    assert monos == ((2, 0), (1, 1), (0, 2))
    assert list(monos) == sorted(monos, key=drl_key, reverse=True)
    assert len(monomials_of_degree(4, 3)) == 20  # C(6,3)
    assert monomials_of_degree(3, 0) == ((0, 0, 0),)
    assert monomials_of_degree(3, -1) == ()


def test_ring_arithmetic():
    f = (x(0) + x(1)) * (x(0) - x(1))
    assert f == x(0) * x(0) - x(1) * x(1)
    assert f.is_homogeneous()
    assert f.degree() == 2
    g = f - f
    assert g.is_zero()
    assert g.degree() == -1
    with pytest.raises(ValueError):
        (x(0) + Form.constant(QQ, 3, Fraction(1))).degree()


def test_eval_exact():
    f = x(0) * x(0) - x(1) * x(2)
    assert f.eval_at([Fraction(2, 3), Fraction(1, 3), Fraction(4, 3)]) == \
        Fraction(4, 9) - Fraction(4, 9)
    assert f.eval_at([2, 1, 4]) == 0
    assert f.eval_at([1, 1, 2]) == -1


def test_monic_and_mul_monomial():
    f = x(0).scale(Fraction(3)) + x(1).scale(Fraction(6))
    m = f.monic()
    assert m.leading()[1] == 1
    assert m == x(0) + x(1).scale(Fraction(2))
    shifted = f.mul_monomial((0, 1, 0), Fraction(1, 3))
    assert shifted == x(0) * x(1) + x(1) * x(1).scale(Fraction(2))


def test_map_to_field_commutes_with_eval():
    rng = CounterRng(41, 7)
    fp = PrimeField(101)
    for _ in range(20):
        terms = {}
        for mono in monomials_of_degree(3, 2):
            c = rng.fraction(9, 5)
            if c:
                terms[mono] = c
        f = Form(QQ, 3, terms)
        point = [rng.int_between(-10, 10) for _ in range(3)]
        lhs = fp.of(f.eval_at(point))
        rhs = f.map_to_field(fp).eval_at([fp.of(v) for v in point])
        assert lhs == rhs


def test_linear_form_matrix_entry_and_eval():
    # [[x1, x2], [x2, x3]] assembled from per-variable constant matrices.
    c1 = Matrix(QQ, [[1, 0], [0, 0]])
    c2 = Matrix(QQ, [[0, 1], [1, 0]])
    c3 = Matrix(QQ, [[0, 0], [0, 1]])
    lfm = LinearFormMatrix(QQ, 3, [c1, c2, c3])
    assert lfm.entry(0, 0) == x(0)
    assert lfm.entry(1, 0) == x(1)
    evaluated = lfm.eval_at([2, 3, 5])
    assert evaluated == Matrix(QQ, [[2, 3], [3, 5]])
    again = Matrix(QQ, [[lfm.entry(i, j).eval_at([2, 3, 5]) for j in range(2)]
                        for i in range(2)])
    assert again == evaluated


def test_form_det_symmetric_pencil():
    c1 = Matrix(QQ, [[1, 0], [0, 0]])
    c2 = Matrix(QQ, [[0, 1], [1, 0]])
    c3 = Matrix(QQ, [[0, 0], [0, 1]])
    lfm = LinearFormMatrix(QQ, 3, [c1, c2, c3])
    det = form_det(lfm.form_rows())
    assert det == x(0) * x(2) - x(1) * x(1)


def test_minor_ideal_sizes_and_order():
    c1 = Matrix(QQ, [[1, 0], [0, 0]])
    c2 = Matrix(QQ, [[0, 1], [1, 0]])
    c3 = Matrix(QQ, [[0, 0], [0, 1]])
    lfm = LinearFormMatrix(QQ, 3, [c1, c2, c3])
    ones = minor_ideal(lfm, 1)
    # Row-major entry order: (0,0), (0,1), (1,0), (1,1).
    assert ones.gens == (x(0), x(1), x(1), x(2))
    twos = minor_ideal(lfm, 2)
    assert len(twos.gens) == 1
    assert twos.gens[0] == x(0) * x(2) - x(1) * x(1)


def test_minor_ideal_keeps_zero_generators_in_place():
    z = Matrix.zeros(QQ, 2, 2)
    c1 = Matrix(QQ, [[1, 0], [0, 1]])
    lfm = LinearFormMatrix(QQ, 2, [c1, z])
    minors = minor_ideal(lfm, 1)
    assert len(minors.gens) == 4
    assert minors.gens[1].is_zero() and minors.gens[2].is_zero()
    assert len(minors.nonzero_gens()) == 2


def test_left_right_mul_match_entrywise():
    rng = CounterRng(5, 13)
    fp = QQ
    coeffs = [Matrix(fp, [[rng.int_between(-4, 4) for _ in range(3)]
                          for _ in range(2)]) for _ in range(2)]
    lfm = LinearFormMatrix(fp, 2, coeffs)
    g = Matrix(fp, [[1, 2], [0, 1]])
    point = [3, -2]
    assert lfm.left_mul(g).eval_at(point) == g @ lfm.eval_at(point)
    h = Matrix(fp, [[2, 0, 0], [1, 1, 0], [0, 0, 1]])
    assert lfm.right_mul(h).eval_at(point) == lfm.eval_at(point) @ h
