import random
from fractions import Fraction

import pytest

from splinedim.errors import GeometryError
from splinedim.forms import (
    LinearForm,
    RationalMatrix,
    binom,
    distinct_forms,
    form_power_times_monomial,
    monomial_basis,
    plane_of_triangle,
    power_multiples,
)


def test_binom_convention():
    assert binom(2, 3) == 0
    assert binom(-4, 3) == 0
    assert binom(3, 3) == 1
    assert binom(6, 3) == 20
    assert binom(5, -1) == 0


def test_plane_of_triangle_is_canonical():
    assert plane_of_triangle((0, 0, 0), (1, 0, 0), (0, 1, 0)).coeffs == (0, 0, 1, 0)
    f = plane_of_triangle((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert f.coeffs == (1, 1, 1, -1)
    assert str(f) == "x + y + z - w"
    # orientation of the triangle does not matter
    assert plane_of_triangle((0, 0, 1), (0, 1, 0), (1, 0, 0)) == f


def test_plane_with_fractional_points():
    f = plane_of_triangle((Fraction(1, 4),) * 3, (0, 0, 0), (1, 0, 0))
    assert f.coeffs == (0, 1, -1, 0)


def test_collinear_points():
    with pytest.raises(GeometryError) as exc:
        plane_of_triangle((0, 0, 0), (1, 1, 1), (2, 2, 2))
    assert exc.value.category == "collinear_points"


def test_canonical_scaling_and_sign():
    assert LinearForm.canonical(-2, 0, 4, 0).coeffs == (1, 0, -2, 0)
    assert LinearForm.canonical(0, Fraction(1, 2), Fraction(1, 3), 0).coeffs == (0, 3, 2, 0)
    with pytest.raises(GeometryError):
        LinearForm.canonical(0, 0, 0, 0)


def test_distinct_forms_identifies_scalar_multiples():
    fs = [LinearForm((2, 2, 0, 0)), LinearForm((1, 1, 0, 0)), LinearForm((-3, -3, 0, 0)), LinearForm((0, 0, 1, 0))]
    assert distinct_forms(fs) == [LinearForm((1, 1, 0, 0)), LinearForm((0, 0, 1, 0))]


@pytest.mark.parametrize("k,n", [(0, 4), (1, 4), (3, 4), (5, 3), (4, 2)])
def test_monomial_basis_size_and_order(k, n):
    b = monomial_basis(k, n)
    assert len(b) == binom(k + n - 1, n - 1)
    assert b.exponents[0] == (k,) + (0,) * (n - 1)
    assert all(sum(e) == k for e in b.exponents)
    assert all(b.index[e] == i for i, e in enumerate(b.exponents))


def test_square_of_binomial():
    basis = monomial_basis(2, 2)
    assert basis.exponents == ((2, 0), (1, 1), (0, 2))
    assert form_power_times_monomial(LinearForm((1, 1, 0, 0)), 2, (0, 0), basis) == [1, 2, 1]
    assert form_power_times_monomial(LinearForm((1, -2, 0, 0)), 1, (1, 0), basis) == [1, -2, 0]


def test_degree_mismatch():
    with pytest.raises(GeometryError) as exc:
        form_power_times_monomial(LinearForm((1, 1, 0, 0)), 2, (1, 0), monomial_basis(2, 2))
    assert exc.value.category == "degree_mismatch"
    with pytest.raises(GeometryError):
        form_power_times_monomial(LinearForm((1, 0, 1, 0)), 1, (1, 0), monomial_basis(2, 2))


def test_power_multiples_rows():
    rows = power_multiples(LinearForm((1, 1, 1, -1)), 2, 4)
    assert len(rows) == binom(5, 3)
    assert power_multiples(LinearForm((1, 0, 0, 0)), 3, 2) == []
    # x^2 * w^2 is a single monomial
    x2 = power_multiples(LinearForm((1, 0, 0, 0)), 2, 4)
    assert all(len(r) == 1 and set(r.values()) == {1} for r in x2)


def test_rational_matrix_rank():
    assert RationalMatrix.identity(5).rank() == 5
    assert RationalMatrix.zeros(3, 4).rank() == 0
    m = RationalMatrix.from_dense([[1, 2, 3], [2, 4, 6], [Fraction(1, 3), 0, 1]])
    assert m.rank() == 2
    assert m.nullity() == 1
    assert m.transpose().rank() == 2
    basis = m.row_basis()
    assert basis.nrows == 2
    assert basis.vstack(m).rank() == 2


def test_rational_matrix_matmul_and_zero():
    a = RationalMatrix.from_dense([[1, -1], [2, 0]])
    b = RationalMatrix.from_dense([[1, 1], [1, 1]])
    assert a.matmul(b).to_dense() == [[0, 0], [2, 2]]
    assert RationalMatrix.from_dense([[1, -1]]).matmul(b).is_zero()
    with pytest.raises(GeometryError):
        a.matmul(RationalMatrix.identity(3))


def test_rational_matrix_rejects_bad_columns():
    with pytest.raises(GeometryError):
        RationalMatrix([{3: 1}], 3)
    with pytest.raises(GeometryError):
        RationalMatrix.from_dense([[1, 2], [1]])


def test_expansion_examples():
    basis = monomial_basis(3)
    x2y = form_power_times_monomial(LinearForm((1, 0, 0, 0)), 2, (0, 1, 0, 0), basis)
    assert sum(x2y) == 1
    assert x2y[basis.index[(2, 1, 0, 0)]] == 1

    cube = form_power_times_monomial(LinearForm((1, 0, 0, -1)), 3, (0, 0, 0, 0), basis)
    at = [(3, 0, 0, 0), (2, 0, 0, 1), (1, 0, 0, 2), (0, 0, 0, 3)]
    assert [cube[basis.index[e]] for e in at] == [1, -3, 3, -1]
    assert sum(abs(c) for c in cube) == 8


def test_four_quadratics_in_two_variables_have_rank_3():
    basis = monomial_basis(2, 2)
    rows = [
        form_power_times_monomial(LinearForm(c), 2, (0, 0), basis)
        for c in ((1, 0, 0, 0), (1, 1, 0, 0), (0, 1, 0, 0), (1, -1, 0, 0))
    ]
    assert RationalMatrix.from_dense(rows).rank() == 3


def test_canonical_form_is_idempotent():
    rng = random.Random(7)
    for _ in range(200):
        vals = [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(4)]
        if not any(vals):
            continue
        f = LinearForm.canonical(*vals)
        assert f.canon() == f
        assert LinearForm.canonical(*(v * rng.choice([-3, -1, 2, Fraction(5, 7)]) for v in vals)) == f


def test_same_plane_from_different_triangles():
    # three points on x + 2y - z = 1, taken in two different triples
    pts = [(1, 0, 0), (0, 1, 1), (0, 0, -1), (2, 1, 3)]
    assert plane_of_triangle(*pts[:3]) == plane_of_triangle(*pts[1:]) == LinearForm((1, 2, -1, -1))


def test_rank_survives_transpose_and_row_scaling():
    rng = random.Random(11)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        dense = [[Fraction(rng.randint(-3, 3), rng.randint(1, 4)) if rng.random() < 0.6 else 0 for _ in range(ncols)]
                 for _ in range(nrows)]
        if rng.random() < 0.5 and nrows > 1:
            # force a dependent row
            dense[-1] = [a + 2 * b for a, b in zip(dense[0], dense[1 % nrows])]
        m = RationalMatrix.from_dense(dense)
        factors = [Fraction(rng.choice([-5, -2, -1, 1, 3, 7]), rng.randint(1, 9)) for _ in range(nrows)]
        assert m.rank() == m.transpose().rank()
        assert m.scale_rows(factors).rank() == m.rank()
        assert m.nullity() == ncols - m.rank()
