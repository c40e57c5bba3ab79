import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from concur_homology import IntegerMatrix, smith_normal_form

from oracles import invariant_factors_by_minors, rational_rank

CUBE_D1 = [[-1, -1, 0], [1, 0, -1], [0, 1, 1]]
PETRI_D1 = [[-1, -1, 0, 0], [0, 0, -1, -1], [1, 0, 1, 0], [0, 1, 0, 1]]


@pytest.mark.parametrize(
    "rows, diagonal",
    [
        (CUBE_D1, (1, 1, 0)),
        (PETRI_D1, (1, 1, 1, 0)),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1)),
        ([[2, 0], [0, 3]], (1, 6)),
    ],
)
def test_known_forms(rows, diagonal):
    assert smith_normal_form(IntegerMatrix.from_lists(rows)).diagonal == diagonal


def test_diag_2_3_against_minor_oracle():
    assert invariant_factors_by_minors([[2, 0], [0, 3]]) == [1, 6]


def test_sympy_example():
    rows = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    form = smith_normal_form(IntegerMatrix.from_lists(rows))
    assert form.diagonal == (1, 10, 30, 0)
    assert list(form.invariant_factors) == invariant_factors_by_minors(rows)


def test_empty_shapes():
    assert smith_normal_form(IntegerMatrix(0, 3)).diagonal == ()
    assert smith_normal_form(IntegerMatrix(3, 0)).rank == 0
    assert smith_normal_form(IntegerMatrix(2, 2)).diagonal == (0, 0)


def test_large_entries_stay_exact():
    big = 10**40 + 7
    rows = [[big, big * 3], [big * 2, big * 6 + 2]]
    form = smith_normal_form(IntegerMatrix.from_lists(rows))
    assert list(form.invariant_factors) == invariant_factors_by_minors(rows)
    assert form.rank == rational_rank(rows) == 2


def test_against_sympy_on_fixed_matrices():
    rows = [[4, -6, 2, 0], [6, 9, -3, 12], [-2, 3, 1, 8]]
    ours = smith_normal_form(IntegerMatrix.from_lists(rows)).invariant_factors
    theirs = tuple(int(abs(x)) for x in invariant_factors(Matrix(rows), domain=ZZ))
    assert ours == theirs


def test_matmul_and_identity():
    a = IntegerMatrix.from_lists(CUBE_D1)
    assert a @ IntegerMatrix.identity(3) == a
    with pytest.raises(ValueError):
        a @ IntegerMatrix(2, 2)
