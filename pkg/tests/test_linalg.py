from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import HealthCheck, given, settings, strategies as st

from quiverorbits import linalg
from quiverorbits.linalg import GF, QQ, left_nullspace, matmul, nullspace, rank, rref

from conftest import BACKENDS


def _gf_rank(mat, p):
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF as sGF
    dm = DomainMatrix([[sGF(p)(int(x)) for x in row] for row in mat], (len(mat), len(mat[0])), sGF(p))
    return dm.rank()


matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@pytest.mark.parametrize("p", [2, 3, 5, 13])
@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(mat=matrices)
def test_rank_mod_p_matches_sympy(kernel_backend, p, mat):
    reduced = [[x % p for x in row] for row in mat]
    assert rank(reduced, GF(p)) == _gf_rank(reduced, p)


@settings(max_examples=60, deadline=None)
@given(mat=matrices)
def test_rank_over_q_matches_sympy(mat):
    assert rank(mat, QQ) == sympy.Matrix(mat).rank()


@settings(max_examples=40, deadline=None)
@given(mat=matrices)
def test_backends_agree(mat):
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    from quiverorbits import _kernels, _kernels_py
    a = np.mod(np.array(mat, dtype=np.int64), 7)
    r1, p1 = _kernels.rref_mod_p(a, 7)
    r2, p2 = _kernels_py.rref_mod_p(a, 7)
    assert p1 == p2 and (np.asarray(r1) == np.asarray(r2)).all()
    assert _kernels.rank_mod_p(a, 7) == _kernels_py.rank_mod_p(a, 7) == len(p1)


@pytest.mark.parametrize("field", [QQ, GF(2), GF(5)])
@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(mat=matrices)
def test_nullspace_is_kernel(kernel_backend, field, mat):
    mat = [[field(x) for x in row] for row in mat]
    ncols = len(mat[0])
    basis = nullspace(mat, ncols, field)
    assert len(basis) == ncols - rank(mat, field)
    zero = field(0)
    for x in basis:
        prod = matmul(mat, [[v] for v in x], field, 1)
        assert all(row[0] == zero for row in prod)


def test_left_nullspace():
    mat = [[1, 2], [2, 4], [0, 1]]
    basis = left_nullspace(mat, 3, 2, QQ)
    assert len(basis) == 1
    y = basis[0]
    assert all(sum(y[i] * mat[i][j] for i in range(3)) == 0 for j in range(2))


def test_rref_shape_and_pivots():
    rows, piv = rref([[0, 2, 4], [0, 1, 2], [1, 0, 1]], 3, QQ)
    assert piv == (0, 1)
    assert rows == [(1, 0, 1), (0, 1, 2)]
    rows, piv = rref([[0, 2, 4], [0, 1, 2], [1, 0, 1]], 3, GF(3))
    assert piv == (0, 1) and rows == [(1, 0, 1), (0, 1, 2)]


def test_field_spec():
    assert GF(5)(Fraction(1, 2)) == 3
    assert GF(7).inv(3) == 5
    assert QQ(3) == Fraction(3)
    with pytest.raises(ValueError):
        GF(4)
    assert str(GF(3)) == "GF(3)" and str(QQ) == "QQ"


def test_backend_switch():
    before = linalg.backend()
    linalg.use_backend("python")
    assert linalg.backend() == "python"
    linalg.use_backend(before)
    with pytest.raises(ValueError):
        linalg.use_backend("fortran")


def test_empty_matrices():
    assert rank([], GF(2)) == 0
    assert rref([], 3, QQ) == ([], ())
    assert nullspace([[0, 0]], 2, GF(3)) == [(1, 0), (0, 1)]
