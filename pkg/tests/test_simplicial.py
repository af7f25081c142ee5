import pytest
from hypothesis import given, strategies as st

from twistedhom.catalog import load_builtin, sphere
from twistedhom.errors import InvalidComplexError, InvalidInputError
from twistedhom.matrix import SparseMatrix
from twistedhom.simplicial import (IntegerChainComplex, SimplicialComplex, boundary_matrices,
                                   check_complex, spanning_tree, tensor_complex)

facet_lists = st.lists(st.lists(st.integers(0, 7), min_size=1, max_size=4, unique=True),
                       min_size=1, max_size=8)


@given(facet_lists)
def test_closure_is_face_closed_and_stable(facets):
    K = SimplicialComplex(facets)
    again = SimplicialComplex(K.simplices(), closure=False)
    assert again == K
    assert SimplicialComplex(K.facets()) == K
    C = boundary_matrices(K)
    for k in range(1, len(C.boundaries) - 1):
        assert (C.boundaries[k] @ C.boundaries[k + 1]).is_zero()
    assert C.euler_characteristic() == K.euler_characteristic()


@given(facet_lists, facet_lists)
def test_tensor_product_is_a_complex(fa, fb):
    A = boundary_matrices(SimplicialComplex(fa))
    B = boundary_matrices(SimplicialComplex(fb))
    T = tensor_complex(A, B)
    for k in range(1, len(T.boundaries) - 1):
        assert (T.boundaries[k] @ T.boundaries[k + 1]).is_zero()
    assert T.euler_characteristic() == A.euler_characteristic() * B.euler_characteristic()


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_spheres(n):
    K = sphere(n)
    assert len(K.vertices) == n + 2
    assert K.euler_characteristic() == 1 + (-1) ** n


def test_spanning_tree():
    K = load_builtin("torus").simplicial
    T = spanning_tree(K, K.vertices[0])
    assert len(T) == len(K.vertices) - 1
    with pytest.raises(InvalidInputError):
        spanning_tree(SimplicialComplex([(0, 1), (2, 3)]), 0)


def test_invalid_simplices():
    with pytest.raises(InvalidInputError):
        SimplicialComplex([(0, 0, 1)])
    with pytest.raises(InvalidInputError):
        SimplicialComplex([(-1, 2)])
    with pytest.raises(InvalidInputError):
        SimplicialComplex([(0, 1, 2), (0, 1)], closure=False)


def test_check_complex_reports_degree():
    d1 = SparseMatrix.from_dense([[1], [1]])
    d2 = SparseMatrix.from_dense([[1]])
    with pytest.raises(InvalidComplexError, match="1"):
        check_complex([SparseMatrix(0, 2), d1, d2])
    with pytest.raises(InvalidInputError):
        IntegerChainComplex([SparseMatrix(1, 1)])


def test_sparse_matrix_basics():
    A = SparseMatrix.from_dense([[1, 0], [0, 2]])
    assert A.transpose() == A
    assert A.apply({0: 3, 1: 1}) == {0: 3, 1: 2}
    assert (A @ SparseMatrix.identity(2)) == A
    assert A.nnz() == 2 and not A.is_zero()
    assert A.select([1], [1]).to_dense() == [[2]]
