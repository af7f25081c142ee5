"""Smith normal form, modular linear algebra, chain-complex reduction, cyclotomic rank."""

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twistedhom.cyclotomic import CyclotomicNumber
from twistedhom.engine.cyclorank import rank_cyclotomic
from twistedhom.engine.modular import (nullspace_mod_p, rank_mod_p, rref_mod_p, solve_mod_p)
from twistedhom.engine.reduction import FIELD, GF, ZZ, reduce_complex
from twistedhom.engine.smith import identity, matmul, smith_normal_form
from twistedhom.matrix import SparseMatrix
from twistedhom.simplicial import SimplicialComplex, boundary_matrices

from oracles import invariant_factors, rank_mod, rank_q

small_int = st.integers(-6, 6)


@st.composite
def int_matrices(draw, max_side=5):
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    return draw(st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=m, max_size=m))


@given(int_matrices())
def test_snf_matches_determinantal_divisors(A):
    s = smith_normal_form(A, inverses=True)
    assert matmul(matmul(s.U, A), s.V) == s.D
    assert matmul(s.U, s.Uinv) == identity(len(A))
    assert matmul(s.V, s.Vinv) == identity(len(A[0]))
    assert s.invariant_factors == invariant_factors(A)


def test_snf_small_cases():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == [2, 4]
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([], ncols=3).rank == 0
    assert smith_normal_form([[6, 0], [0, 4]]).diagonal == [2, 12]


@given(int_matrices(6), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p(A, p):
    assert rank_mod_p(np.array(A, dtype=np.int64), p) == rank_mod(A, p)
    R, piv = rref_mod_p(np.array(A, dtype=np.int64) % p, p)
    assert len(piv) == rank_mod(A, p)


@given(int_matrices(6), st.sampled_from([2, 3, 5]))
def test_nullspace_mod_p(A, p):
    n = len(A[0])
    basis = nullspace_mod_p(A, n, p)
    assert len(basis) == n - rank_mod(A, p)
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) % p == 0 for row in A)


def test_solve_mod_p():
    A = np.array([[1, 2], [3, 4]], dtype=np.int64)
    B = np.array([[5], [6]], dtype=np.int64)
    X = solve_mod_p(A, B, 7)
    assert ((A @ X - B) % 7 == 0).all()


@st.composite
def complexes(draw):
    n = draw(st.integers(3, 7))
    facets = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=4, unique=True),
                           min_size=1, max_size=8))
    return SimplicialComplex(facets)


def _dense(M):
    return M.to_dense() if M.nrows and M.ncols else []


@given(complexes(), st.sampled_from([2, 3, 5]))
def test_field_reduction_ranks(K, p):
    C = boundary_matrices(K)
    red = reduce_complex(C.boundaries, GF(p))
    for k, M in enumerate(C.boundaries):
        expect = rank_mod(_dense(M), p) if M.nrows and M.ncols else 0
        assert red.rank_lower(k) == expect
    assert all(M.is_zero() for M in red.boundaries)


@given(complexes())
def test_reduction_maps_are_chain_maps(K):
    C = boundary_matrices(K)
    for ring in (ZZ, GF(3)):
        red = reduce_complex(C.boundaries, ring, track=True)
        for d, n in enumerate(C.sizes()):
            for j in range(n):
                e = {j: 1}
                # f commutes with the differential
                if d >= 1:
                    lhs = red.f(d - 1, C.boundaries[d].apply(e))
                    rhs = red.boundaries[d].apply(red.f(d, e))
                    norm = {k: ring.norm(v) for k, v in lhs.items() if ring.norm(v)}
                    assert norm == {k: ring.norm(v) for k, v in rhs.items() if ring.norm(v)}
            for i in range(len(red.kept[d])):
                back = red.f(d, red.g(d, {i: 1}))
                assert {k: ring.norm(v) for k, v in back.items() if ring.norm(v)} == {i: 1}


def test_integer_reduction_keeps_torsion():
    # RP^2 over Z: a 2 survives in the residual d_2
    from twistedhom.catalog import load_builtin
    C = load_builtin("rp2").integer_complex()
    red = reduce_complex(C.boundaries, ZZ)
    residual = red.boundaries[2]
    entries = sorted(abs(v) for _, _, v in residual.entries())
    assert entries == [2]


def _cyc_rank(rows):
    """Naive Gaussian elimination over Q(zeta) using the field operations."""
    A = [list(r) for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][c].inverse()
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


@given(st.sampled_from([3, 5]), st.integers(1, 4), st.integers(1, 4), st.data())
def test_cyclotomic_rank(ell, m, n, data):
    rows = [[CyclotomicNumber(ell, data.draw(st.lists(st.integers(-2, 2), max_size=ell - 1)))
             for _ in range(n)] for _ in range(m)]
    if data.draw(st.booleans()) and m > 1:
        z = CyclotomicNumber.zeta_power(ell, 1)
        rows[-1] = [a * z + b for a, b in zip(rows[0], rows[1 % m])]
    M = SparseMatrix.from_dense(rows)
    assert rank_cyclotomic(M, ell) == _cyc_rank(rows)


def test_field_ring_with_fractions():
    from fractions import Fraction
    M = SparseMatrix.from_dense([[Fraction(1, 2), Fraction(1)], [Fraction(1), Fraction(2)]])
    red = reduce_complex([SparseMatrix(0, 2), M], FIELD)
    assert red.rank_lower(1) == rank_q(M.to_dense())


def test_untracked_maps_refuse():
    red = reduce_complex([SparseMatrix(0, 1)], ZZ)
    with pytest.raises(ValueError):
        red.f(0, {0: 1})


def test_random_dense_ranks_over_q():
    rng = random.Random(5)
    for _ in range(50):
        A = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(4)]
        s = smith_normal_form(A)
        assert s.rank == rank_q(A)
