import pytest
from hypothesis import given, strategies as st

from twistedhom.catalog import load_builtin, rpn_twisted
from twistedhom.cyclotomic import CyclotomicNumber
from twistedhom.engine.homology import betti_twisted
from twistedhom.errors import InvalidComplexError, InvalidInputError
from twistedhom.local_systems import (GroupRingElement, GroupRingMatrix, LocalSystem,
                                      enumerate_local_systems, is_trivial,
                                      parse_group_ring_element, parse_local_system, twist,
                                      twisted_complex, trivial_system, TwistedChainComplex)
from twistedhom.matrix import SparseMatrix
from twistedhom.presentation import GroupPresentation

from oracles import rank_mod, rank_q

NAMES = ("a", "b")
FREE2 = GroupPresentation(2, (), NAMES)
letters = st.sampled_from([1, -1, 2, -2])


@st.composite
def ring_elements(draw):
    terms = draw(st.lists(st.tuples(st.lists(letters, max_size=4).map(tuple), st.integers(-3, 3)),
                          max_size=4))
    return GroupRingElement(terms)


@given(ring_elements(), ring_elements(), ring_elements())
def test_group_ring_axioms(x, y, z):
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).augmentation() == x.augmentation() * y.augmentation()
    assert x - x == GroupRingElement()


@given(ring_elements())
def test_group_ring_format_round_trip(x):
    assert parse_group_ring_element(x.format(NAMES), NAMES) == x


@given(ring_elements(), ring_elements(), st.integers(0, 4), st.integers(0, 4))
def test_twist_is_multiplicative(x, y, va, vb):
    L = LocalSystem(5, (va, vb), FREE2)
    A = GroupRingMatrix.from_dense(FREE2, [[x]])
    B = GroupRingMatrix.from_dense(FREE2, [[y]])
    lhs = twist(A @ B, L).get(0, 0, CyclotomicNumber.zero(5))
    rhs = twist(A, L).get(0, 0, CyclotomicNumber.zero(5)) * \
        twist(B, L).get(0, 0, CyclotomicNumber.zero(5))
    assert lhs == rhs


def test_parse_group_ring_element():
    e = parse_group_ring_element("3*a.b^-1 + -1*1 + b", NAMES)
    assert e.terms == {(): -1, (2,): 1, (1, -2): 3}
    assert parse_group_ring_element("0", NAMES) == GroupRingElement()
    with pytest.raises(InvalidInputError):
        parse_group_ring_element("a + + b", NAMES)


def test_local_system_validation():
    P = GroupPresentation(1, ((1, 1),), ("a",))
    with pytest.raises(InvalidInputError):
        LocalSystem(3, (1,), P)       # a^2 = 1 forces a -> 1 in Z/3
    with pytest.raises(InvalidInputError):
        LocalSystem(4, (1,), P)
    L = parse_local_system("l=2; a:1", P)
    assert L.format() == "l=2; a:1" and not is_trivial(L)
    assert parse_local_system(L.format(), P) == L
    with pytest.raises(InvalidInputError):
        parse_local_system("l=2; q:1", P)
    with pytest.raises(InvalidInputError):
        parse_local_system("a:1", P)


@pytest.mark.parametrize("name", ["rp2", "torus", "klein", "rp3", "sphere:2"])
@pytest.mark.parametrize("ell", [2, 3, 5])
def test_local_system_count_is_l_to_b1(name, ell):
    E = load_builtin(name).equivariant()
    P = E.presentation
    A = P.abelianization_matrix()
    b = P.ngens - (rank_mod(A, ell) if A else 0)
    systems = enumerate_local_systems(P, ell)
    assert len(systems) == ell ** b
    assert systems == sorted(systems, key=lambda L: L.values)
    assert is_trivial(systems[0])


@pytest.mark.parametrize("name", ["rp2", "torus", "klein", "rp3", "circle", "sphere:1"])
def test_trivial_system_gives_rational_homology(name):
    b = load_builtin(name)
    E = b.equivariant()
    C = b.integer_complex()
    dense = [M.to_dense() if M.nrows and M.ncols else [] for M in C.boundaries]
    ranks = [rank_q(d) if d else 0 for d in dense] + [0]
    expected = tuple(n - ranks[k] - ranks[k + 1] for k, n in enumerate(C.sizes()))
    for ell in (2, 3):
        assert betti_twisted(twisted_complex(E, trivial_system(E.presentation, ell))).betti == \
            expected


def test_torus_nontrivial_systems_are_acyclic():
    E = load_builtin("torus").equivariant()
    for L in enumerate_local_systems(E.presentation, 3):
        if not is_trivial(L):
            assert betti_twisted(twisted_complex(E, L)).betti == (0, 0, 0)


def test_sum_of_systems():
    E = rpn_twisted(3)
    L = parse_local_system("l=2; a:1", E.presentation)
    assert is_trivial(L + L)


def test_twisted_complex_rejects_bad_differential():
    one = CyclotomicNumber.one(3)
    d1 = SparseMatrix.from_dense([[one]])
    d2 = SparseMatrix.from_dense([[one]])
    with pytest.raises(InvalidComplexError):
        TwistedChainComplex(3, [SparseMatrix(0, 1), d1, d2])


def test_mismatched_presentation():
    E = rpn_twisted(2)
    L = LocalSystem(2, (1, 0), FREE2)
    with pytest.raises(InvalidInputError):
        twisted_complex(E, L)
