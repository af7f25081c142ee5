import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twistedhom.checks import contraction, vanishing_witness
from twistedhom.cyclotomic import CyclotomicNumber
from twistedhom.engine.homology import betti_twisted
from twistedhom.errors import InvalidInputError, PreconditionError, SizeLimitError
from twistedhom.groups import (BarChain, bar_chain_boundary, bar_cohomology_dims, characters,
                               character_values, nerve_complex, nerve_group,
                               nontrivial_characters, num_cells, shuffle_product, unit_chain)
from twistedhom.local_systems import twisted_complex

from oracles import bar_cohomology_bruteforce, cyclic_table, klein_four_table

ORACLE_CASES = [((2,), 2), ((2,), 3), ((3,), 3), ((3,), 2), ((4,), 2), ((2, 2), 2), ((2, 2), 3),
                ((5,), 5), ((6,), 2), ((6,), 3)]


def _table(inv):
    if inv == (2, 2):
        return klein_four_table()
    return cyclic_table(inv[0])


@pytest.mark.parametrize("inv,ell", ORACLE_CASES)
def test_bar_cohomology_against_bruteforce(inv, ell):
    dims = bar_cohomology_dims(nerve_group(inv), ell, 3)
    assert dims == bar_cohomology_bruteforce(_table(inv), ell, 3)


def test_bar_cohomology_caps():
    with pytest.raises(SizeLimitError):
        bar_cohomology_dims(nerve_group((17,)), 17, 2)
    with pytest.raises(SizeLimitError):
        bar_cohomology_dims(nerve_group((2,)), 2, 5)
    assert bar_cohomology_dims(nerve_group((2,)), 2, 4, degree_cap=4) == [1] * 5


@pytest.mark.parametrize("inv", [(2,), (3,), (2, 2), (4,)])
def test_nerve_boundaries_square_to_zero_in_group_ring(inv):
    G = nerve_group(inv)
    E = nerve_complex(G, 4)
    E.check_in_group(G)
    assert E.sizes() == tuple((G.order - 1) ** k for k in range(5))
    assert num_cells(G, 3) == (G.order - 1) ** 3


@pytest.mark.parametrize("inv,ell,count", [((2,), 2, 2), ((3,), 3, 3), ((2, 2), 2, 4),
                                           ((4,), 2, 2), ((3, 3), 3, 9), ((5,), 2, 1)])
def test_character_counts(inv, ell, count):
    G = nerve_group(inv)
    chars = characters(G, ell)
    assert len(chars) == count
    for chi in chars:
        vals = character_values(G, chi)
        for g in range(G.order):
            for h in range(G.order):
                assert vals[G.mul(g, h)] == (vals[g] + vals[h]) % ell


def _random_chain(rng, G, chi, degree):
    cells = list(itertools.product(range(1, G.order), repeat=degree))
    terms = {}
    for t in rng.sample(cells, min(len(cells), rng.randint(1, 3))):
        terms[t] = CyclotomicNumber(chi.ell, [rng.randint(-3, 3) for _ in range(chi.ell - 1)])
    return BarChain(G, chi, degree, terms)


GROUPS = [((2,), 2), ((3,), 3), ((2, 2), 2), ((4,), 2)]


@settings(max_examples=40)
@given(st.sampled_from(GROUPS), st.integers(0, 2), st.integers(0, 2), st.integers(0, 10**6))
def test_boundary_squares_to_zero_and_leibniz(case, p, q, seed):
    inv, ell = case
    rng = random.Random(seed)
    G = nerve_group(inv)
    for chi in characters(G, ell):
        a = _random_chain(rng, G, chi, p)
        b = _random_chain(rng, G, chi, q)
        assert bar_chain_boundary(bar_chain_boundary(a)).is_zero()
        lhs = bar_chain_boundary(shuffle_product(a, b))
        da_b = shuffle_product(bar_chain_boundary(a), b)
        a_db = shuffle_product(a, bar_chain_boundary(b))
        assert lhs == (da_b + a_db if p % 2 == 0 else da_b - a_db)
        sign = -1 if p * q % 2 else 1
        assert shuffle_product(a, b) == shuffle_product(b, a).scale(sign)


def test_unit_is_neutral():
    G = nerve_group((3,))
    chi = nontrivial_characters(G, 3)[0]
    x = _random_chain(random.Random(1), G, chi, 2)
    u = unit_chain(G, chi)
    assert shuffle_product(u, x) == x == shuffle_product(x, u)


@pytest.mark.parametrize("inv,ell", [((2,), 2), ((3,), 3), ((2, 2), 2), ((5,), 5)])
def test_contraction_is_a_homotopy_to_zero(inv, ell):
    G = nerve_group(inv)
    rng = random.Random(7)
    for chi in nontrivial_characters(G, ell):
        w = vanishing_witness(G, chi, 2)
        assert w.bounds_unit and w.vanishes
        for degree in range(3):
            x = _random_chain(rng, G, chi, degree)
            s = lambda y: contraction(w, y)
            total = bar_chain_boundary(s(x))
            if degree:
                total = total + s(bar_chain_boundary(x))
            assert total == x


def test_witness_coefficients():
    G = nerve_group((2,))
    w = vanishing_witness(G, nontrivial_characters(G, 2)[0], 3)
    assert w.coefficient == CyclotomicNumber.from_scalar(2, Fraction(1, 2))
    assert str(w.coefficient) == "cyc(l=2; 1/2)"
    G3 = nerve_group((3,))
    w3 = vanishing_witness(G3, nontrivial_characters(G3, 3)[0], 3)
    assert str(w3.coefficient) == "cyc(l=3; 2/3 + 1/3*z^1)"


def test_witness_preconditions():
    G = nerve_group((2,))
    with pytest.raises(PreconditionError):
        vanishing_witness(G, characters(G, 2)[0], 2)


def test_trivial_character_does_not_vanish():
    G = nerve_group((3,))
    E = nerve_complex(G, 3)
    betti = betti_twisted(twisted_complex(E, characters(G, 3)[0])).betti
    assert betti[0] == 1


def test_chain_validation():
    G = nerve_group((3,))
    chi = characters(G, 3)[0]
    with pytest.raises(InvalidInputError):
        BarChain(G, chi, 1, {(0,): 1})
    with pytest.raises(InvalidInputError):
        BarChain(G, chi, 2, {(1,): 1})
    other = nerve_group((2,))
    with pytest.raises(InvalidInputError):
        BarChain(other, chi, 0, {(): 1})
    with pytest.raises(SizeLimitError):
        x = BarChain(G, chi, 2, {(1, 1): 1})
        shuffle_product(x, x, degree_cap=3)
