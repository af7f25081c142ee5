import pytest
from hypothesis import given, strategies as st

from twistedhom.catalog import load_builtin, rpn_twisted
from twistedhom.errors import InvalidComplexError, InvalidInputError
from twistedhom.io import (emit_chain_complex, emit_group_ring, emit_simplicial, parse_complex,
                           parse_text)
from twistedhom.local_systems import EquivariantComplex, GroupRingElement
from twistedhom.simplicial import IntegerChainComplex, SimplicialComplex


def test_boundary_of_tetrahedron(tmp_path):
    f = tmp_path / "s2.txt"
    f.write_text("simplicial facets\n# boundary of a 3-simplex\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n")
    K = parse_complex(f)
    assert isinstance(K, SimplicialComplex)
    assert len(K.simplices()) == 14


def test_missing_face_is_named():
    text = "simplicial complete\n0\n1\n2\n0 1\n0 2\n0 1 2\n"
    with pytest.raises(InvalidInputError, match=r"\(1, 2\)"):
        parse_text(text)


def test_rpn_group_ring_file():
    text = """group-ring
generators a
relator a.a
dim 1 rows 1 cols 1
1*1 + -1*a
dim 2 rows 1 cols 1
1 + a
"""
    E = parse_text(text)
    assert isinstance(E, EquivariantComplex)
    assert E.sizes() == (1, 1, 1)
    assert E.boundaries[1].matrix.get(0, 0) == GroupRingElement({(): 1, (1,): -1})
    assert E.boundaries[2].matrix.get(0, 0) == GroupRingElement({(): 1, (1,): 1})
    assert emit_group_ring(E) == emit_group_ring(rpn_twisted(2))


@pytest.mark.parametrize("text,line", [
    ("simplicial facets\n0 1\n0 x\n", "line 3"),
    ("simplicial facets\n0 0 1\n", "line 2"),
    ("chain-complex\ndim 1 rows 2 cols 1\n1\n", "line 2"),
    ("chain-complex\ndim 1 rows 2 cols 1\n1\n-1\ndim 3 rows 1 cols 1\n1\n", "line 5"),
    ("group-ring\ngenerators a\nrelator b\n", "line 3"),
    ("group-ring\ngenerators a\ndim 1 rows 1 cols 1\n1*1 | a\n", "line 4"),
    ("nonsense\n", "line 1"),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(InvalidInputError, match=line):
        parse_text(text)


def test_chain_complex_must_square_to_zero():
    text = "chain-complex\ndim 1 rows 2 cols 1\n1\n-1\ndim 2 rows 1 cols 1\n1\n"
    with pytest.raises(InvalidComplexError):
        parse_text(text)


def test_chain_complex_with_optional_degree_zero():
    a = parse_text("chain-complex\ndim 1 rows 1 cols 1\n2\n")
    b = parse_text("chain-complex\ndim 0 rows 0 cols 1\ndim 1 rows 1 cols 1\n2\n")
    assert isinstance(a, IntegerChainComplex)
    assert emit_chain_complex(a) == emit_chain_complex(b)


def test_empty_and_unreadable(tmp_path):
    with pytest.raises(InvalidInputError):
        parse_text("# only a comment\n")
    with pytest.raises(InvalidInputError):
        parse_complex(tmp_path / "missing.txt")


@pytest.mark.parametrize("name", ["rp2", "rp3", "torus", "klein", "sphere:3"])
@pytest.mark.parametrize("mode", ["facets", "complete"])
def test_simplicial_round_trip(name, mode):
    text = emit_simplicial(load_builtin(name).simplicial, mode)
    assert emit_simplicial(parse_text(text), mode) == text


@pytest.mark.parametrize("name", ["rp2", "nerve:2:3", "product:rp2*rp2", "rpn-twisted:5"])
def test_group_ring_and_chain_round_trip(name):
    b = load_builtin(name)
    text = emit_group_ring(b.equivariant())
    assert emit_group_ring(parse_text(text)) == text
    text = emit_chain_complex(b.integer_complex())
    assert emit_chain_complex(parse_text(text)) == text


@given(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True),
                min_size=1, max_size=6))
def test_random_simplicial_round_trip(facets):
    K = SimplicialComplex(facets)
    for mode in ("facets", "complete"):
        text = emit_simplicial(K, mode)
        assert parse_text(text) == K
        assert emit_simplicial(parse_text(text), mode) == text
