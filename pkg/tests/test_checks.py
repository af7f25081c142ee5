import dataclasses

import pytest

from twistedhom.catalog import load_builtin
from twistedhom.checks import (VERDICTS, ConditionCReport, NoneFound, ObstructionCertificate,
                               cartan_leray_report, condition_c_check, hopf_h2_group,
                               hspace_obstruction, hurewicz_nonzero, loop_census,
                               verify_certificate)
from twistedhom.errors import BudgetExceededError
from twistedhom.local_systems import parse_local_system


def model(name):
    b = load_builtin(name)
    return b.simplicial if b.simplicial is not None else b.equivariant()


def test_hurewicz():
    s2 = hurewicz_nonzero(model("sphere:2"))
    assert s2.nonzero and s2.matrix in (((1,),), ((-1,),))
    assert s2.pi2 == s2.h2 == "Z^1"
    assert not hurewicz_nonzero(model("rp2")).nonzero
    assert not hurewicz_nonzero(model("rp3")).nonzero


@pytest.mark.parametrize("name,free,torsion", [("sphere:2", 0, []), ("rp2", 0, []),
                                               ("rp3", 0, []), ("product:rp2*rp2", 0, [2]),
                                               ("rpn-twisted:4", 0, [])])
def test_hopf_cokernel(name, free, torsion):
    g = hopf_h2_group(model(name))
    assert (g.free, list(g.torsion)) == (free, torsion)


@pytest.mark.parametrize("name,ell,verdict", [
    ("sphere:2", 2, "holds-via-i'"),
    ("rp2", 2, "holds-via-dimension-gap"),
    ("rp2", 3, "inconclusive"),
    ("rp3", 2, "inconclusive"),
])
def test_condition_c_verdicts(name, ell, verdict):
    r = condition_c_check(model(name), ell)
    assert r.verdict == verdict
    assert r.verdict in VERDICTS


def test_condition_c_note_for_low_dimensional_models():
    r = condition_c_check(model("rp2"), 2)
    assert any("complex-level" in n for n in r.notes)


def test_condition_c_budget_is_inconclusive():
    r = condition_c_check(model("torus"), 2, budget=200)
    assert r.verdict == "inconclusive" and r.notes


def test_condition_c_report_invariants():
    with pytest.raises(ValueError):
        ConditionCReport(2, 1, 1, 1, 0, False, "holds-via-i'")
    with pytest.raises(ValueError):
        ConditionCReport(2, 1, 1, 0, 0, False, "holds-via-dimension-gap")
    with pytest.raises(ValueError):
        ConditionCReport(2, 1, 1, 0, 0, False, "fails")


@pytest.mark.parametrize("name,dims,rank", [
    ("rp2", (1, 1, 1, 1, 0), 0),
    ("sphere:2", (0, 1, 1, 0, 0), 1),
    ("rp3", (1, 1, 0, 1, 1), 0),
])
def test_cartan_leray(name, dims, rank):
    r = cartan_leray_report(model(name), 2)
    assert r.dims == dims
    assert r.rank_pi_star == rank
    assert r.verdict == "pass"


def test_cartan_leray_product():
    r = cartan_leray_report(model("product:rp2*rp2"), 2)
    assert r.dims == (3, 3, 2, 4, 2)
    assert r.rank_pi_star == 0 and r.verdict == "pass"


@pytest.mark.parametrize("name,ell,a,b", [("rp2", 2, 1, 1), ("sphere:2", 2, 1, 0),
                                          ("rp3", 2, 0, 1), ("rp2", 3, 0, 0),
                                          ("sphere:2", 3, 1, 0)])
def test_census(name, ell, a, b):
    c = loop_census(model(name), ell)
    assert (c.invariant_h2, c.h1) == (a, b)
    assert c.count == ell ** (a + b)
    assert c.exists_trivial_on_base == (a > 0)


def test_census_needs_finite_group():
    with pytest.raises(BudgetExceededError):
        loop_census(model("torus"), 2, budget=200)


@pytest.mark.parametrize("name,found", [("rp2", True), ("klein", True), ("sphere:2", False),
                                        ("torus", False), ("circle", False), ("rp3", False)])
def test_hspace_search(name, found):
    X = model(name)
    res = hspace_obstruction(X, [2, 3])
    assert isinstance(res, ObstructionCertificate) == found
    if found:
        assert verify_certificate(X, res)
    else:
        assert isinstance(res, NoneFound)


def test_tampered_certificates_fail():
    X = model("rpn-twisted:2")
    cert = hspace_obstruction(X, [2])
    assert cert.degree == 2 and cert.rank == 1
    assert not verify_certificate(X, dataclasses.replace(cert, rank=2))
    assert not verify_certificate(X, dataclasses.replace(cert, degree=1))
    trivial = parse_local_system("l=2; a:0", X.presentation)
    assert not verify_certificate(X, dataclasses.replace(cert, system=trivial))
    assert "certificate" in cert.describe()
