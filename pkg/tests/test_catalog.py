"""Explicit indecomposables of the infinite families and their predicted translates."""

import pytest

from quivertilt.ar import tau
from quivertilt.catalog import (POST, PRE, CatalogRep, L, M, N, S, dinf_orbits, make, members,
                                orbit_component, predicted_component, predicted_tau, regular, verify_catalog)
from quivertilt.modules import injective, is_indecomposable, is_isomorphic, projective
from quivertilt.quiver import A_INF, A_INFINF, D_INF, WindowTooSmall, truncate

AINF = truncate(A_INF, (0, 10))
AINFINF = truncate(A_INFINF, (-8, 8))
DINF = truncate(D_INF, (0, 10))


def dimvec(R, upto):
    return tuple(R.dims.get(v, 0) for v in range(upto))


def test_thin_modules():
    assert dimvec(make(N(0, 3), DINF), 5) == (0, 1, 1, 1, 0)
    assert dimvec(make(N(1, 3), DINF), 5) == (1, 0, 1, 1, 0)
    assert dimvec(make(L(2, 3), DINF), 5) == (1, 1, 2, 1, 0)
    assert dimvec(make(L(3), DINF), 5) == (1, 1, 1, 1, 0)
    assert dimvec(make(M(2, 4), AINF), 6) == (0, 0, 1, 1, 1, 0)


def test_made_modules_are_indecomposable():
    for c in members("DInf", (0, 6)):
        assert is_indecomposable(make(c, DINF))


def test_standard_identifications():
    assert is_isomorphic(make(M(0, 0), AINF), projective(AINF, 0))
    assert is_isomorphic(make(S(0), DINF), projective(DINF, 0))
    assert is_isomorphic(make(S(1), DINF), projective(DINF, 1))


def test_parameter_validation():
    for bad in [("Mab_AInf", (3, 1)), ("Mab_AInf", (-1, 2)), ("M_DInf", (1, 3)), ("N0", (1,)),
                ("Llm", (3, 3)), ("Lm", (1,)), ("Q", (0,))]:
        with pytest.raises(ValueError):
            CatalogRep(*bad)
    CatalogRep("Mab_AInfInf", (-3, 2))


def test_outside_window():
    with pytest.raises(WindowTooSmall):
        make(M(0, 12), AINF)


def test_predicted_tau_examples():
    assert predicted_tau(M(0, 4)) == M(2, 2)
    assert predicted_tau(M(1, 4)) == M(0, 2)
    assert predicted_tau(M(3, 6)) == M(1, 4)
    assert predicted_tau(M(0, 2)) is None
    assert predicted_tau(M(1, 3)) is None
    assert predicted_tau(M(-2, 4, "AInfInf")) == M(0, 2, "AInfInf")
    assert predicted_tau(M(0, 3, "AInfInf")) == M(2, 5, "AInfInf")
    assert predicted_tau(M(1, 4, "AInfInf")) == M(-1, 2, "AInfInf")
    assert predicted_tau(N(0, 5)) == N(1, 3)
    assert predicted_tau(N(1, 3)) == S(1)
    assert predicted_tau(N(0, 4)) == N(1, 6)


@pytest.mark.parametrize("kind,q,window", [("AInf", AINF, (0, 10)), ("AInfInf", AINFINF, (-8, 8))])
def test_predicted_tau_matches_computed(kind, q, window):
    checked = 0
    for c in members(kind, window, margin=3):
        pt = predicted_tau(c)
        if pt is None:
            continue
        try:
            assert is_isomorphic(tau(make(c, q)), make(pt, q)), c
        except WindowTooSmall:
            continue
        checked += 1
    assert checked >= 8


def test_dinf_regular_translates_match():
    for c in [M(3, 4, "DInf"), L(2), M(2, 3, "DInf"), L(2, 3), L(3, 4)]:
        assert is_isomorphic(tau(make(c, DINF)), make(predicted_tau(c), DINF)), c


def test_predicted_component_examples():
    assert predicted_component(M(0, 4)).component == PRE
    assert predicted_component(M(1, 3)).component == POST
    assert predicted_component(M(0, 3, "AInfInf")).component == regular(0)
    assert predicted_component(M(-1, 2, "AInfInf")).component == regular(1)
    assert predicted_component(M(-2, 2, "AInfInf")).component == PRE
    assert predicted_component(L(4)).component == regular(0)
    assert predicted_component(N(0, 4)).ambiguous


def test_orbit_component():
    assert orbit_component(projective(AINF, 3)) == PRE
    assert orbit_component(injective(AINF, 0)) == POST
    assert orbit_component(make(M(0, 3, "AInfInf"), AINFINF)) == "regular"


def test_verify_small_windows():
    for kind, w in [("AInf", (0, 8)), ("DInf", (0, 8))]:
        r = verify_catalog(kind, w, margin=2)
        assert r.ok, r.failures[:3]
        assert any(not it.skipped for it in r.items)


def test_verify_ainfinf_census():
    r = verify_catalog("AInfInf", (-6, 6), margin=2, census=True)
    assert r.ok, r.failures[:3]
    assert r.extra["census"]["components"] == 4
    for it in r.items:
        if it.alpha is not None:
            assert it.alpha <= 2


def test_tiny_window_skips_not_fails():
    r = verify_catalog("DInf", (0, 4), margin=0)
    assert r.ok
    assert any(it.skipped for it in r.items)


def test_dinf_orbits():
    out = dinf_orbits((0, 12), steps=3)
    assert all(v["agrees"] for v in out.values())
    assert out["P(0)"]["expected"][:3] == ["S(0)", "N0^3", "N1^5"]


def test_report_dot():
    r = verify_catalog("AInf", (0, 6), margin=1)
    dot = r.to_dot()
    assert dot.startswith("digraph AInf {") and dot.rstrip().endswith("}")
    assert "style=dashed" in dot
    assert r.to_dict()["ok"] is True


def test_n15_translates_to_n03():
    # read from the τ⁻ orbit S(0), N0^3, N1^5, ...; not N1^3
    assert predicted_tau(N(1, 5)) == N(0, 3)
    X = tau(make(N(1, 5), DINF))
    assert is_isomorphic(X, make(N(0, 3), DINF))
    assert not is_isomorphic(X, make(N(1, 3), DINF))
