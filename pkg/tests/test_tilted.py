"""The tilted category: construction, the tilting functors and the torsion correspondence."""

import pytest

from helpers import A3, KRONECKER, section_tilt
from quivertilt.ar import all_indecomposables, knit_preprojective, tau
from quivertilt.linalg import QQ
from quivertilt.modules import injective, is_isomorphic, is_projective, projective
from quivertilt.quiver import A_INF, truncate
from quivertilt.rep import HomSpace, sum_of
from quivertilt.tilted import (F, FinCategory, Fprime, G, Gprime, build_tilted, dual_tilting_check,
                               global_dimension, is_injective_cat, k0_matrix, psi_matrix, splitting_checks,
                               tau_cat, verify_bb)
from quivertilt.tilting import is_tilting

LOW = [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 0), (6, 0)]
HIGH = [(0, 2), (1, 2), (2, 2), (3, 1), (4, 1), (5, 0), (6, 0)]


@pytest.fixture(scope="module")
def ainf6():
    q = truncate(A_INF, (0, 6))
    return q, all_indecomposables(q.finite())


@pytest.fixture(scope="module")
def low_tilt(ainf6):
    q, cat = ainf6
    _, fq, T = section_tilt(q, LOW)
    return T, cat, build_tilted(T)


def test_hom_dims_of_projectives_are_path_counts():
    fq = truncate(A_INF, (0, 6)).finite()
    P = [projective(fq, v) for v in fq.vertices]
    tc = build_tilted(P)
    pc = fq.path_count_matrix()
    idx = list(fq.vertices)
    for i, v in enumerate(idx):
        for j, w in enumerate(idx):
            if i != j:
                # Hom(P(v), P(w)) = P(w)_v = paths w -> v
                assert tc.hd(i, j) == pc[idx.index(w)][idx.index(v)]


def test_single_object_category():
    tc = build_tilted([projective(A3, 0)])
    assert tc.n == 1 and tc.hom == {} and global_dimension(tc) == 0


def test_build_rejects_non_brick():
    M = projective(KRONECKER, 0)
    with pytest.raises(ValueError):
        build_tilted([sum_of([M, M])])


def test_directedness_enforced():
    with pytest.raises(ValueError):
        FinCategory(2, {(0, 1): 1, (1, 0): 1}, {}, QQ)


def test_F_of_tilting_summand_is_representable(low_tilt):
    T, _, tc = low_tilt
    for i, Ti in enumerate(T):
        assert is_isomorphic(F(Ti, tc), tc.representable(i))
        assert Fprime(Ti, tc).is_zero()
        assert is_isomorphic(G(tc.representable(i), tc), Ti)
        assert Gprime(tc.representable(i), tc).is_zero()


def test_yoneda(low_tilt):
    T, cat, tc = low_tilt
    for M in cat[:12]:
        N = F(M, tc)
        for i in range(tc.n):
            assert HomSpace(tc.representable(i), N).dim == N.dims[i]


def test_bb_trivial_tilt(ainf6):
    q, cat = ainf6
    fq = q.finite()
    P = [projective(fq, v) for v in fq.vertices]
    r = verify_bb(P, cat)
    assert r.verdict, r.failures[:3]
    assert r.torsionfree == []


def test_bb_section_tilt(low_tilt):
    T, cat, tc = low_tilt
    r = verify_bb(T, cat, tc)
    assert r.verdict, r.failures[:3]
    assert r.torsion and r.torsionfree
    assert global_dimension(tc) == 1


def test_bb_detects_mutated_composition(low_tilt):
    T, cat, tc = low_tilt
    bad = FinCategory(tc.n, tc.hom, {k: {x: list(v) for x, v in t.items()} for k, t in tc.comp.items()},
                      tc.field, tc.objects, tc.bases)
    key = next(iter(bad.comp))
    ab = next(iter(bad.comp[key]))
    bad.comp[key][ab] = [x + 1 for x in bad.comp[key][ab]]
    assert not verify_bb(T, cat, bad).verdict


def test_k0_and_psi_are_inverse(low_tilt):
    T, _, tc = low_tilt
    k0 = k0_matrix(tc, T[0].quiver)
    psi = psi_matrix(tc)
    assert abs(k0.det()) == 1
    n = len(T)
    assert [list(r) for r in (psi @ k0).tolist()] == [[int(i == j) for j in range(n)] for i in range(n)]


def test_k0_columns_on_trivial_tilt():
    fq = A3
    P = [projective(fq, v) for v in fq.vertices]
    tc = build_tilted(P)
    k0 = k0_matrix(tc, fq).tolist()
    # F(S_v)_i = Hom(P_i, S_v) = [i == v]
    assert k0 == [[int(i == v) for v in range(3)] for i in range(3)]


def test_dual_tilting(low_tilt):
    _, _, tc = low_tilt
    d = dual_tilting_check(tc)
    assert d.verdict, (d.ext_failures, d.coresolution_failures)


def test_splitting(low_tilt):
    T, cat, tc = low_tilt
    s = splitting_checks(tc, cat)
    assert s.consistent and s.separates and s.splits


def test_Fprime_of_tau_summand_is_injective(low_tilt):
    T, _, tc = low_tilt
    for i, Ti in enumerate(T):
        if is_projective(Ti):
            continue
        X = Fprime(tau(Ti), tc)
        assert is_injective_cat(tc, X)
        assert is_isomorphic(X, tc.injective(i))


def test_tau_shift_on_torsionfree():
    q = truncate(A_INF, (0, 6))
    _, fq, T = section_tilt(q, HIGH)
    assert is_tilting(T).verdict
    tc = build_tilted(T)
    checked = 0
    c = knit_preprojective(q, 2)
    for k in c.keys():
        A = c.rep(k).on(fq)
        if not Fprime(A, tc).is_zero() and F(A, tc).is_zero() and not is_projective(A):
            tA = tau(A)
            assert is_isomorphic(tau_cat(tc, Fprime(A, tc)), Fprime(tA, tc))
            checked += 1
    assert checked


def test_tilted_category_injectives_match_quiver_injectives():
    fq = A3
    P = [projective(fq, v) for v in fq.vertices]
    tc = build_tilted(P)
    for i, v in enumerate(fq.vertices):
        assert is_isomorphic(G(tc.injective(i), tc), injective(fq, v))
