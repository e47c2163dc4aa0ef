import functools
import random

import pytest
from hypothesis import given, settings, strategies as st

from quivertilt.ar import all_indecomposables, knit_preinjective, knit_preprojective, tau
from quivertilt.mesh import MeshIdeal, from_component, path_between
from quivertilt.modules import is_isomorphic, is_projective, projective, simple
from quivertilt.quiver import A_INF, A_INFINF, D_INF, WindowTooSmall, comb_family, truncate
from quivertilt.rep import ExtSpace, direct_sum
from quivertilt.tilting import (ApproximationError, bongartz_complete, bongartz_completion, classify_torsion,
                                coresolve_projective, count_paths_to_section, enumerate_paths_to_section,
                                is_partial_tilting, is_tilting, projective_slice, random_section,
                                section_window_check, shift_section, verify_section)

from helpers import A2, A3, KRONECKER, WILD3, draw_window_section, section_tilt

AINF8 = truncate(A_INF, (0, 8))


@functools.lru_cache(maxsize=None)
def _ainf8_component():
    return knit_preprojective(AINF8, 4)


def test_projective_slice_is_a_section():
    for q in (A3, KRONECKER, AINF8, truncate(D_INF, (0, 7))):
        c = knit_preprojective(q, 3)
        assert verify_section(c, projective_slice(c)).ok


def test_extra_shifted_vertex_breaks_s2():
    c = knit_preprojective(AINF8, 3)
    s = projective_slice(c) + [(1, 1)]
    chk = verify_section(c, s)
    assert not chk.ok and any(v.startswith("S2") for v in chk.violations)


def brute_section_axioms(c, s):
    """Axioms checked by enumerating every directed path of the knitted component."""
    s = set(s)
    if not s <= set(c.vertices):
        return False
    succ = {}
    for (a, b), m in c.arrows.items():
        succ.setdefault(a, set()).add(b)
    reach = {}

    def down(k):
        if k not in reach:
            r = {k}
            for w in succ.get(k, ()):
                r |= down(w)
            reach[k] = r
        return reach[k]
    for k in c.vertices:
        down(k)
    convex = all(not (x in reach[a] and b in reach[x]) for a in s for b in s for x in c.vertices if x not in s)
    one_each = all(sum(1 for k in s if k[0] == o) == 1 for o in c.orbits())
    return convex and one_each


@given(st.lists(st.integers(0, 2), min_size=9, max_size=9))
@settings(max_examples=60)
def test_zigzag_sections_match_brute_force(levels):
    c = _ainf8_component()
    s = [(v, k) for v, k in enumerate(levels)]
    chk = verify_section(c, s)
    assert chk.ok == brute_section_axioms(c, s)


def test_random_sections_are_sections():
    r = random.Random(1)
    for q in (AINF8, truncate(A_INFINF, (-6, 6)), truncate(D_INF, (0, 7)), A3, KRONECKER):
        c = knit_preprojective(q, 4)
        for _ in range(5):
            assert verify_section(c, random_section(c, r, max_level=3)).ok


def test_boundary_touching_section_is_refused():
    q = truncate(A_INF, (0, 7))  # P(7) runs out of the window, so orbit 7 is never knitted
    c = knit_preprojective(q, 3)
    s = projective_slice(c)
    assert verify_section(c, s).ok
    with pytest.raises(WindowTooSmall):
        section_window_check(c, s)
    q = truncate(A_INFINF, (-5, 5))
    c = knit_preprojective(q, 3)
    s = [k for k in projective_slice(c)]
    with pytest.raises(WindowTooSmall):
        section_window_check(c, s)


def test_count_paths_examples():
    q = truncate(A_INF, (0, 12))
    c = knit_preprojective(q, 4)
    s = projective_slice(c)
    assert count_paths_to_section(c, (1, 0), s) == 1  # P(1) is a sink of the slice: only the empty path
    assert count_paths_to_section(c, (0, 0), s) == 2
    s1 = [k for k in shift_section(s, 1) if k in c.vertices]
    assert count_paths_to_section(c, (2, 2), s1) == 0  # a successor
    counts = []
    for v in range(5):
        n = count_paths_to_section(c, (v, 0), s1)
        assert n == len(enumerate_paths_to_section(c, (v, 0), s1)) and n >= 1
        counts.append(n)
    with pytest.raises(WindowTooSmall):
        count_paths_to_section(c, (10, 0), s1)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25)
def test_path_counts_match_dfs_and_are_nonzero_mod_mesh(seed):
    r = random.Random(seed)
    c, s = draw_window_section(AINF8, r, depth=4)
    tq = from_component(c)
    ideal = MeshIdeal(tq)
    level = dict(s)
    for x in c.keys():
        if x[1] > 3:
            continue
        try:
            n = count_paths_to_section(c, x, s)
        except WindowTooSmall:
            continue
        paths = enumerate_paths_to_section(c, x, s)
        assert n == len(paths)
        if x[1] < level.get(x[0], -1):
            assert n >= 1
            nonzero = any(ideal.normal_form({path_between(tq, p): 1}, start=x, max_len=12)
                          for p in paths if len(p) > 1)
            assert nonzero


def test_coresolutions():
    P = projective(A3, 0)
    cr = coresolve_projective(P, [P])
    assert cr.t0 == [0] and cr.t1 == []
    S = [simple(A2, 0), projective(A2, 0)]
    cr = coresolve_projective(projective(A2, 1), S)
    assert cr.seq.is_exact()
    assert cr.t0 == [1] and cr.t1 == [0]
    c, fq, T = section_tilt(AINF8, shift_section(projective_slice(knit_preprojective(AINF8, 3)), 1)[:-2]
                            + [(7, 0), (8, 0)])
    cr = coresolve_projective(projective(fq, 1), T)
    assert cr.seq.is_exact() and cr.t0 and all(0 <= i < len(T) for i in cr.t0 + cr.t1)


def test_is_tilting_examples():
    for q in (A3, KRONECKER, WILD3):
        assert is_tilting([projective(q, v) for v in q.vertices]).verdict
    q = AINF8.finite()
    X = [R for R in all_indecomposables(q) if not is_projective(R)][3]
    rep = is_tilting([X, tau(X)])
    assert not rep.verdict and rep.ext_failures
    assert any(i != j for i, j, _ in rep.ext_failures)


@pytest.mark.parametrize("q", [AINF8, truncate(A_INFINF, (-6, 6)), truncate(D_INF, (0, 7))])
def test_random_section_tilts(q):
    r = random.Random(7)
    for _ in range(2):
        c, s = draw_window_section(q, r)
        _, fq, T = section_tilt(q, s, c.depth)
        rep = is_tilting(T)
        assert rep.verdict, rep.to_dict()
        assert rep.count == len(fq.vertices)


def test_torsion_classes_of_a_section_tilt():
    q = AINF8
    c = knit_preprojective(q, 4)
    s = [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 0), (8, 0)]
    _, fq, T = section_tilt(q, s, 4)
    keys = [k for k in c.keys() if k[1] <= 3]
    catalog = [c.rep(k).on(fq) for k in keys]
    part = classify_torsion(T, catalog, s, keys)
    assert part.exhaustive and not part.predecessor_mismatches
    for n, k in enumerate(keys):
        if k in s:
            assert n in part.torsion
        if (k[0], k[1] + 1) in s:
            assert n in part.torsionfree  # τ of a section module
    full = all_indecomposables(fq)
    part = classify_torsion(T, full)
    assert part.exhaustive


def test_torsion_mutation_is_flagged():
    q = A3
    T = [projective(q, v) for v in q.vertices]
    c = knit_preprojective(q, 4)
    keys = c.keys()
    catalog = [c.rep(k) for k in keys]
    wrong = [(v, 1) for v in q.vertices]
    part = classify_torsion(T, catalog, wrong, keys)
    assert part.predecessor_mismatches


def test_bongartz_examples():
    P = [projective(KRONECKER, v) for v in KRONECKER.vertices]
    assert bongartz_complete(P[:1], P[1]) is P[1] or is_isomorphic(bongartz_complete(P[:1], P[1]), P[1])
    S0 = simple(KRONECKER, 0)  # preinjective simple
    assert is_partial_tilting([S0])
    out = bongartz_completion([S0])
    assert is_tilting(out).verdict
    assert ExtSpace(direct_sum(out)[0], direct_sum(out)[0]).dim == 0
    # completing a tilting set adds nothing new
    full = bongartz_completion(P)
    assert len(full) == 2 and all(any(is_isomorphic(X, Y) for Y in P) for X in full)
    with pytest.raises(ValueError):
        c = knit_preprojective(KRONECKER, 2)
        bongartz_complete([c.rep((0, 1)), c.rep((0, 0))], P[0])


@pytest.mark.parametrize("q", [KRONECKER, WILD3, truncate(comb_family(), (0, 6)).finite()])
def test_bongartz_on_non_dynkin(q):
    c = knit_preprojective(q, 2)
    inj = knit_preinjective(q, 2)
    for partial in ([c.rep(c.keys()[-1])], [inj.rep(inj.keys()[0])]):
        assert is_partial_tilting(partial)
        out = bongartz_completion(partial)
        T, _, _ = direct_sum(out)
        assert ExtSpace(T, T).dim == 0
        assert is_tilting(out).verdict
