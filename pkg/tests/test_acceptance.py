"""The eleven acceptance criteria, one test each.

Each test prints a single PASS/FAIL line to the terminal (also under pytest's
capture) and then asserts.  Run directly with `python3 tests/test_acceptance.py`
for the summary alone.
"""

import random
import sys

import pytest

from helpers import KRONECKER, SMALL_QUIVERS, WILD3, draw_window_section, section_tilt
from quivertilt.ar import all_indecomposables, knit_preinjective, knit_preprojective, reference_catalog, tau
from quivertilt.catalog import M, dinf_orbits, make, predicted_tau, verify_catalog
from quivertilt.linalg import ZMat
from quivertilt.mesh import MeshIdeal, build_znq, from_component, sectional_nonzero, sectional_paths
from quivertilt.modules import (has_projective_summand, is_isomorphic, is_projective,
                                projective, random_rep)
from quivertilt.quiver import A_INF, A_INFINF, D_INF, comb_family, euler_form, quiver, truncate
from quivertilt.rep import ext1_dim, hom_dim
from quivertilt.tilted import build_tilted, global_dimension, psi_matrix, verify_bb
from quivertilt.tilting import bongartz_completion, is_partial_tilting, is_tilting


_capman = {}


@pytest.fixture(autouse=True)
def _terminal(request):
    _capman["cm"] = request.config.pluginmanager.getplugin("capturemanager")
    yield


def report(n: int, ok: bool, detail: str):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    cm = _capman.get("cm")
    if cm is not None:
        with cm.global_and_fixture_disabled():
            sys.stdout.write("\n" + line + "\n")
    else:
        print(line)
    assert ok, line


# --- shared fixtures ------------------------------------------------------------


@pytest.fixture(scope="module")
def ainfinf_report():
    return verify_catalog("AInfInf", (-12, 12), margin=2, census=True)


@pytest.fixture(scope="module")
def dinf_report():
    return verify_catalog("DInf", (0, 14), margin=2)


def _tilts():
    """(name, modules, catalog, is_section_tilt) for the Brenner-Butler suite."""
    out = []
    ainf = truncate(A_INF, (0, 6))
    cat = all_indecomposables(ainf.finite())
    fq = ainf.finite()
    out.append(("trivial tilt on AInf[0,6]", [projective(fq, v) for v in fq.vertices], cat, False))
    low = [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 0), (6, 0)]
    out.append(("section tilt on AInf[0,6]", section_tilt(ainf, low)[2], cat, True))
    d = truncate(D_INF, (0, 7))
    s = [(0, 2), (1, 2), (2, 1), (3, 1), (4, 0), (5, 1), (6, 0), (7, 0)]
    out.append(("section tilt on DInf[0,7]", section_tilt(d, s)[2], all_indecomposables(d.finite()), True))
    _, _, T = section_tilt(KRONECKER, [(0, 1), (1, 2)])
    out.append(("section tilt on the Kronecker quiver", T, reference_catalog(KRONECKER, 3), True))
    return out


@pytest.fixture(scope="module")
def bb_runs():
    runs = []
    for name, T, cat, sect in _tilts():
        tc = build_tilted(T)
        runs.append((name, T, tc, verify_bb(T, cat, tc), sect))
    return runs


# --- criteria -------------------------------------------------------------------


def test_criterion_01_tau_formula_on_ainf():
    q = truncate(A_INF, (0, 14))
    checked, bad = 0, []
    for a in range(0, 13):
        for b in range(a, 13, 1):
            if b % 2:
                continue
            X = make(M(a, b), q)
            if is_projective(X):
                continue
            pt = predicted_tau(M(a, b))
            if pt is None or not is_isomorphic(tau(X), make(pt, q)):
                bad.append(f"M_{a}^{b}")
            checked += 1
    report(1, not bad and checked > 0, f"τ formula on AInf[0,14]: {checked} modules, mismatches {bad}")


def test_criterion_02_ainfinf_census(ainfinf_report):
    r = ainfinf_report
    cen = r.extra["census"]
    ok = r.ok and cen["components"] == 4 and cen["regular_classes"] == 2
    report(2, ok, f"AInfInf[-12,12]: {cen['components']} components, regular classes {cen['class_sizes']}, "
                  f"failures {len(r.failures)}")


def test_criterion_03_dinf_orbits():
    out = dinf_orbits((0, 14), steps=4)
    ok = all(v["agrees"] for v in out.values()) and out["P(1)"]["expected"][-1] == "N0^9"
    report(3, ok, "DInf[0,14]: " + "; ".join(f"{k} -> {', '.join(v['expected'])}" for k, v in out.items()))


def test_criterion_04_random_sections_are_tilting():
    rng = random.Random(2024)
    spots = [(truncate(A_INF, (0, 8)), 4), (truncate(A_INF, (0, 10)), 4), (truncate(A_INFINF, (-6, 6)), 4),
             (truncate(A_INFINF, (-6, 6)), 4), (truncate(D_INF, (0, 7)), 4), (truncate(D_INF, (0, 7)), 3)]
    verdicts = []
    for q, depth in spots:
        c, s = draw_window_section(q, rng, depth=depth)
        fq = q.finite()
        verdicts.append(is_tilting([c.rep(k).on(fq) for k in s]).verdict)
    report(4, all(verdicts) and len(verdicts) >= 5, f"{sum(verdicts)}/{len(verdicts)} random sections tilting")


def test_criterion_05_brenner_butler(bb_runs):
    lines = [f"{name}: {len(r.failures)} failures over {sum(r.checks.values())} checks"
             for name, _, _, r, _ in bb_runs]
    ok = all(r.verdict for _, _, _, r, _ in bb_runs) and sum(s for *_, s in bb_runs) >= 3
    report(5, ok, "; ".join(lines))


def test_criterion_06_k0(bb_runs):
    ok = True
    for _, T, tc, r, _ in bb_runs:
        n = len(r.k0)
        prod = (psi_matrix(tc) @ ZMat(r.k0)).tolist()
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        ok = ok and r.unimodular and [list(x) for x in prod] == ident
    report(6, ok, f"K0 matrix unimodular with ψ inverse on {len(bb_runs)} tilts")


def test_criterion_07_global_dimension(bb_runs):
    sect = [global_dimension(tc) for _, _, tc, _, s in bb_runs if s]
    bong = []
    for q in (KRONECKER, WILD3, truncate(comb_family(), (0, 6)).finite()):
        inj = knit_preinjective(q, 2)
        bong.append(global_dimension(build_tilted(bongartz_completion([inj.rep(inj.keys()[0])]))))
    ok = all(g == 1 for g in sect) and all(g <= 2 for g in bong)
    report(7, ok, f"section tilts gd {sect}; Bongartz completions gd {bong}")


def test_criterion_08_bongartz():
    comb = truncate(comb_family(), (0, 6)).finite()
    cases = []
    for q in (KRONECKER, WILD3, comb, truncate(comb_family(), (0, 4)).finite()):
        pre, inj = knit_preprojective(q, 2), knit_preinjective(q, 2)
        cases += [[pre.rep(pre.keys()[-1])], [inj.rep(inj.keys()[0])]]
    results = []
    for partial in cases:
        assert is_partial_tilting(partial)
        out = bongartz_completion(partial)
        ortho = all(ext1_dim(X, Y) == 0 and ext1_dim(Y, X) == 0 for X in out for Y in out)
        results.append(is_tilting(out).verdict and ortho)
    report(8, all(results) and len(results) >= 3, f"{sum(results)}/{len(results)} partial sets completed")


def test_criterion_09_euler_and_ar_identities():
    rng = random.Random(9)
    n_euler = n_ar = 0
    bad = []
    while n_euler < 200 or n_ar < 200:
        q = rng.choice(SMALL_QUIVERS)
        d1 = {v: rng.randint(0, 2) for v in q.vertices}
        d2 = {v: rng.randint(0, 2) for v in q.vertices}
        X, Y = random_rep(q, d1, rng), random_rep(q, d2, rng)
        h, e = hom_dim(X, Y), ext1_dim(X, Y)
        if h - e != euler_form(q, X.dim_vector(), Y.dim_vector()):
            bad.append(("euler", q, d1, d2))
        n_euler += 1
        if not X.is_zero() and not has_projective_summand(X):
            if e != hom_dim(Y, tau(X)):
                bad.append(("ar", q, d1, d2))
            n_ar += 1
    report(9, not bad, f"{n_euler} Euler and {n_ar} AR-formula instances, {len(bad)} violations")


def test_criterion_10_sectional_paths():
    za4 = build_znq(quiver(4, [(0, 1), (1, 2), (2, 3)]), 6)
    knitted = from_component(knit_preprojective(truncate(A_INF, (0, 8)), 4))
    n_paths = n_mesh = 0
    ok = True
    for tq in (za4, knitted):
        I = MeshIdeal(tq)
        for x in tq.mesh_vertices():
            ok = ok and I.is_zero(tq.mesh(x))
            n_mesh += 1
        for vs in sectional_paths(tq, 6):
            try:
                ok = ok and sectional_nonzero(vs, tq, I)
            except RuntimeError:
                ok = False
            n_paths += 1
    report(10, ok and n_paths > 0, f"{n_paths} sectional paths nonzero, {n_mesh} meshes vanish")


def test_criterion_11_regular_alpha(ainfinf_report, dinf_report):
    alphas = [it.alpha for r in (ainfinf_report, dinf_report) for it in r.items if it.alpha is not None]
    ok = bool(alphas) and max(alphas) <= 2
    report(11, ok, f"{len(alphas)} regular members, max middle-term summands {max(alphas) if alphas else None}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
