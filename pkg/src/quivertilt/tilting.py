"""Sections of knitted components, tilting checks, torsion classes, Bongartz completion."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .ar import ARComponent, radical_hom, tau
from .linalg import Reducer
from .modules import decompose, is_projective, iso_index, projective, projective_dimension
from .quiver import WindowTooSmall
from .rep import (ExtSpace, HomSpace, Rep, RepMap, ShortExact, cokernel, direct_sum,
                  extension_from_cocycle, linear_combination)

Key = tuple[int, int]


class ApproximationError(WindowTooSmall):
    """The left add(S)-approximation of a projective is not injective."""


# --- sections ------------------------------------------------------------------


@dataclass
class SectionCheck:
    ok: bool
    violations: list[str] = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def _reach(c: ARComponent, start: Iterable[Key], forward: bool = True) -> set:
    seen = set(start)
    stack = list(seen)
    adj: dict = {}
    for (s, t) in c.arrows:
        a, b = (s, t) if forward else (t, s)
        adj.setdefault(a, []).append(b)
    while stack:
        u = stack.pop()
        for w in adj.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def section_arrows(c: ARComponent, s: Iterable[Key]) -> list[tuple[Key, Key]]:
    ss = set(s)
    return sorted((a, b) for (a, b) in c.arrows if a in ss and b in ss)


def verify_section(c: ARComponent, s: Iterable[Key]) -> SectionCheck:
    s = set(s)
    bad = []
    missing = sorted(k for k in s if k not in c.vertices)
    if missing:
        return SectionCheck(False, [f"not in component: {missing}"])
    # (S1) acyclic on the section
    arrows = section_arrows(c, s)
    indeg = {k: 0 for k in s}
    for a, b in arrows:
        indeg[b] += 1
    queue = [k for k in s if indeg[k] == 0]
    n = 0
    while queue:
        u = queue.pop()
        n += 1
        for a, b in arrows:
            if a == u:
                indeg[b] -= 1
                if indeg[b] == 0:
                    queue.append(b)
    if n != len(s):
        bad.append("S1: oriented cycle inside the section")
    # (S2) one vertex per orbit
    for orbit in c.orbits():
        hits = sorted(k for k in s if k[0] == orbit)
        if len(hits) != 1:
            bad.append(f"S2: orbit {orbit} meets the section {len(hits)} times")
    # (S3) path convexity
    between = _reach(c, s, True) & _reach(c, s, False)
    outside = sorted(between - s)
    if outside:
        bad.append(f"S3: vertices on paths between section points but outside it: {outside}")
    # connectedness of the induced subquiver
    if s:
        comp = {min(s)}
        grow = True
        while grow:
            grow = False
            for a, b in arrows:
                if (a in comp) != (b in comp):
                    comp |= {a, b}
                    grow = True
        if comp != s:
            bad.append("section is not connected")
    return SectionCheck(not bad, bad)


def projective_slice(c: ARComponent) -> list[Key]:
    return sorted(k for k in c.vertices if k[1] == 0)


def shift_section(s: Iterable[Key], n: int) -> list[Key]:
    return sorted((v, k + n) for v, k in s)


def section_from_levels(levels: dict[int, int]) -> list[Key]:
    return sorted(levels.items())


def random_section(c: ARComponent, rng: random.Random, max_level: int | None = None,
                   attempts: int = 200) -> list[Key]:
    """A random path-convex section of a knitted preprojective component.

    Levels n_v satisfy n_w - n_v in {0, 1} for each arrow v -> w of the
    quiver, built along a random spanning tree and rejected if a cycle of
    the underlying graph is violated or a vertex falls outside the window.
    """
    q = c.grid_quiver()
    orbits = c.orbits()
    top = max_level if max_level is not None else c.depth
    for _ in range(attempts):
        root = rng.choice(orbits)
        levels = {root: rng.randint(0, max(0, top // 2))}
        queue = [root]
        while queue:
            v = queue.pop(rng.randrange(len(queue)))
            for a in q.arrows_from(v) + q.arrows_to(v):
                w = a.tgt if a.src == v else a.src
                if w in levels or w not in orbits:
                    continue
                step = rng.randint(0, 1)
                levels[w] = levels[v] + step if a.src == v else levels[v] - step
                queue.append(w)
        lo = min(levels.values())
        span = max(levels.values()) - lo
        off = rng.randint(0, max(0, top - span))
        levels = {v: k - lo + off for v, k in levels.items()}
        if not all(0 <= levels[a.tgt] - levels[a.src] <= 1 for a in q.arrows
                   if a.src in levels and a.tgt in levels):
            continue
        s = section_from_levels(levels)
        if all(k in c.vertices for k in s) and max(levels.values()) <= top:
            return s
    raise ValueError("no random section found inside the window")


def section_window_check(c: ARComponent, s: Iterable[Key]):
    """Raise WindowTooSmall if a directed path in the section could leave the window.

    Beyond the window the section is continued at the level of the nearest
    boundary orbit; a path of the section that arrives at a boundary orbit
    from inside then continues outward, so no certificate is given.
    """
    q = c.grid_quiver()
    missing = sorted(set(q.vertices) - set(c.orbits()))
    if missing:
        raise WindowTooSmall(f"orbits {missing} have no certified start inside the window")
    arrows = section_arrows(c, s)
    for b in sorted(q.in_boundary):
        if any(t[0] == b for _, t in arrows):
            raise WindowTooSmall(f"a directed path of the section runs into boundary orbit {b}")
    for b in sorted(q.out_boundary):
        if any(a[0] == b for a, _ in arrows):
            raise WindowTooSmall(f"a directed path of the section leaves boundary orbit {b}")


def count_paths_to_section(c: ARComponent, x: Key, s: Iterable[Key]) -> int:
    """Number of directed paths from x ending on the section."""
    s = set(s)
    if x not in c.vertices:
        raise ValueError(f"{x} is not a vertex of the component")
    top = max(k for _, k in s)
    q = c.grid_quiver()
    succ: dict = {}
    for (a, b), m in c.arrows.items():
        succ.setdefault(a, []).append((b, m))
    memo: dict = {}

    def unknown_successors(key):
        v, k = key
        cands = [(a.src, k) for a in q.arrows_to(v)] + [(a.tgt, k + 1) for a in q.arrows_from(v)]
        return [p for p in cands if p not in c.vertices and not c._absent_for_good(p) and p[1] <= top]

    stack = [(x, False)]
    while stack:
        u, done = stack.pop()
        if u in memo:
            continue
        if done:
            memo[u] = int(u in s) + sum(m * memo[w] for w, m in succ.get(u, ()) if w[1] <= top)
            continue
        if unknown_successors(u):
            raise WindowTooSmall(f"paths from {x} leave the knitted window at {u}")
        stack.append((u, True))
        for w, _ in succ.get(u, ()):
            if w not in memo and w[1] <= top:
                stack.append((w, False))
    return memo[x]


def enumerate_paths_to_section(c: ARComponent, x: Key, s: Iterable[Key], limit: int = 10000) -> list[list[Key]]:
    """Explicit list of directed paths x -> s (vertex sequences), multiplicities expanded."""
    s = set(s)
    top = max(k for _, k in s)
    succ: dict = {}
    for (a, b), m in c.arrows.items():
        succ.setdefault(a, []).append((b, m))
    out = []

    def dfs(u, path):
        if len(out) > limit:
            raise RuntimeError("path enumeration limit exceeded")
        if u in s:
            out.append(path)
        for w, m in sorted(succ.get(u, ())):
            if w[1] <= top:
                for _ in range(m):
                    dfs(w, path + [w])

    dfs(x, [x])
    return out


# --- approximations and coresolutions ------------------------------------------


@dataclass
class Coresolution:
    seq: ShortExact
    t0: list[int]
    t1: list[int]


def left_approximation(X: Rep, S: Sequence[Rep]) -> tuple[Rep, RepMap, list[int]]:
    """Minimal left add(S)-approximation X -> T0 for pairwise non-isomorphic indecomposables S.

    Returns (T0, u, indices) where indices lists the S-member of each summand.
    """
    f = X.field
    homs = [HomSpace(X, Sj) for Sj in S]
    chosen: list[tuple[int, RepMap]] = []
    for j, Sj in enumerate(S):
        H = homs[j]
        if H.dim == 0:
            continue
        through = []
        for k, Sk in enumerate(S):
            if homs[k].dim == 0:
                continue
            for g in radical_hom(Sk, Sj):
                for h in homs[k].basis:
                    through.append(H.coords(g @ h))
        red = Reducer([{i: x for i, x in enumerate(v) if x != 0} for v in through], f)
        for i in range(H.dim):
            e = {i: 1}
            if red.contains(e):
                continue
            chosen.append((j, H.basis[i]))
            red = Reducer(list(red.pivots.values()) + [e], f)
    if not chosen:
        T0, _, _ = direct_sum([], X.quiver, f)
        return T0, RepMap(X, T0, {}, check=False), []
    parts = [S[j] for j, _ in chosen]
    T0, incs, _ = direct_sum(parts, X.quiver, f)
    u = linear_combination([incs[n] @ h for n, (_, h) in enumerate(chosen)], [1] * len(chosen))
    return T0, u, [j for j, _ in chosen]


def coresolve_projective(P: Rep, S: Sequence[Rep]) -> Coresolution:
    """0 -> P -> T0 -> T1 -> 0 with T0, T1 in add(S)."""
    T0, u, idx0 = left_approximation(P, S)
    if not u.is_injective():
        raise ApproximationError("left add(S)-approximation is not injective")
    T1, q = cokernel(u)
    idx1 = []
    for Y in decompose(T1):
        k = iso_index(Y, S)
        if k is None:
            raise ApproximationError("cokernel of the approximation leaves add(S)")
        idx1.append(k)
    return Coresolution(ShortExact(u, q), sorted(idx0), sorted(idx1))


# --- tilting -----------------------------------------------------------------


@dataclass
class TiltingReport:
    count: int
    vertices: int
    pd_ok: bool
    pd_failures: list[int] = dc_field(default_factory=list)
    ext_failures: list[tuple[int, int, int]] = dc_field(default_factory=list)
    ar_formula_mismatches: list[tuple[int, int]] = dc_field(default_factory=list)
    coresolutions: dict = dc_field(default_factory=dict)
    coresolution_failures: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return (self.pd_ok and not self.ext_failures and not self.ar_formula_mismatches
                and not self.coresolution_failures)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "summands": self.count,
            "vertices": self.vertices,
            "pd_ok": self.pd_ok,
            "pd_failures": self.pd_failures,
            "ext_failures": [{"i": i, "j": j, "dim": d} for i, j, d in self.ext_failures],
            "ar_formula_mismatches": [list(p) for p in self.ar_formula_mismatches],
            "coresolutions": {str(v): {"T0": r[0], "T1": r[1]} for v, r in sorted(self.coresolutions.items())},
            "coresolution_failures": {str(v): m for v, m in sorted(self.coresolution_failures.items())},
        }


def basic_summands(t: Sequence[Rep]) -> list[Rep]:
    out: list[Rep] = []
    for T in t:
        for Y in decompose(T):
            if iso_index(Y, out) is None:
                out.append(Y)
    return out


def is_tilting(t: Sequence[Rep]) -> TiltingReport:
    T = basic_summands(t)
    q = T[0].quiver
    rep = TiltingReport(len(T), len(q.vertices), True)
    for i, X in enumerate(T):
        if projective_dimension(X) > 1:
            rep.pd_ok = False
            rep.pd_failures.append(i)
    taus = [None if is_projective(X) else tau(X) for X in T]
    for i, X in enumerate(T):
        for j, Y in enumerate(T):
            d = ExtSpace(X, Y).dim
            d_ar = 0 if taus[i] is None else HomSpace(Y, taus[i]).dim
            if d != d_ar:
                rep.ar_formula_mismatches.append((i, j))
            if d:
                rep.ext_failures.append((i, j, d))
    for v in q.vertices:
        try:
            cr = coresolve_projective(projective(q, v, T[0].field), T)
            rep.coresolutions[v] = (cr.t0, cr.t1)
        except ApproximationError as exc:
            rep.coresolution_failures[v] = str(exc)
    return rep


# --- torsion classes -----------------------------------------------------------


@dataclass
class TorsionPartition:
    torsion: list[int]
    torsionfree: list[int]
    neither: list[int]
    both: list[int]
    predecessor_mismatches: list[int] = dc_field(default_factory=list)

    @property
    def exhaustive(self) -> bool:
        return not self.neither and not self.both


def classify_torsion(t: Sequence[Rep], catalog: Sequence[Rep], section: Iterable[Key] | None = None,
                     keys: Sequence[Key | None] | None = None) -> TorsionPartition:
    """Split catalog members into Ext^1(T,-) = 0 and Hom(T,-) = 0.

    With a preprojective section and the component key of each catalog
    member (None outside the component), the torsion-free class is also
    compared with the set of predecessors of the section.
    """
    T = basic_summands(t)
    tor, free, neither, both = [], [], [], []
    for n, M in enumerate(catalog):
        in_t = all(ExtSpace(X, M).dim == 0 for X in T)
        in_f = all(HomSpace(X, M).dim == 0 for X in T)
        if in_t and in_f:
            both.append(n)
        elif in_t:
            tor.append(n)
        elif in_f:
            free.append(n)
        else:
            neither.append(n)
    part = TorsionPartition(tor, free, neither, both)
    if section is not None and keys is not None:
        level = dict(section)
        for n, key in enumerate(keys):
            is_pred = key is not None and key[0] in level and key[1] < level[key[0]]
            if is_pred != (n in free):
                part.predecessor_mismatches.append(n)
    return part


# --- Bongartz completion -------------------------------------------------------


def is_partial_tilting(t: Sequence[Rep]) -> bool:
    T, _, _ = direct_sum(list(t))
    return projective_dimension(T) <= 1 and ExtSpace(T, T).dim == 0


def bongartz_complete(partial: Sequence[Rep], p: Rep) -> Rep:
    """The universal extension 0 -> p -> E_p -> T^d -> 0 of p by T = sum(partial)."""
    if not is_partial_tilting(partial):
        raise ValueError("input is not partial tilting")
    if not is_projective(p):
        raise ValueError("bongartz_complete needs a projective")
    T, _, _ = direct_sum(list(partial))
    E = ExtSpace(T, p)
    d = E.dim
    if d == 0:
        return p
    Td, _, _ = direct_sum([T] * d)
    classes = E.basis
    cocycle = {}
    for a in T.quiver.arrows:
        block = classes[0][a.id]
        for c in classes[1:]:
            block = block.hstack(c[a.id])
        cocycle[a.id] = block
    Ep = extension_from_cocycle(Td, p, cocycle).B
    if ExtSpace(T, Ep).dim or ExtSpace(Ep, Ep).dim or ExtSpace(Ep, T).dim:
        raise RuntimeError("universal extension is not Ext-orthogonal to T")
    return Ep


def bongartz_completion(partial: Sequence[Rep]) -> list[Rep]:
    """partial together with E_P for every indecomposable projective, made basic."""
    q = partial[0].quiver
    extra = [bongartz_complete(partial, projective(q, v, partial[0].field)) for v in q.vertices]
    return basic_summands(list(partial) + extra)
