"""The endomorphism category of a tilting set and its module category.

A module over a finite category tc (contravariant functor to vector
spaces) is stored as a `Rep` of the action quiver `tc.aq`: one vertex per
object and one arrow j -> i for every basis morphism f: T_i -> T_j, carrying
the matrix of N(f): N(T_j) -> N(T_i).  Hom, kernels, cokernels and
decomposition are then inherited from the quiver machinery; Ext and
projective dimension use the composition law.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .ar import is_almost_split, tau
from .linalg import Field, Mat, ZMat, column_space_basis, complement_columns, solve
from .modules import (decompose, find_isomorphism, homological_dims, is_isomorphic,
                      is_projective, iso_index, simple)
from .quiver import Arrow, Quiver
from .rep import (ExtSpace, HomSpace, Rep, RepMap, ShortExact, cokernel, direct_sum,
                  identity_map, kernel, map_between_sums, pullback_cocycle,
                  pushforward_cocycle)
from .tilting import ApproximationError, classify_torsion, left_approximation

Vec = list


def _unit(n: int, k: int) -> list:
    return [int(i == k) for i in range(n)]


class FinCategory:
    """A finite directed K-category with End(X) = K for each object.

    `hom[(i, j)]` is the dimension of the space of morphisms T_i -> T_j for
    i != j; `comp[(i, j, k)][(a, b)]` holds the coordinates of b∘a for basis
    morphisms a: T_i -> T_j and b: T_j -> T_k.
    """

    def __init__(self, n: int, hom: dict, comp: dict, field: Field, objects: Sequence[Rep] | None = None,
                 bases: dict | None = None):
        self.n = n
        self.hom = {k: v for k, v in hom.items() if v}
        self.comp = comp
        self.field = field
        self.objects = list(objects) if objects is not None else None
        self.bases = bases
        for (i, j) in self.hom:
            if i == j:
                raise ValueError("identity morphisms are implicit")
            if (j, i) in self.hom:
                raise ValueError(f"objects {i} and {j} map to each other; category is not directed")
        self.elems = sorted((i, j, a) for (i, j), d in self.hom.items() for a in range(d))
        arrows = [Arrow(self.arrow_id(i, j, a), j, i) for i, j, a in self.elems]
        self.aq = Quiver(range(n), arrows, name="action")
        self._op = None

    @staticmethod
    def arrow_id(i: int, j: int, a: int) -> str:
        return f"h{i}.{j}.{a}"

    def hd(self, i: int, j: int) -> int:
        return 1 if i == j else self.hom.get((i, j), 0)

    def compose(self, i: int, j: int, k: int, x: Vec, y: Vec) -> Vec:
        """y∘x for x: T_i -> T_j and y: T_j -> T_k given by coordinates."""
        red = self.field.reduce
        if i == j:
            return [red(x[0] * c) for c in y] if y else [0] * self.hd(i, k)
        if j == k:
            return [red(y[0] * c) for c in x] if x else [0] * self.hd(i, k)
        out = [0] * self.hd(i, k)
        table = self.comp.get((i, j, k), {})
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                for h, c in enumerate(table.get((a, b), ())):
                    out[h] = red(out[h] + xa * yb * c)
        return out

    def check(self) -> list[str]:
        """Associativity of the composition law, and agreement with the underlying maps."""
        bad = []
        n = self.n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        if not (self.hd(i, j) and self.hd(j, k) and self.hd(k, l)) or len({i, j, k, l}) < 4:
                            continue
                        for a in range(self.hd(i, j)):
                            for b in range(self.hd(j, k)):
                                for c in range(self.hd(k, l)):
                                    ea, eb, ec = _unit(self.hd(i, j), a), _unit(self.hd(j, k), b), _unit(self.hd(k, l), c)
                                    lhs = self.compose(i, k, l, self.compose(i, j, k, ea, eb), ec)
                                    rhs = self.compose(i, j, l, ea, self.compose(j, k, l, eb, ec))
                                    if lhs != rhs:
                                        bad.append(f"associativity fails on {(i, a)}, {(j, b)}, {(k, c)}")
        if self.objects is not None:
            Ts = self.objects
            for i in range(n):
                for j in range(n):
                    if i != j and HomSpace(Ts[i], Ts[j]).dim != self.hd(i, j):
                        bad.append(f"hom dimension ({i},{j}) disagrees with the modules")
            for (i, j, k), table in self.comp.items():
                H = HomSpace(Ts[i], Ts[k])
                for (a, b), vec in table.items():
                    got = H.coords(self.bases[(j, k)][b] @ self.bases[(i, j)][a])
                    if [self.field.reduce(x) for x in got] != list(vec):
                        bad.append(f"structure constant ({i},{j},{k}) at {(a, b)} is wrong")
        return bad

    def opposite(self) -> "FinCategory":
        if self._op is None:
            hom = {(j, i): d for (i, j), d in self.hom.items()}
            comp = {}
            for (i, j, k), table in self.comp.items():
                comp[(k, j, i)] = {(b, a): v for (a, b), v in table.items()}
            self._op = FinCategory(self.n, hom, comp, self.field)
            self._op._op = self
        return self._op

    def to_dict(self) -> dict:
        f = self.field
        d = {
            "objects": self.n,
            "hom_dims": [[self.hd(i, j) for j in range(self.n)] for i in range(self.n)],
            "structure_constants": [
                {"src": i, "mid": j, "tgt": k, "first": a, "second": b, "coords": [f.fmt(x) for x in v]}
                for (i, j, k), table in sorted(self.comp.items()) for (a, b), v in sorted(table.items())
            ],
        }
        if self.objects is not None:
            d["dim_vectors"] = [{str(v): x for v, x in T.dim_vector().items()} for T in self.objects]
        return d

    # -- modules

    def module(self, dims: dict, acts: dict | None = None, check: bool = True) -> Rep:
        return Rep(self.aq, dims, acts or {}, self.field, check=check)

    def act(self, N: Rep, i: int, j: int, x: Vec) -> Mat:
        """N(x): N(T_j) -> N(T_i) for a morphism x: T_i -> T_j."""
        if i == j:
            return Mat.identity(N.dims[i], self.field).scale(x[0])
        out = Mat.zeros(N.dims[i], N.dims[j], self.field)
        for a, c in enumerate(x):
            if c != 0:
                out = out + N.maps[self.arrow_id(i, j, a)].scale(c)
        return out

    def relation_defects(self, N: Rep) -> list[str]:
        bad = []
        for (i, j, k), table in self.comp.items():
            for (a, b), vec in table.items():
                lhs = N.maps[self.arrow_id(i, j, a)] @ N.maps[self.arrow_id(j, k, b)]
                if lhs != self.act(N, i, k, vec):
                    bad.append(f"N(b∘a) != N(a)N(b) for {(i, j, a)}, {(j, k, b)}")
        for i, j, k in [(i, j, k) for i in range(self.n) for j in range(self.n) for k in range(self.n)
                        if len({i, j, k}) == 3 and self.hd(i, j) and self.hd(j, k)]:
            table = self.comp.get((i, j, k), {})
            for a in range(self.hd(i, j)):
                for b in range(self.hd(j, k)):
                    if (a, b) not in table:
                        lhs = N.maps[self.arrow_id(i, j, a)] @ N.maps[self.arrow_id(j, k, b)]
                        if not lhs.is_zero():
                            bad.append(f"N(a)N(b) != 0 for a zero composite {(i, j, a)}, {(j, k, b)}")
        return bad

    def representable(self, i: int) -> Rep:
        """Hom(-, T_i) restricted to the category."""
        dims = {j: self.hd(j, i) for j in range(self.n)}
        acts = {}
        for k, j, a in self.elems:
            ea = _unit(self.hd(k, j), a)
            cols = [self.compose(k, j, i, ea, _unit(dims[j], h)) for h in range(dims[j])]
            acts[self.arrow_id(k, j, a)] = Mat.from_columns(cols, dims[k], self.field)
        return self.module(dims, acts, check=False)

    def injective(self, i: int) -> Rep:
        """D Hom(T_i, -) restricted to the category."""
        dims = {j: self.hd(i, j) for j in range(self.n)}
        acts = {}
        for k, j, a in self.elems:
            ea = _unit(self.hd(k, j), a)
            cols = [self.compose(i, k, j, _unit(dims[k], h), ea) for h in range(dims[k])]
            acts[self.arrow_id(k, j, a)] = Mat.from_columns(cols, dims[j], self.field).T
        return self.module(dims, acts, check=False)

    def simple(self, i: int) -> Rep:
        return self.module({i: 1}, check=False)

    def yoneda(self, a: int, n: Vec, N: Rep, P: Rep | None = None) -> RepMap:
        """The map Hom(-, T_a) -> N sending the identity to n in N(T_a)."""
        P = P or self.representable(a)
        comps = {}
        col = Mat.from_columns([n], N.dims[a], self.field)
        for k in range(self.n):
            cols = [(self.act(N, k, a, _unit(P.dims[k], x)) @ col).column(0) for x in range(P.dims[k])]
            comps[k] = Mat.from_columns(cols, N.dims[k], self.field) if cols else Mat.zeros(N.dims[k], 0, self.field)
        return RepMap(P, N, comps, check=False)


def build_tilted(t: Sequence[Rep]) -> FinCategory:
    """The full subcategory on the indecomposables t (pairwise non-isomorphic)."""
    f = t[0].field
    n = len(t)
    spaces = {}
    for i in range(n):
        for j in range(n):
            spaces[(i, j)] = HomSpace(t[i], t[j])
        if spaces[(i, i)].dim != 1:
            raise ValueError(f"object {i} has endomorphism ring of dimension {spaces[(i, i)].dim}")
    hom = {(i, j): spaces[(i, j)].dim for i in range(n) for j in range(n) if i != j}
    bases = {k: H.basis for k, H in spaces.items()}
    comp = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) < 3 or not (hom[(i, j)] and hom[(j, k)]):
                    continue
                table = {}
                for a, fa in enumerate(bases[(i, j)]):
                    for b, gb in enumerate(bases[(j, k)]):
                        v = [f.reduce(x) for x in spaces[(i, k)].coords(gb @ fa)]
                        if any(v):
                            table[(a, b)] = v
                if table:
                    comp[(i, j, k)] = table
    tc = FinCategory(n, hom, comp, f, t, bases)
    bad = tc.check()
    if bad:
        raise RuntimeError(bad[0])
    return tc


# --- homological algebra over a finite category ----------------------------------


@dataclass
class CatCover:
    tops: list[int]
    gens: list[Vec]
    P: Rep
    pi: RepMap


def top_of(tc: FinCategory, N: Rep) -> list[tuple[int, Vec]]:
    out = []
    for i in range(tc.n):
        d = N.dims[i]
        if not d:
            continue
        imgs = [N.maps[a.id] for a in tc.aq.arrows_to(i) if N.dims[a.src]]
        if imgs:
            span = imgs[0]
            for m in imgs[1:]:
                span = span.hstack(m)
            basis = column_space_basis(span)
        else:
            basis = Mat.zeros(d, 0, tc.field)
        comp = complement_columns(basis)
        out += [(i, comp.column(c)) for c in range(comp.ncols)]
    return out


def projective_cover_cat(tc: FinCategory, N: Rep) -> CatCover:
    gens = top_of(tc, N)
    reps = [tc.representable(i) for i, _ in gens]
    if not reps:
        Z, _, _ = direct_sum([], tc.aq, tc.field)
        return CatCover([], [], Z, RepMap(Z, N, {}, check=False))
    maps = [tc.yoneda(i, g, N, P) for (i, g), P in zip(gens, reps)]
    P, _, pi = map_between_sums([maps], reps, [N])
    return CatCover([i for i, _ in gens], [g for _, g in gens], P, RepMap(P, N, pi.comps, check=False))


def syzygy(tc: FinCategory, N: Rep) -> tuple[Rep, RepMap, CatCover]:
    cov = projective_cover_cat(tc, N)
    K, inc = kernel(cov.pi)
    return K, inc, cov


def is_projective_cat(tc: FinCategory, N: Rep) -> bool:
    return projective_cover_cat(tc, N).P.total_dim == N.total_dim


def pd_cat(tc: FinCategory, N: Rep, bound: int = 8) -> int:
    X = N
    for k in range(bound + 1):
        if X.is_zero() or is_projective_cat(tc, X):
            return k
        X, _, _ = syzygy(tc, X)
    raise RuntimeError("projective resolution over the category did not terminate")


def ext_dim_cat(tc: FinCategory, N: Rep, M: Rep) -> int:
    """dim Ext^1(N, M) from 0 -> ΩN -> P0 -> N -> 0."""
    if N.is_zero() or M.is_zero():
        return 0
    K, _, cov = syzygy(tc, N)
    hom_p = sum(M.dims[i] for i in cov.tops)
    return HomSpace(K, M).dim - hom_p + HomSpace(N, M).dim


def is_injective_cat(tc: FinCategory, N: Rep) -> bool:
    return all(ext_dim_cat(tc, tc.simple(i), N) == 0 for i in range(tc.n))


def _summand_blocks(tc: FinCategory, tops: Sequence[int], obj: int) -> list[tuple[int, int]]:
    """(offset, length) of each representable summand at an object."""
    out, o = [], 0
    for b in tops:
        d = tc.hd(obj, b)
        out.append((o, d))
        o += d
    return out


def tau_cat(tc: FinCategory, N: Rep) -> Rep:
    """DTr over the category via the Nakayama functor on a minimal presentation."""
    K, inc, cov0 = syzygy(tc, N)
    cov1 = projective_cover_cat(tc, K)
    if not cov1.tops:
        return tc.module({}, check=False)
    I1 = [tc.injective(a) for a in cov1.tops]
    I0 = [tc.injective(b) for b in cov0.tops]
    blocks = []
    for b in cov0.tops:
        blocks.append([None] * len(cov1.tops))
    for s1, (a, g) in enumerate(zip(cov1.tops, cov1.gens)):
        col = inc.comps[a] @ Mat.from_columns([g], K.dims[a], tc.field)
        image = col.column(0)
        for s0, (o, d) in enumerate(_summand_blocks(tc, cov0.tops, a)):
            y = image[o:o + d]
            if not any(y):
                continue
            b = cov0.tops[s0]
            comps = {}
            for j in range(tc.n):
                cols = [tc.compose(a, b, j, y, _unit(tc.hd(b, j), h)) for h in range(tc.hd(b, j))]
                R = Mat.from_columns(cols, tc.hd(a, j), tc.field) if cols else Mat.zeros(tc.hd(a, j), 0, tc.field)
                comps[j] = R.T
            blocks[s0][s1] = RepMap(I1[s1], I0[s0], comps)
    _, _, nu = map_between_sums(blocks, I1, I0)
    return kernel(nu)[0]


# --- the four functors --------------------------------------------------------


def _homs(tc: FinCategory, M: Rep) -> list[HomSpace]:
    return [HomSpace(T, M) for T in tc.objects]


def _exts(tc: FinCategory, M: Rep) -> list[ExtSpace]:
    return [ExtSpace(T, M) for T in tc.objects]


def F(M: Rep, tc: FinCategory) -> Rep:
    """Hom(-, M) on the category."""
    H = _homs(tc, M)
    acts = {}
    for i, j, a in tc.elems:
        fa = tc.bases[(i, j)][a]
        cols = [H[i].coords(h @ fa) for h in H[j].basis]
        acts[tc.arrow_id(i, j, a)] = Mat.from_columns(cols, H[i].dim, tc.field) if cols else Mat.zeros(H[i].dim, 0, tc.field)
    return tc.module({i: H[i].dim for i in range(tc.n)}, acts)


def F_map(g: RepMap, tc: FinCategory, FM: Rep | None = None, FN: Rep | None = None) -> RepMap:
    HM, HN = _homs(tc, g.source), _homs(tc, g.target)
    FM = FM or F(g.source, tc)
    FN = FN or F(g.target, tc)
    comps = {}
    for i in range(tc.n):
        cols = [HN[i].coords(g @ h) for h in HM[i].basis]
        comps[i] = Mat.from_columns(cols, HN[i].dim, tc.field) if cols else Mat.zeros(HN[i].dim, 0, tc.field)
    return RepMap(FM, FN, comps)


def Fprime(M: Rep, tc: FinCategory) -> Rep:
    """Ext^1(-, M) on the category, acting by pullback."""
    E = _exts(tc, M)
    acts = {}
    for i, j, a in tc.elems:
        fa = tc.bases[(i, j)][a]
        cols = [E[i].coords(pullback_cocycle(e, fa)) for e in E[j].basis]
        acts[tc.arrow_id(i, j, a)] = Mat.from_columns(cols, E[i].dim, tc.field) if cols else Mat.zeros(E[i].dim, 0, tc.field)
    return tc.module({i: E[i].dim for i in range(tc.n)}, acts)


def Fprime_map(g: RepMap, tc: FinCategory, FM: Rep | None = None, FN: Rep | None = None) -> RepMap:
    EM, EN = _exts(tc, g.source), _exts(tc, g.target)
    FM = FM or Fprime(g.source, tc)
    FN = FN or Fprime(g.target, tc)
    comps = {}
    for i in range(tc.n):
        cols = [EN[i].coords(pushforward_cocycle(g, e)) for e in EM[i].basis]
        comps[i] = Mat.from_columns(cols, EN[i].dim, tc.field) if cols else Mat.zeros(EN[i].dim, 0, tc.field)
    return RepMap(FM, FN, comps)


@dataclass
class Tensor:
    """N ⊗ T as a quotient of X = ⊕ N(T_i) ⊗ T_i."""
    value: Rep
    q: RepMap
    X: Rep
    incs: list[RepMap]
    slots: list[tuple[int, int]]


def _tensor(N: Rep, tc: FinCategory) -> Tensor:
    Ts = tc.objects
    slots = [(i, e) for i in range(tc.n) for e in range(N.dims[i])]
    q0 = Ts[0].quiver
    if not slots:
        Z, _, _ = direct_sum([], q0, tc.field)
        return Tensor(Z, identity_map(Z), Z, [], [])
    X, incs, _ = direct_sum([Ts[i] for i, _ in slots])
    index = {s: k for k, s in enumerate(slots)}
    sources, blocks = [], []
    for i, j, a in tc.elems:
        Nf = N.maps[tc.arrow_id(i, j, a)]
        fa = tc.bases[(i, j)][a]
        for e in range(N.dims[j]):
            row = []
            for i2, e2 in slots:
                if (i2, e2) == (j, e):
                    row.append(fa.scale(-1))
                elif i2 == i and Nf[e2, e] != 0:
                    row.append(identity_map(Ts[i]).scale(Nf[e2, e]))
                else:
                    row.append(None)
            sources.append(Ts[i])
            blocks.append(row)
    if blocks:
        grid = [[blocks[s][t] for s in range(len(sources))] for t in range(len(slots))]
        _, _, R = map_between_sums(grid, sources, [Ts[i] for i, _ in slots])
        R = RepMap(R.source, X, R.comps, check=False)
        C, q = cokernel(R)
    else:
        C, q = X, identity_map(X)
    return Tensor(C, q, X, incs, slots)


def G(N: Rep, tc: FinCategory) -> Rep:
    """N ⊗ T."""
    return _tensor(N, tc).value


def _descend(q: RepMap, U: RepMap, target: Rep) -> RepMap:
    """The map h with h∘q = U for a surjection q."""
    comps = {}
    for v in q.source.quiver.vertices:
        qv = q.comps[v]
        if not qv.nrows:
            comps[v] = Mat.zeros(target.dims[v], 0, target.field)
            continue
        s = solve(qv, Mat.identity(qv.nrows, qv.field))
        comps[v] = U.comps[v] @ s
    return RepMap(q.target, target, comps)


def G_map(phi: RepMap, tc: FinCategory, TN: Tensor | None = None, TM: Tensor | None = None) -> RepMap:
    TN = TN or _tensor(phi.source, tc)
    TM = TM or _tensor(phi.target, tc)
    idx = {s: k for k, s in enumerate(TM.slots)}
    comps = {v: Mat.zeros(TM.X.dims[v], TN.X.dims[v], tc.field) for v in TN.X.quiver.vertices}
    U = RepMap(TN.X, TM.X, comps, check=False)
    for k, (i, e) in enumerate(TN.slots):
        col = phi.comps[i]
        for e2 in range(phi.target.dims[i]):
            c = col[e2, e]
            if c != 0:
                U = U + (TM.incs[idx[(i, e2)]] @ _proj(TN, k)).scale(c)
    return _descend(TN.q, TM.q @ U, TM.value)


def _proj(T: Tensor, k: int) -> RepMap:
    comps = {v: m.T for v, m in T.incs[k].comps.items()}
    return RepMap(T.X, T.incs[k].source, comps, check=False)


def Gprime(N: Rep, tc: FinCategory) -> Rep:
    """Tor_1(N, T) = ker(ΩN ⊗ T -> P0 ⊗ T)."""
    if N.is_zero():
        return G(N, tc)
    K, inc, cov = syzygy(tc, N)
    g = G_map(inc, tc)
    return kernel(g)[0]


def counit(M: Rep, tc: FinCategory) -> tuple[Rep, RepMap]:
    """ε: GF(M) -> M."""
    FM = F(M, tc)
    TN = _tensor(FM, tc)
    H = _homs(tc, M)
    comps = {v: Mat.zeros(M.dims[v], TN.X.dims[v], tc.field) for v in M.quiver.vertices}
    U = RepMap(TN.X, M, comps, check=False)
    for k, (i, e) in enumerate(TN.slots):
        U = U + H[i].basis[e] @ _proj(TN, k)
    return TN.value, _descend(TN.q, U, M)


def unit(N: Rep, tc: FinCategory) -> tuple[Rep, RepMap]:
    """η: N -> FG(N)."""
    TN = _tensor(N, tc)
    GN = TN.value
    FGN = F(GN, tc)
    H = _homs(tc, GN)
    idx = {s: k for k, s in enumerate(TN.slots)}
    comps = {}
    for i in range(tc.n):
        cols = [H[i].coords(TN.q @ TN.incs[idx[(i, e)]]) for e in range(N.dims[i])]
        comps[i] = Mat.from_columns(cols, H[i].dim, tc.field) if cols else Mat.zeros(H[i].dim, 0, tc.field)
    return FGN, RepMap(N, FGN, comps)


# --- Brenner-Butler verification ---------------------------------------------


@dataclass
class BBReport:
    torsion: list[int] = dc_field(default_factory=list)
    torsionfree: list[int] = dc_field(default_factory=list)
    checks: dict = dc_field(default_factory=dict)
    failures: list[str] = dc_field(default_factory=list)
    k0: list[list[int]] | None = None
    unimodular: bool = False

    def tick(self, name: str, ok: bool, witness: str = ""):
        self.checks[name] = self.checks.get(name, 0) + 1
        if not ok:
            self.failures.append(f"{name}: {witness}")

    @property
    def verdict(self) -> bool:
        return not self.failures and self.unimodular

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "torsion": self.torsion, "torsionfree": self.torsionfree,
                "checks": self.checks, "failures": self.failures, "k0_matrix": self.k0,
                "unimodular": self.unimodular}


def probe_modules(tc: FinCategory, catalog: Sequence[Rep]) -> list[Rep]:
    """F(M), F'(M) for catalog members, representables and their radicals, simples and injectives."""
    out = []
    for M in catalog:
        for X in (F(M, tc), Fprime(M, tc)):
            if not X.is_zero():
                out.append(X)
    for i in range(tc.n):
        P = tc.representable(i)
        out.append(P)
        rad, _, _ = syzygy(tc, tc.simple(i))
        if not rad.is_zero():
            out.append(rad)
        out.append(tc.simple(i))
        out.append(tc.injective(i))
    return out


def verify_bb(t: Sequence[Rep], catalog: Sequence[Rep], tc: FinCategory | None = None,
              tests: Sequence[Rep] | None = None) -> BBReport:
    tc = tc or build_tilted(t)
    rep = BBReport()
    for problem in tc.check():
        rep.tick("category", False, problem)
    part = classify_torsion(tc.objects, catalog)
    rep.torsion, rep.torsionfree = part.torsion, part.torsionfree
    rep.tick("partition", part.exhaustive, f"neither {part.neither}, both {part.both}")
    for n, M in enumerate(catalog):
        FM, F1M = F(M, tc), Fprime(M, tc)
        for X, what in ((FM, "F"), (F1M, "F'")):
            bad = tc.relation_defects(X)
            rep.tick("module axioms", not bad, f"{what}(catalog[{n}]): {bad[:1]}")
        GF, eps = counit(M, tc)
        G1F1 = Gprime(F1M, tc)
        rep.tick("G'F = 0", Gprime(FM, tc).is_zero(), f"catalog[{n}]")
        rep.tick("GF' = 0", G(F1M, tc).is_zero(), f"catalog[{n}]")
        ok = eps.is_injective()
        C, _ = cokernel(eps)
        ok = ok and is_isomorphic(C, G1F1)
        rep.tick("canonical sequence 0->GF(M)->M->G'F'(M)->0", ok, f"catalog[{n}]")
        if n in part.torsion:
            rep.tick("GF ≅ id on torsion class", eps.is_iso(), f"catalog[{n}]")
            rep.tick("F' vanishes on torsion class", F1M.is_zero(), f"catalog[{n}]")
        if n in part.torsionfree:
            rep.tick("G'F' ≅ id on torsion-free class", is_isomorphic(G1F1, M), f"catalog[{n}]")
            rep.tick("F vanishes on torsion-free class", FM.is_zero(), f"catalog[{n}]")
    for n, N in enumerate(tests if tests is not None else probe_modules(tc, catalog)):
        bad = tc.relation_defects(N)
        if bad:
            rep.tick("module axioms", False, f"test[{n}]: {bad[0]}")
            continue
        GN, G1N = G(N, tc), Gprime(N, tc)
        rep.tick("FG' = 0", F(G1N, tc).is_zero(), f"test[{n}]")
        rep.tick("F'G = 0", Fprime(GN, tc).is_zero(), f"test[{n}]")
        FGN, eta = unit(N, tc)
        ok = eta.is_surjective()
        Kn, _ = kernel(eta)
        ok = ok and is_isomorphic(Kn, Fprime(G1N, tc))
        rep.tick("canonical sequence 0->F'G'(N)->N->FG(N)->0", ok, f"test[{n}]")
    _ar_transport(tc, catalog, part, rep)
    k0 = k0_matrix(tc, catalog[0].quiver if catalog else tc.objects[0].quiver)
    psi = psi_matrix(tc)
    rep.k0 = k0.tolist()
    n = len(k0.rows)
    rep.unimodular = abs(k0.det()) == 1
    rep.tick("K0 inverse", (psi @ k0) == ZMat.identity(n) and (k0 @ psi) == ZMat.identity(n),
             "psi is not inverse to the K0 matrix")
    return rep


def _ar_transport(tc: FinCategory, catalog: Sequence[Rep], part, rep: BBReport):
    from .ar import ar_sequence
    Fcat = [F(catalog[n], tc) for n in part.torsion] + [Fprime(catalog[n], tc) for n in part.torsionfree]
    T = tc.objects
    for n, C in enumerate(catalog):
        if is_projective(C):
            continue
        A = tau(C)
        torsion_side = all(ExtSpace(X, A).dim == 0 for X in T)
        free_side = n in part.torsionfree
        if not (torsion_side or free_side):
            continue
        s = ar_sequence(C)
        if torsion_side:
            i = F_map(s.seq.i, tc)
            p = F_map(s.seq.p, tc, i.target)
        else:
            i = Fprime_map(s.seq.i, tc)
            p = Fprime_map(s.seq.p, tc, i.target)
        try:
            seq = ShortExact(i, p)
        except ValueError as exc:
            rep.tick("AR transport", False, f"catalog[{n}]: {exc}")
            continue
        rep.tick("AR transport", is_almost_split(seq, Fcat), f"catalog[{n}]")


# --- Grothendieck groups -----------------------------------------------------


def k0_matrix(tc: FinCategory, q: Quiver) -> ZMat:
    """Columns |F(S_v)| - |F'(S_v)| for the simples S_v of q."""
    cols = []
    for v in q.vertices:
        S = simple(q, v, tc.field)
        a, b = F(S, tc), Fprime(S, tc)
        cols.append([a.dims[i] - b.dims[i] for i in range(tc.n)])
    return ZMat([[c[i] for c in cols] for i in range(tc.n)])


def psi_matrix(tc: FinCategory) -> ZMat:
    """Columns |G(S_i)| - |G'(S_i)| for the simple modules over the category."""
    q = tc.objects[0].quiver
    cols = []
    for i in range(tc.n):
        S = tc.simple(i)
        a, b = G(S, tc), Gprime(S, tc)
        cols.append([a.dims[v] - b.dims[v] for v in q.vertices])
    return ZMat([[c[r] for c in cols] for r in range(len(q.vertices))])


def global_dimension(tc: FinCategory) -> int:
    return max(pd_cat(tc, tc.simple(i)) for i in range(tc.n))


# --- the dual tilting set ----------------------------------------------------


@dataclass
class DualTiltingReport:
    pd_ok: bool
    ext_failures: list[tuple[int, int]]
    coresolution_failures: list[int]
    hom_dims: list[list[int]]
    expected: list[list[int]]

    @property
    def verdict(self) -> bool:
        return (self.pd_ok and not self.ext_failures and not self.coresolution_failures
                and self.hom_dims == self.expected)


def theta(tc: FinCategory, v: int) -> Rep:
    """Hom(P(v), -) on the category, as a module over its opposite."""
    op = tc.opposite()
    Ts = tc.objects
    acts = {}
    for i, j, a in tc.elems:
        acts[op.arrow_id(j, i, a)] = tc.bases[(i, j)][a].comps[v]
    return op.module({i: Ts[i].dims[v] for i in range(tc.n)}, acts)


def dual_tilting_check(tc: FinCategory) -> DualTiltingReport:
    op = tc.opposite()
    q = tc.objects[0].quiver
    th = [theta(tc, v) for v in q.vertices]
    pd_ok = all(pd_cat(op, X) <= 1 for X in th)
    ext_bad = [(a, b) for a in range(len(th)) for b in range(len(th)) if ext_dim_cat(op, th[a], th[b])]
    cores_bad = []
    for i in range(op.n):
        P = op.representable(i)
        try:
            _, u, _ = left_approximation(P, th)
            if not u.is_injective():
                raise ApproximationError("not injective")
            C, _ = cokernel(u)
            if any(iso_index(Y, th) is None for Y in decompose(C)):
                raise ApproximationError("cokernel outside add θ")
        except ApproximationError:
            cores_bad.append(i)
    hom = [[HomSpace(th[a], th[b]).dim for b in range(len(th))] for a in range(len(th))]
    pc = q.path_count_matrix()
    return DualTiltingReport(pd_ok, ext_bad, cores_bad, hom, pc)


# --- splitting and separation --------------------------------------------------


@dataclass
class SplitReport:
    separates: bool
    splits: bool
    separates_by_definition: bool
    splits_by_definition: bool

    @property
    def consistent(self) -> bool:
        return (self.separates == self.separates_by_definition
                and self.splits == self.splits_by_definition)


def splitting_checks(tc: FinCategory, catalog: Sequence[Rep], partition=None,
                     tests: Sequence[Rep] | None = None) -> SplitReport:
    part = partition or classify_torsion(tc.objects, catalog)
    splits = all(homological_dims(catalog[n])[1] == 1 for n in part.torsionfree)
    mods = tests if tests is not None else probe_modules(tc, catalog)
    indecs = []
    for N in mods:
        for Y in decompose(N):
            if iso_index(Y, indecs) is None:
                indecs.append(Y)
    in_y = [Gprime(Y, tc).is_zero() for Y in indecs]
    in_x = [G(Y, tc).is_zero() for Y in indecs]
    separates = all(pd_cat(tc, Y) <= 1 for Y, y in zip(indecs, in_y) if y)
    splits_def = all(x or y for x, y in zip(in_x, in_y))
    separates_def = part.exhaustive
    return SplitReport(separates, splits, separates_def, splits_def)
