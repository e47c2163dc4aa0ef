"""Auslander-Reiten translates, almost split sequences and knitting."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .linalg import Field, Mat, ZMat, default_field, inverse, nullspace_sparse, span_rank
from .modules import (DecompositionError, ProjectiveSum, decompose, decompose_with_maps, end_radical,
                      find_isomorphism, has_injective_summand, has_projective_summand, injective,
                      injective_certified, is_indecomposable, is_injective, is_projective, iso_index,
                      min_proj_presentation, projective, projective_certified, _indec_iso)
from .quiver import Quiver, WindowTooSmall, euler_matrix, opposite
from .rep import (ExtSpace, HomSpace, Rep, RepMap, ShortExact, direct_sum, dualize, kernel,
                  pullback_cocycle, zero_rep)


# --- translates ------------------------------------------------------------------


def nakayama_of(pres) -> tuple[Rep, Rep, RepMap]:
    """Apply the Nakayama functor to the presentation map d: P1 -> P0."""
    P1, P0, d = pres.P1, pres.P0, pres.d
    q, f = P0.quiver, P0.field
    I1 = [injective(q, w, f, certify=False) for w in P1.tops]
    I0 = [injective(q, v, f, certify=False) for v in P0.tops]
    S1, _, _ = direct_sum(I1, q, f)
    S0, _, _ = direct_sum(I0, q, f)
    idx0 = [{u: {s: k for k, s in enumerate(ps)} for u, ps in I.labels.items()} for I in I0]
    rows = {u: [[0] * S1.dims[u] for _ in range(S0.dims[u])] for u in q.vertices}
    coeffs = [P1.path_coefficients(d, j, P0) for j in range(len(P1.tops))]
    for u in q.vertices:
        off1 = 0
        for j, Ij in enumerate(I1):
            rs = Ij.labels.get(u, [])
            off0 = [0]
            for I in I0:
                off0.append(off0[-1] + I.dims[u])
            for i, pc in coeffs[j].items():
                for p, c in pc.items():
                    n = len(p)
                    for ri, r in enumerate(rs):
                        if len(r) >= n and r[len(r) - n:] == p:
                            si = idx0[i][u][r[:len(r) - n]]
                            rows[u][off0[i] + si][off1 + ri] += c
            off1 += len(rs)
    comps = {u: Mat._raw([[f.reduce(x) for x in r] for r in rows[u]], S1.dims[u], f) for u in q.vertices}
    return S1, S0, RepMap(S1, S0, comps, check=True)


def tau(M: Rep) -> Rep:
    """D Tr M, computed from a minimal projective presentation."""
    q = M.quiver
    if M.is_zero():
        return zero_rep(q, M.field)
    if has_projective_summand(M):
        raise ValueError("tau of a module with a projective summand")
    pres = min_proj_presentation(M, certify=True)
    for v in pres.P0.tops + pres.P1.tops:
        if not injective_certified(q, v):
            raise WindowTooSmall(f"I({v}) reaches the window boundary")
    _, _, nu = nakayama_of(pres)
    K, _ = kernel(nu)
    return K.renamed(None if M.name is None else f"tau {M.name}")


def tau_inv(M: Rep) -> Rep:
    """Tr D M, via duality with the opposite quiver."""
    q = M.quiver
    qop = opposite(q)
    if M.is_zero():
        return zero_rep(q, M.field)
    if has_injective_summand(M):
        raise ValueError("tau_inv of a module with an injective summand")
    T = tau(dualize(M, qop))
    out = dualize(T, q)
    return out.renamed(None if M.name is None else f"tau- {M.name}")


def coxeter_matrix(q: Quiver, field: Field | None = None) -> Mat:
    """Phi = -E^{-1} E^T, acting on dimension vectors as columns."""
    E = euler_matrix(q).to_mat(field or default_field())
    return (inverse(E) @ E.T).scale(-1)


def coxeter_dim(q: Quiver, d: dict, inverse_: bool = False) -> dict:
    field = default_field()
    Phi = coxeter_matrix(q, field)
    if inverse_:
        Phi = inverse(Phi)
    vec = Phi.apply([d.get(v, 0) for v in q.vertices])
    return {v: int(x) for v, x in zip(q.vertices, vec) if x != 0}


# --- almost split sequences -----------------------------------------------


@dataclass
class AlmostSplitSeq:
    seq: ShortExact
    middle: list[Rep] = dc_field(default_factory=list)

    @property
    def left(self) -> Rep:
        return self.seq.A

    @property
    def right(self) -> Rep:
        return self.seq.C

    @property
    def alpha(self) -> int:
        """Number of indecomposable summands of the middle term."""
        return len(self.middle)


def socle_class(M: Rep, N: Rep) -> dict:
    """A nonzero element of Ext^1(M, N) killed by rad End(M) acting by pullback."""
    E = ExtSpace(M, N)
    if E.dim == 0:
        raise ValueError("Ext^1 vanishes; no almost split class")
    H, rad = end_radical(M)
    rows = []
    basis = E.basis
    for r in rad:
        rm = H.element(r)
        images = [E.coords(pullback_cocycle(c, rm)) for c in basis]
        for i in range(E.dim):
            rows.append({k: images[k][i] for k in range(E.dim) if images[k][i] != 0})
    vecs, _ = nullspace_sparse(rows, E.dim, M.field)
    if len(vecs) != 1:
        raise DecompositionError(f"socle of Ext^1 has dimension {len(vecs)}, expected 1")
    return E.element([vecs[0].get(i, 0) for i in range(E.dim)])


def ar_sequence(M: Rep, catalog: Sequence[Rep] | None = None) -> AlmostSplitSeq:
    if not is_indecomposable(M):
        raise ValueError("ar_sequence needs an indecomposable module")
    if is_projective(M):
        raise ValueError("no almost split sequence ends in a projective")
    T = tau(M)
    c = socle_class(M, T)
    seq = ExtSpace(M, T).extension(c)
    ass = AlmostSplitSeq(seq, decompose(seq.B))
    if catalog is not None and not is_almost_split(ass, catalog):
        raise WindowTooSmall("almost split certification failed against the catalog")
    return ass


def _image_rank(maps_into: Sequence[RepMap], post: RepMap | None, pre: RepMap | None, field) -> int:
    vecs = []
    for h in maps_into:
        g = h
        if post is not None:
            g = post @ g
        if pre is not None:
            g = g @ pre
        vecs.append(g.vec())
    return span_rank(vecs, field)


def is_almost_split(s: AlmostSplitSeq | ShortExact, catalog: Sequence[Rep]) -> bool:
    seq = s.seq if isinstance(s, AlmostSplitSeq) else s
    if not seq.is_exact() or seq.is_split():
        return False
    A, B, C = seq.A, seq.B, seq.C
    if not (is_indecomposable(A) and is_indecomposable(C)):
        return False
    f = C.field
    for X in catalog:
        # right almost split: maps X -> C that are not split epis factor through p
        HXC = HomSpace(X, C)
        if HXC.dim:
            got = _image_rank(HomSpace(X, B).basis, seq.p, None, f)
            need = HXC.dim - (1 if (X.dims == C.dims and _indec_iso(X, C)) else 0)
            if got < need:
                return False
        HAX = HomSpace(A, X)
        if HAX.dim:
            got = _image_rank(HomSpace(B, X).basis, None, seq.i, f)
            need = HAX.dim - (1 if (X.dims == A.dims and _indec_iso(X, A)) else 0)
            if got < need:
                return False
    return True


# --- irreducible maps ----------------------------------------------------------


def radical_hom(M: Rep, X: Rep) -> list[RepMap]:
    """Basis of rad(M, X) for indecomposable M, X."""
    H = HomSpace(M, X)
    if not (M.dims == X.dims and _indec_iso(M, X)):
        return H.basis
    phi = find_isomorphism(M, X)
    if phi is None:
        for g in H.basis:
            if g.is_iso():
                phi = g
                break
    if phi is None:
        # some combination is invertible; search pairs
        for g in H.basis:
            for h in H.basis[1:]:
                if (g + h).is_iso():
                    phi = g + h
                    break
            if phi is not None:
                break
    if phi is None:
        raise DecompositionError("could not exhibit an isomorphism")
    HM, rad = end_radical(M)
    return [phi @ HM.element(r) for r in rad]


def irreducible_multiplicity(M: Rep, N: Rep, catalog: Sequence[Rep]) -> int:
    """dim rad(M, N) / rad^2(M, N)."""
    rad = radical_hom(M, N)
    if not rad:
        return 0
    vecs = []
    for X in catalog:
        left = radical_hom(M, X)
        if not left:
            continue
        right = radical_hom(X, N)
        for g in right:
            for h in left:
                vecs.append((g @ h).vec())
    r2 = span_rank(vecs, M.field)
    return len(rad) - r2


# --- knitting -----------------------------------------------------------------


@dataclass
class ARVertex:
    orbit: int
    level: int
    rep: Rep

    @property
    def key(self) -> tuple[int, int]:
        return (self.orbit, self.level)

    @property
    def dim(self) -> dict:
        return self.rep.dim_vector()


class ARComponent:
    """A knitted preprojective or preinjective component.

    Vertex (v, k) is tau^{-k} P(v) on the preprojective side and tau^k I(v)
    on the preinjective side. `status[key]` is 'open' while the orbit
    continues, 'end' when the orbit stops (injective, resp. projective)
    and 'cut' when the window cannot certify the next step.
    """

    def __init__(self, quiver: Quiver, side: str):
        self.quiver = quiver
        self.side = side
        self.vertices: dict[tuple[int, int], ARVertex] = {}
        self.arrows: dict[tuple[tuple, tuple], int] = {}
        self.arrow_labels: dict[tuple[tuple, tuple], list[str]] = {}
        self.tau: dict[tuple, tuple] = {}
        self.status: dict[tuple, str] = {}
        self.cut_orbits: set[int] = set()
        self.depth = 0

    def __contains__(self, key) -> bool:
        return key in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self.vertices, key=lambda k: (k[1], k[0]))

    def rep(self, key) -> Rep:
        return self.vertices[key].rep

    def successors(self, key) -> list[tuple[tuple, int]]:
        return sorted((t, m) for (s, t), m in self.arrows.items() if s == key)

    def predecessors(self, key) -> list[tuple[tuple, int]]:
        return sorted((s, m) for (s, t), m in self.arrows.items() if t == key)

    def tau_of(self, key):
        return self.tau.get(key)

    def tau_inv_of(self, key):
        for k, v in self.tau.items():
            if v == key:
                return k
        return None

    def orbits(self) -> list[int]:
        return sorted({k[0] for k in self.vertices})

    def find(self, M: Rep) -> tuple | None:
        """Key of a vertex whose label is isomorphic to the indecomposable M."""
        for key in self.keys():
            R = self.vertices[key].rep
            if R.dims == M.dims and _indec_iso(R, M):
                return key
        return None

    def grid_quiver(self) -> Quiver:
        """The quiver whose preprojective grid indexes this component."""
        return self.quiver if self.side == "pre" else opposite(self.quiver)

    def _absent_for_good(self, key) -> bool:
        v, k = key
        return any(self.status.get((v, j)) == "end" for j in range(k))

    def mesh_defects(self) -> list[tuple]:
        """Vertices where the knitted dimension vectors violate the mesh identity.

        Meshes with an uncertified neighbour are skipped.
        """
        q = self.grid_quiver()
        out = []
        for key in self.keys():
            v, k = key
            if k == 0 or (v, k - 1) not in self.vertices:
                continue
            preds = [(a.tgt, k) for a in q.arrows_from(v)] + [(a.src, k - 1) for a in q.arrows_to(v)]
            if any(p not in self.vertices and not self._absent_for_good(p) for p in preds):
                continue
            total: dict[int, int] = {}
            for p in preds:
                if p in self.vertices:
                    for u, d in self.vertices[p].dim.items():
                        total[u] = total.get(u, 0) + d
            lhs = dict(self.vertices[(v, k - 1)].dim)
            for u, d in self.vertices[key].dim.items():
                lhs[u] = lhs.get(u, 0) + d
            if total != lhs:
                out.append(key)
        return out

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "vertices": [{"orbit": k[0], "level": k[1], "dim": {str(v): d for v, d in
                                                               self.vertices[k].dim.items()},
                          "status": self.status.get(k, "open"),
                          "rep": self.vertices[k].rep.to_dict()} for k in self.keys()],
            "arrows": [{"src": list(s), "tgt": list(t), "multiplicity": m}
                       for (s, t), m in sorted(self.arrows.items())],
            "tau": [{"from": list(k), "to": list(v)} for k, v in sorted(self.tau.items())],
            "cut_orbits": sorted(self.cut_orbits),
        }


def _grid_arrows(comp: ARComponent, q: Quiver):
    """Arrows of the preprojective grid: (w,k)->(v,k) and (v,k)->(w,k+1) for v->w."""
    comp.arrows.clear()
    comp.arrow_labels.clear()
    for (v, k) in comp.vertices:
        for a in q.arrows_from(v):
            w = a.tgt
            for s, t in (((w, k), (v, k)), ((v, k), (w, k + 1))):
                if s in comp.vertices and t in comp.vertices:
                    comp.arrows[(s, t)] = comp.arrows.get((s, t), 0) + 1
                    comp.arrow_labels.setdefault((s, t), []).append(a.id)


def knit_preprojective(q: Quiver, depth: int, field: Field | None = None,
                       check_mesh: bool = True) -> ARComponent:
    if not q.is_acyclic():
        raise ValueError("knitting needs an acyclic quiver")
    field = field or default_field()
    comp = ARComponent(q, "pre")
    for v in q.vertices:
        if projective_certified(q, v):
            comp.vertices[(v, 0)] = ARVertex(v, 0, projective(q, v, field).renamed(f"P({v})"))
            comp.status[(v, 0)] = "open"
        else:
            comp.cut_orbits.add(v)
    for k in range(depth):
        for v in q.vertices:
            key = (v, k)
            if key not in comp.vertices or comp.status.get(key) != "open":
                continue
            X = comp.vertices[key].rep
            try:
                if is_injective(X):
                    comp.status[key] = "end"
                    continue
                Y = tau_inv(X)
            except WindowTooSmall:
                comp.status[key] = "cut"
                comp.cut_orbits.add(v)
                continue
            if Y.is_zero():
                comp.status[key] = "end"
                continue
            if not is_indecomposable(Y):
                raise RuntimeError(f"tau^-{k + 1} P({v}) is decomposable")
            comp.vertices[(v, k + 1)] = ARVertex(v, k + 1, Y.renamed(f"tau^-{k + 1} P({v})"))
            comp.status[(v, k + 1)] = "open"
            comp.tau[(v, k + 1)] = key
        comp.depth = k + 1
    _grid_arrows(comp, q)
    if check_mesh:
        bad = comp.mesh_defects()
        if bad:
            raise RuntimeError(f"mesh identity fails at {bad}")
    return comp


def knit_preinjective(q: Quiver, depth: int, field: Field | None = None) -> ARComponent:
    qop = opposite(q)
    pre = knit_preprojective(qop, depth, field)
    comp = ARComponent(q, "post")
    for key, vert in pre.vertices.items():
        v, k = key
        name = f"I({v})" if k == 0 else f"tau^{k} I({v})"
        comp.vertices[key] = ARVertex(v, k, dualize(vert.rep, q).renamed(name))
    comp.status = dict(pre.status)
    comp.cut_orbits = set(pre.cut_orbits)
    comp.depth = pre.depth
    # tau goes away from the injectives: tau(v, k) = (v, k + 1)
    comp.tau = {t: s for s, t in pre.tau.items()}
    comp.arrows = {(t, s): m for (s, t), m in pre.arrows.items()}
    comp.arrow_labels = {(t, s): l for (s, t), l in pre.arrow_labels.items()}
    return comp


def component_catalog(*comps: ARComponent) -> list[Rep]:
    """Pairwise non-isomorphic labels of the given components."""
    out: list[Rep] = []
    for c in comps:
        for key in c.keys():
            R = c.vertices[key].rep
            if iso_index(R, out) is None:
                out.append(R)
    return out


def all_indecomposables(q: Quiver, max_depth: int = 64, field: Field | None = None) -> list[Rep]:
    """All indecomposables of a representation-finite quiver, by knitting to termination."""
    comp = knit_preprojective(q.finite() if q.is_truncation else q, max_depth, field)
    if any(s == "open" and (v, k + 1) not in comp.vertices for (v, k), s in comp.status.items()):
        raise ValueError("preprojective component did not terminate; quiver is not Dynkin")
    return [comp.vertices[k].rep for k in comp.keys()]


def reference_catalog(q: Quiver, depth: int = 3, field: Field | None = None) -> list[Rep]:
    """Every indecomposable for a Dynkin quiver, else the preprojectives and
    preinjectives up to the given depth."""
    from .quiver import classify
    fq = q.finite() if q.is_truncation else q
    if classify(fq).is_dynkin:
        return all_indecomposables(fq, field=field)
    pre = knit_preprojective(fq, depth, field)
    out = [pre.rep(k) for k in pre.keys()]
    inj = knit_preinjective(fq, depth, field)
    out += [inj.rep(k) for k in inj.keys()]
    return out
