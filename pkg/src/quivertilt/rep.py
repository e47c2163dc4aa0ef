"""Quiver representations, morphisms, Hom and Ext spaces."""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from .linalg import (Field, Mat, QQ, Reducer, complement_columns, default_field,
                     express, inverse, kernel_basis, nullspace_sparse, rank, solve)
from .quiver import Quiver, opposite


class Rep:
    """A finite-dimensional representation.

    `maps[a]` is a (dim tgt x dim src) matrix for each arrow a, so a
    composite along a path p = (a1, a2, ...) acts as M(a_k) ... M(a1).
    """

    __slots__ = ("quiver", "dims", "maps", "field", "name", "labels")

    def __init__(self, q: Quiver, dims: Mapping[int, int], maps: Mapping[str, Mat] | None = None,
                 field: Field | None = None, name: str | None = None, labels=None, check: bool = True):
        self.quiver = q
        self.field = field or default_field()
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        maps = dict(maps or {})
        full = {}
        for a in q.arrows:
            m = maps.pop(a.id, None)
            if m is None:
                m = Mat.zeros(self.dims[a.tgt], self.dims[a.src], self.field)
            full[a.id] = m
        if maps and check:
            raise ValueError(f"maps given for unknown arrows {sorted(maps)}")
        self.maps = full
        self.name = name
        self.labels = labels
        if check:
            extra = set(dims) - set(q.vertices)
            if any(dims[v] for v in extra):
                raise ValueError(f"support outside the quiver: {sorted(extra)}")
            for a in q.arrows:
                m = full[a.id]
                if m.shape != (self.dims[a.tgt], self.dims[a.src]):
                    raise ValueError(f"arrow {a.id}: matrix shape {m.shape}, expected "
                                     f"{(self.dims[a.tgt], self.dims[a.src])}")
                if m.field != self.field:
                    raise ValueError("matrix over the wrong field")

    # -- queries

    def dim(self, v: int) -> int:
        return self.dims.get(v, 0)

    def dim_vector(self) -> dict[int, int]:
        return {v: d for v, d in self.dims.items() if d}

    def dimvec_tuple(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def support(self) -> list[int]:
        return [v for v in self.quiver.vertices if self.dims[v]]

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_map(self, path: Sequence[str], start: int) -> Mat:
        m = Mat.identity(self.dims[start], self.field)
        for aid in path:
            m = self.maps[aid] @ m
        return m

    def __repr__(self):
        dv = ",".join(f"{v}:{d}" for v, d in self.dim_vector().items())
        return f"Rep({self.name + ' ' if self.name else ''}{{{dv}}})"

    def same_as(self, other: "Rep") -> bool:
        return self.dims == other.dims and all(self.maps[a] == other.maps[a] for a in self.maps)

    def renamed(self, name: str | None) -> "Rep":
        return Rep(self.quiver, self.dims, self.maps, self.field, name, self.labels, check=False)

    # -- transport between windows

    def on(self, q: Quiver) -> "Rep":
        """The same representation viewed on another quiver containing its support.

        Arrows are matched by id; arrows of q touching the support must exist
        in the source quiver, otherwise the transport would not be faithful.
        """
        sup = set(self.support)
        if not sup <= set(q.vertices):
            raise ValueError("support does not fit the target quiver")
        maps = {}
        for a in q.arrows:
            if a.src in sup and a.tgt in sup:
                if a.id not in self.maps:
                    raise ValueError(f"arrow {a.id} unknown to the source quiver")
                maps[a.id] = self.maps[a.id]
        for a in self.quiver.arrows:
            if a.src in sup and a.tgt in sup and a.id not in {b.id for b in q.arrows}:
                raise ValueError(f"arrow {a.id} missing in the target quiver")
        return Rep(q, {v: self.dims[v] for v in sup}, maps, self.field, self.name, check=True)

    # -- serialization

    def to_dict(self, with_quiver: bool = False) -> dict:
        f = self.field
        d = {"dims": {str(v): n for v, n in self.dims.items() if n},
             "maps": {a: [[f.fmt(x) for x in row] for row in m.rows]
                      for a, m in self.maps.items() if m.nrows and m.ncols},
             "field": f.name}
        if self.name:
            d["name"] = self.name
        if with_quiver:
            d["quiver"] = self.quiver.to_dict()
        return d

    def to_json(self, with_quiver: bool = False) -> str:
        return json.dumps(self.to_dict(with_quiver), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict, q: Quiver | None = None) -> "Rep":
        from .linalg import field_from_name
        if q is None:
            if "quiver" not in d:
                raise ValueError("representation JSON without a quiver")
            q = Quiver.from_dict(d["quiver"])
        field = field_from_name(d.get("field", "QQ"))
        dims = {int(v): int(n) for v, n in d.get("dims", {}).items()}
        unknown = set(dims) - set(q.vertices)
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown)}")
        maps = {}
        for aid, rows in d.get("maps", {}).items():
            try:
                a = q.arrow(aid)
            except KeyError as exc:
                raise ValueError(f"unknown arrow {aid!r}") from exc
            maps[aid] = Mat([[field.parse(x) for x in r] for r in rows],
                            dims.get(a.src, 0), field)
        return cls(q, dims, maps, field, d.get("name"))

    @classmethod
    def from_json(cls, text: str, q: Quiver | None = None) -> "Rep":
        return cls.from_dict(json.loads(text), q)


def zero_rep(q: Quiver, field: Field | None = None) -> Rep:
    return Rep(q, {}, {}, field)


class RepMap:
    """A morphism of representations, one matrix per vertex."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Rep, target: Rep, comps: Mapping[int, Mat] | None = None, check: bool = True):
        if source.quiver is not target.quiver and source.quiver != target.quiver:
            raise ValueError("quiver mismatch")
        self.source = source
        self.target = target
        comps = dict(comps or {})
        f = source.field
        self.comps = {}
        for v in source.quiver.vertices:
            m = comps.get(v)
            if m is None:
                m = Mat.zeros(target.dims[v], source.dims[v], f)
            self.comps[v] = m
        if check:
            self.validate()

    def validate(self):
        M, N = self.source, self.target
        for v, m in self.comps.items():
            if m.shape != (N.dims[v], M.dims[v]):
                raise ValueError(f"vertex {v}: component shape {m.shape}")
        for a in M.quiver.arrows:
            lhs = N.maps[a.id] @ self.comps[a.src]
            rhs = self.comps[a.tgt] @ M.maps[a.id]
            if lhs != rhs:
                raise ValueError(f"square at arrow {a.id} does not commute")

    def __getitem__(self, v: int) -> Mat:
        return self.comps[v]

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """Composite self after other."""
        if other.target.dims != self.source.dims:
            raise ValueError("composition of incompatible maps")
        return RepMap(other.source, self.target,
                      {v: self.comps[v] @ other.comps[v] for v in self.comps}, check=False)

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, {v: self.comps[v] + other.comps[v] for v in self.comps},
                      check=False)

    def __sub__(self, other: "RepMap") -> "RepMap":
        return self + other.scale(-1)

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, {v: m.scale(c) for v, m in self.comps.items()}, check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def is_injective(self) -> bool:
        return all(rank(m) == m.ncols for m in self.comps.values())

    def is_surjective(self) -> bool:
        return all(rank(m) == m.nrows for m in self.comps.values())

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def rank(self) -> int:
        return sum(rank(m) for m in self.comps.values())

    def vec(self) -> dict:
        """Flatten to a sparse vector indexed by (vertex, row, col)."""
        out = {}
        for v, m in self.comps.items():
            for i, r in enumerate(m.rows):
                for j, x in enumerate(r):
                    if x != 0:
                        out[(v, i, j)] = x
        return out

    def inverse(self) -> "RepMap":
        return RepMap(self.target, self.source, {v: inverse(m) for v, m in self.comps.items()}, check=False)

    def __repr__(self):
        return f"RepMap({self.source!r} -> {self.target!r})"


def identity_map(M: Rep) -> RepMap:
    return RepMap(M, M, {v: Mat.identity(d, M.field) for v, d in M.dims.items()}, check=False)


def zero_map(M: Rep, N: Rep) -> RepMap:
    return RepMap(M, N, {}, check=False)


def linear_combination(maps: Sequence[RepMap], coeffs: Sequence, source: Rep | None = None,
                       target: Rep | None = None) -> RepMap:
    if not maps:
        return zero_map(source, target)
    out = maps[0].scale(coeffs[0])
    for f, c in zip(maps[1:], coeffs[1:]):
        if c != 0:
            out = out + f.scale(c)
    return out


def _same_quiver(M: Rep, N: Rep):
    if M.quiver is not N.quiver and M.quiver != N.quiver:
        raise ValueError("quiver mismatch")
    if M.field != N.field:
        raise ValueError("field mismatch")


# --- Hom -------------------------------------------------------------------


class HomSpace:
    """Hom(M, N) as the kernel of the commuting-square system."""

    def __init__(self, M: Rep, N: Rep):
        _same_quiver(M, N)
        self.source, self.target = M, N
        q = M.quiver
        self.offsets = {}
        n = 0
        for v in q.vertices:
            self.offsets[v] = n
            n += M.dims[v] * N.dims[v]
        self.nvars = n
        rows = []
        for a in q.arrows:
            s, t = a.src, a.tgt
            ms, nt = M.dims[s], N.dims[t]
            if ms == 0 or nt == 0:
                continue
            Na, Ma = N.maps[a.id].rows, M.maps[a.id].rows
            ns, mt = N.dims[s], M.dims[t]
            os_, ot = self.offsets[s], self.offsets[t]
            for i in range(nt):
                for j in range(ms):
                    r = {}
                    # (N(a) f_s)[i, j] = sum_k N(a)[i,k] f_s[k,j]
                    for k in range(ns):
                        x = Na[i][k]
                        if x != 0:
                            idx = os_ + k * ms + j
                            r[idx] = r.get(idx, 0) + x
                    # -(f_t M(a))[i, j] = -sum_k f_t[i,k] M(a)[k,j]
                    for k in range(mt):
                        x = Ma[k][j]
                        if x != 0:
                            idx = ot + i * mt + k
                            r[idx] = r.get(idx, 0) - x
                    r = {c: M.field.reduce(x) for c, x in r.items() if M.field.reduce(x) != 0}
                    if r:
                        rows.append(r)
        vecs, self.free = nullspace_sparse(rows, n, M.field)
        self._vecs = vecs
        self.basis = [self._to_map(v) for v in vecs]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _to_map(self, vec: dict) -> RepMap:
        M, N, f = self.source, self.target, self.source.field
        comps = {}
        for v in M.quiver.vertices:
            r, c = N.dims[v], M.dims[v]
            o = self.offsets[v]
            comps[v] = Mat._raw([[vec.get(o + i * c + j, 0) for j in range(c)] for i in range(r)], c, f)
        return RepMap(M, N, comps, check=False)

    def flat(self, fmap: RepMap) -> dict:
        out = {}
        for v, m in fmap.comps.items():
            o, c = self.offsets[v], m.ncols
            for i, row in enumerate(m.rows):
                for j, x in enumerate(row):
                    if x != 0:
                        out[o + i * c + j] = x
        return out

    def coords(self, fmap: RepMap) -> list:
        vec = self.flat(fmap)
        return [vec.get(c, 0) for c in self.free]

    def element(self, coeffs: Sequence) -> RepMap:
        return linear_combination(self.basis, coeffs, self.source, self.target)


def hom_basis(M: Rep, N: Rep) -> list[RepMap]:
    return HomSpace(M, N).basis


def hom_dim(M: Rep, N: Rep) -> int:
    return HomSpace(M, N).dim


# --- Ext^1 -----------------------------------------------------------------


class ExtSpace:
    """Ext^1(M, N) as cocycles modulo coboundaries.

    A cocycle is a dict arrow id -> (dim N_tgt x dim M_src) matrix. The
    extension it defines has middle term N + M with arrow maps
    [[N(a), c_a], [0, M(a)]].
    """

    def __init__(self, M: Rep, N: Rep):
        _same_quiver(M, N)
        self.source, self.target = M, N
        q = M.quiver
        f = M.field
        self.offsets = {}
        n = 0
        for a in q.arrows:
            self.offsets[a.id] = n
            n += N.dims[a.tgt] * M.dims[a.src]
        self.ncoc = n
        images = []
        for v in q.vertices:
            mv, nv = M.dims[v], N.dims[v]
            for i in range(nv):
                for j in range(mv):
                    # delta(E_ij at v)_a = N(a) E_ij [a.src == v] - E_ij M(a) [a.tgt == v]
                    img = {}
                    for a in q.arrows_from(v):
                        Na = N.maps[a.id]
                        ms = M.dims[a.src]
                        o = self.offsets[a.id]
                        for r in range(N.dims[a.tgt]):
                            x = Na.rows[r][i]
                            if x != 0:
                                idx = o + r * ms + j
                                img[idx] = img.get(idx, 0) + x
                    for a in q.arrows_to(v):
                        Ma = M.maps[a.id]
                        ms = M.dims[a.src]
                        o = self.offsets[a.id]
                        for cc in range(ms):
                            x = Ma.rows[j][cc]
                            if x != 0:
                                idx = o + i * ms + cc
                                img[idx] = img.get(idx, 0) - x
                    img = {c: f.reduce(x) for c, x in img.items() if f.reduce(x) != 0}
                    if img:
                        images.append(img)
        self._reducer = Reducer(images, f)
        self.free = [c for c in range(n) if c not in self._reducer.pivots]
        self._index = {c: k for k, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def _cocycle_from_vec(self, vec: dict) -> dict[str, Mat]:
        M, N, f = self.source, self.target, self.source.field
        out = {}
        for a in M.quiver.arrows:
            r, c = N.dims[a.tgt], M.dims[a.src]
            o = self.offsets[a.id]
            out[a.id] = Mat._raw([[vec.get(o + i * c + j, 0) for j in range(c)] for i in range(r)], c, f)
        return out

    def flat(self, cocycle: Mapping[str, Mat]) -> dict:
        out = {}
        for aid, m in cocycle.items():
            o, c = self.offsets[aid], m.ncols
            for i, row in enumerate(m.rows):
                for j, x in enumerate(row):
                    if x != 0:
                        out[o + i * c + j] = x
        return out

    @property
    def basis(self) -> list[dict[str, Mat]]:
        return [self._cocycle_from_vec({c: 1}) for c in self.free]

    def coords(self, cocycle: Mapping[str, Mat]) -> list:
        red = self._reducer.reduce(self.flat(cocycle))
        return [red.get(c, 0) for c in self.free]

    def element(self, coeffs: Sequence) -> dict[str, Mat]:
        return self._cocycle_from_vec({c: x for c, x in zip(self.free, coeffs) if x != 0})

    def is_trivial(self, cocycle: Mapping[str, Mat]) -> bool:
        return not self._reducer.reduce(self.flat(cocycle))

    def extension(self, cocycle: Mapping[str, Mat]) -> "ShortExact":
        return extension_from_cocycle(self.source, self.target, cocycle)


def ext1_dim(M: Rep, N: Rep) -> int:
    return ExtSpace(M, N).dim


def ext1_basis(M: Rep, N: Rep) -> ExtSpace:
    return ExtSpace(M, N)


def zero_cocycle(M: Rep, N: Rep) -> dict[str, Mat]:
    return {a.id: Mat.zeros(N.dims[a.tgt], M.dims[a.src], M.field) for a in M.quiver.arrows}


def pullback_cocycle(cocycle: Mapping[str, Mat], f: RepMap) -> dict[str, Mat]:
    """Class of Ext^1(M, N) pulled back along f: X -> M."""
    q = f.source.quiver
    return {a.id: cocycle[a.id] @ f.comps[a.src] for a in q.arrows}


def pushforward_cocycle(g: RepMap, cocycle: Mapping[str, Mat]) -> dict[str, Mat]:
    """Class of Ext^1(M, N) pushed forward along g: N -> Y."""
    q = g.source.quiver
    return {a.id: g.comps[a.tgt] @ cocycle[a.id] for a in q.arrows}


def add_cocycles(c1: Mapping[str, Mat], c2: Mapping[str, Mat]) -> dict[str, Mat]:
    return {a: c1[a] + c2[a] for a in c1}


def extension_from_cocycle(M: Rep, N: Rep, cocycle: Mapping[str, Mat]) -> "ShortExact":
    """0 -> N -> E -> M -> 0 for a cocycle in Ext^1(M, N)."""
    from .linalg import block_matrix
    q, f = M.quiver, M.field
    dims = {v: N.dims[v] + M.dims[v] for v in q.vertices}
    maps = {}
    for a in q.arrows:
        s, t = a.src, a.tgt
        maps[a.id] = block_matrix([[N.maps[a.id], cocycle[a.id]],
                                   [Mat.zeros(M.dims[t], N.dims[s], f), M.maps[a.id]]])
    E = Rep(q, dims, maps, f)
    inc = {v: Mat.identity(N.dims[v], f).vstack(Mat.zeros(M.dims[v], N.dims[v], f)) for v in q.vertices}
    prj = {v: Mat.zeros(M.dims[v], N.dims[v], f).hstack(Mat.identity(M.dims[v], f)) for v in q.vertices}
    return ShortExact(RepMap(N, E, inc), RepMap(E, M, prj))


# --- short exact sequences ------------------------------------------------


class ShortExact:
    """0 -> A -i-> B -p-> C -> 0, verified per vertex on construction."""

    def __init__(self, i: RepMap, p: RepMap, check: bool = True):
        self.i, self.p = i, p
        self.A, self.B, self.C = i.source, i.target, p.target
        if check:
            problem = self.exactness_problem()
            if problem:
                raise ValueError(problem)

    def exactness_problem(self) -> str | None:
        if self.p.source.dims != self.B.dims:
            return "maps do not share the middle term"
        for v in self.B.quiver.vertices:
            iv, pv = self.i.comps[v], self.p.comps[v]
            if rank(iv) != iv.ncols:
                return f"i not injective at vertex {v}"
            if rank(pv) != pv.nrows:
                return f"p not surjective at vertex {v}"
            if not (pv @ iv).is_zero():
                return f"p i != 0 at vertex {v}"
            if iv.ncols + pv.nrows != self.B.dims[v]:
                return f"not exact in the middle at vertex {v}"
        return None

    def is_exact(self) -> bool:
        return self.exactness_problem() is None

    def is_split(self) -> bool:
        """Whether p has a section."""
        H = HomSpace(self.C, self.B)
        target = identity_map(self.C).vec()
        vecs = [(self.p @ s).vec() for s in H.basis]
        return express(vecs, target, self.C.field) is not None

    def __repr__(self):
        return f"0 -> {self.A!r} -> {self.B!r} -> {self.C!r} -> 0"


# --- sub/quotients, kernels, sums --------------------------------------------


def subrep(M: Rep, bases: Mapping[int, Mat]) -> tuple[Rep, RepMap]:
    """The subrepresentation spanned by columns of bases[v]; with its inclusion."""
    q, f = M.quiver, M.field
    B = {v: bases.get(v, Mat.zeros(M.dims[v], 0, f)) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        x = solve(B[a.tgt], M.maps[a.id] @ B[a.src])
        if x is None:
            raise ValueError(f"subspace not stable under arrow {a.id}")
        maps[a.id] = x
    S = Rep(q, {v: B[v].ncols for v in q.vertices}, maps, f, check=False)
    return S, RepMap(S, M, B, check=False)


def quotient(M: Rep, bases: Mapping[int, Mat]) -> tuple[Rep, RepMap]:
    """M modulo the stable subspace spanned by columns of bases[v]; with the projection."""
    q, f = M.quiver, M.field
    proj, lift = {}, {}
    for v in q.vertices:
        B = bases.get(v, Mat.zeros(M.dims[v], 0, f))
        from .linalg import column_space_basis
        B = column_space_basis(B) if B.ncols else B
        E = complement_columns(B)
        S = B.hstack(E)
        Sinv = inverse(S) if S.nrows else S
        k = B.ncols
        proj[v] = Sinv.submatrix(range(k, S.nrows), range(S.nrows)) if S.nrows else Mat.zeros(0, 0, f)
        lift[v] = E
    maps = {a.id: proj[a.tgt] @ M.maps[a.id] @ lift[a.src] for a in q.arrows}
    Q = Rep(q, {v: lift[v].ncols for v in q.vertices}, maps, f, check=False)
    return Q, RepMap(M, Q, proj, check=False)


def kernel(fm: RepMap) -> tuple[Rep, RepMap]:
    return subrep(fm.source, {v: kernel_basis(m) for v, m in fm.comps.items()})


def image(fm: RepMap) -> tuple[Rep, RepMap]:
    from .linalg import column_space_basis
    return subrep(fm.target, {v: column_space_basis(m) for v, m in fm.comps.items()})


def cokernel(fm: RepMap) -> tuple[Rep, RepMap]:
    return quotient(fm.target, fm.comps)


def direct_sum(reps: Sequence[Rep], q: Quiver | None = None, field: Field | None = None) -> tuple[Rep, list[RepMap], list[RepMap]]:
    """Direct sum with its injections and projections."""
    from .linalg import block_diag
    if not reps:
        if q is None:
            raise ValueError("empty direct sum needs a quiver")
        Z = zero_rep(q, field)
        return Z, [], []
    q, f = reps[0].quiver, reps[0].field
    dims = {v: sum(R.dims[v] for R in reps) for v in q.vertices}
    maps = {a.id: block_diag([R.maps[a.id] for R in reps]) for a in q.arrows}
    # block_diag of empty-dimension pieces keeps shapes right
    for a in q.arrows:
        m = maps[a.id]
        if m.shape != (dims[a.tgt], dims[a.src]):
            maps[a.id] = Mat.zeros(dims[a.tgt], dims[a.src], f)
    S = Rep(q, dims, maps, f, check=False)
    incs, prjs = [], []
    off = {v: 0 for v in q.vertices}
    for R in reps:
        inc, prj = {}, {}
        for v in q.vertices:
            d, o = R.dims[v], off[v]
            inc[v] = Mat._raw([[int(i == j + o) for j in range(d)] for i in range(dims[v])], d, f)
            prj[v] = Mat._raw([[int(j == i + o) for j in range(dims[v])] for i in range(d)], dims[v], f)
            off[v] += d
        incs.append(RepMap(R, S, inc, check=False))
        prjs.append(RepMap(S, R, prj, check=False))
    return S, incs, prjs


def sum_of(reps: Sequence[Rep], q: Quiver | None = None) -> Rep:
    return direct_sum(reps, q)[0]


def map_between_sums(blocks: Sequence[Sequence[RepMap | None]], sources: Sequence[Rep],
                     targets: Sequence[Rep]) -> tuple[Rep, Rep, RepMap]:
    """The map (+sources) -> (+targets) with blocks[t][s]: sources[s] -> targets[t]."""
    S, s_inc, s_prj = direct_sum(sources, targets[0].quiver if targets else None)
    T, t_inc, t_prj = direct_sum(targets, sources[0].quiver if sources else None)
    comps = {v: Mat.zeros(T.dims[v], S.dims[v], S.field) for v in S.quiver.vertices}
    total = RepMap(S, T, comps, check=False)
    for ti, row in enumerate(blocks):
        for si, b in enumerate(row):
            if b is not None:
                total = total + t_inc[ti] @ b @ s_prj[si]
    return S, T, total


# --- duality ---------------------------------------------------------------


def dualize(M: Rep, qop: Quiver | None = None) -> Rep:
    """D M as a representation of the opposite quiver."""
    qop = qop or opposite(M.quiver)
    return Rep(qop, M.dims, {a: m.T for a, m in M.maps.items()}, M.field,
               None if M.name is None else f"D{M.name}", check=False)


def dualize_map(fm: RepMap, DM: Rep, DN: Rep) -> RepMap:
    """D f: D N -> D M for f: M -> N."""
    return RepMap(DN, DM, {v: m.T for v, m in fm.comps.items()}, check=False)
