"""Translation quivers, mesh ideals and path normal forms, DOT export."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .linalg import Field, Reducer, default_field
from .quiver import Quiver, opposite

Key = tuple[int, int]
Path = tuple[str, ...]


@dataclass(frozen=True)
class TArrow:
    id: str
    src: Key
    tgt: Key


class TranslationQuiver:
    """A translation quiver on vertices (orbit, level).

    `tau[x]` is τx; `sigma[a]` is the arrow τx -> y for an arrow a: y -> x.
    """

    def __init__(self, vertices: Iterable[Key], arrows: Iterable[TArrow], tau: Mapping[Key, Key],
                 sigma: Mapping[str, str], kind: str = "ZQ", dims: Mapping[Key, dict] | None = None):
        self.vertices = sorted(set(vertices), key=lambda k: (k[1], k[0]))
        self.kind = kind
        vs = set(self.vertices)
        self.arrows = sorted((a for a in arrows if a.src in vs and a.tgt in vs), key=lambda a: a.id)
        self.by_id = {a.id: a for a in self.arrows}
        self.tau = {x: t for x, t in tau.items() if x in vs and t in vs}
        self.sigma = {a: s for a, s in sigma.items() if a in self.by_id and s in self.by_id}
        self.sigma_inv = {s: a for a, s in self.sigma.items()}
        self.dims = dict(dims or {})
        self._out: dict = {}
        self._in: dict = {}
        for a in self.arrows:
            self._out.setdefault(a.src, []).append(a)
            self._in.setdefault(a.tgt, []).append(a)

    def arrows_from(self, x: Key) -> list[TArrow]:
        return self._out.get(x, [])

    def arrows_to(self, x: Key) -> list[TArrow]:
        return self._in.get(x, [])

    def restrict(self, keep: Iterable[Key]) -> "TranslationQuiver":
        keep = set(keep)
        return TranslationQuiver([v for v in self.vertices if v in keep], self.arrows, self.tau,
                                 self.sigma, self.kind, {k: d for k, d in self.dims.items() if k in keep})

    # -- meshes

    def mesh_vertices(self) -> list[Key]:
        """Vertices x whose mesh τx -> · -> x lies completely inside."""
        out = []
        for x in self.vertices:
            if x not in self.tau:
                continue
            ins = self.arrows_to(x)
            outs = self.arrows_from(self.tau[x])
            if len(ins) == len(outs) and all(a.id in self.sigma for a in ins):
                out.append(x)
        return out

    def mesh(self, x: Key) -> dict[Path, int]:
        """m_x = sum over arrows a: y -> x of the path σa then a."""
        m: dict[Path, int] = {}
        for a in self.arrows_to(x):
            p = (self.sigma[a.id], a.id)
            m[p] = m.get(p, 0) + 1
        return m

    def paths(self, x: Key, length: int) -> list[Path]:
        out = [((), x)]
        for _ in range(length):
            out = [(p + (a.id,), a.tgt) for p, y in out for a in self.arrows_from(y)]
        return sorted(p for p, _ in out)

    def end(self, p: Path, start: Key) -> Key:
        x = start
        for a in p:
            arr = self.by_id[a]
            if arr.src != x:
                raise ValueError(f"broken path at {a}")
            x = arr.tgt
        return x

    def start(self, p: Path) -> Key:
        return self.by_id[p[0]].src

    # -- export

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": [list(v) for v in self.vertices],
            "arrows": [{"id": a.id, "src": list(a.src), "tgt": list(a.tgt)} for a in self.arrows],
            "tau": [[list(x), list(t)] for x, t in sorted(self.tau.items())],
            "sigma": dict(sorted(self.sigma.items())),
        }

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        ids = {v: f"v{v[0]}_{v[1]}".replace("-", "m") for v in self.vertices}
        for v in self.vertices:
            d = self.dims.get(v)
            label = f"{v[0]}:{v[1]}"
            if d is not None:
                label += " dim=(" + ",".join(f"{k}:{x}" for k, x in sorted(d.items())) + ")"
            lines.append(f'  {ids[v]} [label="{label}"];')
        for a in self.arrows:
            lines.append(f"  {ids[a.src]} -> {ids[a.tgt]};")
        for x, t in sorted(self.tau.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            lines.append(f"  {ids[x]} -> {ids[t]} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def component_dot(c, name: str = "G") -> str:
    """DOT of a knitted component: labels "orbit:level dim=(...)", τ dashed."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]

    def vid(k):
        return f"v{k[0]}_{k[1]}".replace("-", "m")
    for k in c.keys():
        d = c.rep(k).dim_vector()
        dims = ",".join(f"{v}:{x}" for v, x in sorted(d.items()))
        lines.append(f'  {vid(k)} [label="{k[0]}:{k[1]} dim=({dims})"];')
    for (s, t), m in sorted(c.arrows.items()):
        for _ in range(m):
            lines.append(f"  {vid(s)} -> {vid(t)};")
    for x, t in sorted(c.tau.items()):
        lines.append(f"  {vid(x)} -> {vid(t)} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _aid(kind: str, arrow: str, level: int) -> str:
    return f"{kind}[{arrow}]@{level}"


def build_znq(delta: Quiver, depth: int, kind: str = "ZQ", low: int = 0) -> TranslationQuiver:
    """Levels low..depth of the repetition of delta.

    For an arrow e: u -> u' of delta each level k carries a(e,k): (u,k) -> (u',k)
    and b(e,k): (u',k) -> (u,k+1); τ(v,k+1) = (v,k).
    """
    if kind not in ("ZQ", "MinusNQ"):
        raise ValueError("kind must be ZQ or MinusNQ")
    if not delta.is_acyclic():
        raise ValueError("delta must be acyclic")
    levels = range(low, depth + 1)
    vertices = [(v, k) for k in levels for v in delta.vertices]
    arrows, sigma = [], {}
    for k in levels:
        for e in delta.arrows:
            arrows.append(TArrow(_aid("a", e.id, k), (e.src, k), (e.tgt, k)))
            if k < depth:
                arrows.append(TArrow(_aid("b", e.id, k), (e.tgt, k), (e.src, k + 1)))
            if k > low:
                sigma[_aid("a", e.id, k)] = _aid("b", e.id, k - 1)
                sigma[_aid("b", e.id, k - 1)] = _aid("a", e.id, k - 1)
    tau = {(v, k): (v, k - 1) for k in levels if k > low for v in delta.vertices}
    return TranslationQuiver(vertices, arrows, tau, sigma, kind)


def from_component(c) -> TranslationQuiver:
    """The translation quiver of a knitted preprojective component."""
    if c.side != "pre":
        raise ValueError("only preprojective components are supported")
    delta = opposite(c.grid_quiver().finite())
    full = build_znq(delta, c.depth, "MinusNQ")
    tq = full.restrict(c.vertices)
    tq.tau = {x: t for x, t in c.tau.items() if x in c.vertices and t in c.vertices}
    tq.sigma = {a: s for a, s in tq.sigma.items()
                if tq.by_id[a].tgt in tq.tau}
    tq.sigma_inv = {s: a for a, s in tq.sigma.items()}
    tq.dims = {k: c.rep(k).dim_vector() for k in c.vertices}
    counts: dict = {}
    for a in tq.arrows:
        counts[(a.src, a.tgt)] = counts.get((a.src, a.tgt), 0) + 1
    if counts != dict(c.arrows):
        raise RuntimeError("component arrows disagree with the repetition quiver")
    return tq


# --- normal forms ------------------------------------------------------------


class MeshIdeal:
    """Degreewise elimination in the path category modulo the mesh relations."""

    def __init__(self, tq: TranslationQuiver, field: Field | None = None):
        self.tq = tq
        self.field = field or default_field()
        self.meshes = {x: tq.mesh(x) for x in tq.mesh_vertices()}
        self._cache: dict = {}

    def basis_paths(self, s: Key, t: Key, d: int) -> list[Path]:
        return [p for p in self.tq.paths(s, d) if self.tq.end(p, s) == t]

    def _space(self, s: Key, t: Key, d: int):
        key = (s, t, d)
        if key not in self._cache:
            paths = self.basis_paths(s, t, d)
            index = {p: i for i, p in enumerate(paths)}
            gens = []
            if d >= 2:
                for x, m in self.meshes.items():
                    tx = self.tq.tau[x]
                    for i in range(d - 1):
                        for u in self.tq.paths(s, i):
                            if self.tq.end(u, s) != tx:
                                continue
                            for w in self.tq.paths(x, d - 2 - i):
                                if self.tq.end(w, x) != t:
                                    continue
                                vec = {}
                                for mp, c in m.items():
                                    j = index[u + mp + w]
                                    vec[j] = vec.get(j, 0) + c
                                gens.append(vec)
            self._cache[key] = (paths, index, Reducer(gens, self.field))
        return self._cache[key]

    def quotient_dim(self, s: Key, t: Key, d: int) -> int:
        paths, _, red = self._space(s, t, d)
        return len(paths) - red.rank

    def normal_form(self, expr: Mapping[Path, object], start: Key | None = None, max_len: int = 8) -> dict:
        """Canonical representative of expr modulo the mesh ideal, keyed by path.

        Paths are grouped by (start, end, length); the empty path needs `start`.
        """
        f = self.field
        groups: dict = {}
        for p, c in expr.items():
            p = tuple(p)
            if len(p) > max_len:
                raise ValueError(f"path of length {len(p)} exceeds max_len {max_len}")
            s = self.tq.start(p) if p else start
            if s is None:
                raise ValueError("empty path needs a start vertex")
            groups.setdefault((s, self.tq.end(p, s), len(p)), {})[p] = f.coerce(c)
        out = {}
        for (s, t, d), terms in sorted(groups.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])):
            paths, index, red = self._space(s, t, d)
            vec = {}
            for p, c in terms.items():
                vec[index[p]] = f.reduce(vec.get(index[p], 0) + c)
            for j, c in sorted(red.reduce(vec).items()):
                out[paths[j]] = c
        return out

    def is_zero(self, expr: Mapping[Path, object], start: Key | None = None, max_len: int = 8) -> bool:
        return not self.normal_form(expr, start, max_len)


def normal_form(tq: TranslationQuiver, expr: Mapping[Path, object], max_len: int = 8,
                field: Field | None = None) -> dict:
    return MeshIdeal(tq, field).normal_form(expr, max_len=max_len)


def path_between(tq: TranslationQuiver, vertices: list[Key]) -> Path:
    """The arrow path through consecutive vertices (first arrow when parallel)."""
    out = []
    for x, y in zip(vertices, vertices[1:]):
        arr = [a for a in tq.arrows_from(x) if a.tgt == y]
        if not arr:
            raise ValueError(f"no arrow {x} -> {y}")
        out.append(arr[0].id)
    return tuple(out)


def is_sectional(tq: TranslationQuiver, vertices: list[Key]) -> bool:
    return all(tq.tau.get(vertices[i + 2]) != vertices[i] for i in range(len(vertices) - 2))


def sectional_nonzero(vertices: list[Key], tq: TranslationQuiver, ideal: MeshIdeal | None = None) -> bool:
    """Whether the path is sectional; a sectional path must not vanish modulo meshes.

    Raises RuntimeError when a sectional path reduces to zero.
    """
    ideal = ideal or MeshIdeal(tq)
    p = path_between(tq, vertices)
    sect = is_sectional(tq, vertices)
    nonzero = bool(ideal.normal_form({p: 1}, start=vertices[0], max_len=max(len(p), 1)))
    if sect and not nonzero:
        raise RuntimeError(f"sectional path {vertices} vanishes modulo the mesh ideal")
    return sect


def sectional_paths(tq: TranslationQuiver, max_len: int) -> list[list[Key]]:
    """All sectional vertex paths of length 1..max_len."""
    out = []
    stack = [[v] for v in tq.vertices]
    while stack:
        path = stack.pop()
        if len(path) > 1:
            out.append(path)
        if len(path) - 1 >= max_len:
            continue
        for y in sorted({a.tgt for a in tq.arrows_from(path[-1])}):
            if len(path) >= 2 and tq.tau.get(y) == path[-2]:
                continue
            stack.append(path + [y])
    return sorted(out)


# --- the relations ρ -----------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    kind: str
    terms: tuple[tuple[int, Path], ...]

    def to_dict(self) -> dict:
        return {"type": self.kind, "terms": [{"coeff": c, "path": list(p)} for c, p in self.terms]}


def rho_relations(tq: TranslationQuiver) -> list[Relation]:
    """(i) α σα − β σβ for arrows with a common end; (ii) α γ for γ ending at
    the start of α with γ ≠ σα; (iii) γ α for γ starting at the end of α with
    γ ≠ σ⁻¹α.  Relations needing σ outside the quiver are omitted.
    """
    if tq.kind != "ZQ":
        raise ValueError("ρ is defined on ZQ")
    rels = []
    for x in tq.vertices:
        ins = [a for a in tq.arrows_to(x) if a.id in tq.sigma]
        for i in range(len(ins)):
            for j in range(i + 1, len(ins)):
                a, b = ins[i], ins[j]
                rels.append(Relation("i", ((1, (tq.sigma[a.id], a.id)), (-1, (tq.sigma[b.id], b.id)))))
    for a in tq.arrows:
        if a.id in tq.sigma:
            for g in tq.arrows_to(a.src):
                if g.id != tq.sigma[a.id]:
                    rels.append(Relation("ii", ((1, (g.id, a.id)),)))
    for a in tq.arrows:
        if a.id in tq.sigma_inv:
            for g in tq.arrows_from(a.tgt):
                if g.id != tq.sigma_inv[a.id]:
                    rels.append(Relation("iii", ((1, (a.id, g.id)),)))
    return rels


def relations_document(tq: TranslationQuiver) -> dict:
    return {"quiver": tq.to_dict(), "relations": [r.to_dict() for r in rho_relations(tq)]}
