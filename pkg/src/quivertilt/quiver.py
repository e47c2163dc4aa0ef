"""Quivers, infinite locally finite families and their finite windows."""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .linalg import ZMat


class WindowTooSmall(Exception):
    """A computation touched the truncation boundary and cannot be certified."""


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    src: int
    tgt: int


def arrow_id(src: int, tgt: int, k: int = 0) -> str:
    return f"{src}>{tgt}" if k == 0 else f"{src}>{tgt}#{k}"


class Quiver:
    """A finite quiver.

    A quiver cut out of an infinite family remembers which of its vertices
    touch the rest of the family: `out_boundary` holds vertices with an
    arrow leaving the window, `in_boundary` those with an arrow entering it.
    Both are empty for a genuinely finite quiver.
    """

    def __init__(self, vertices: Iterable[int], arrows: Iterable[Arrow | tuple],
                 family: str | None = None, out_boundary: Iterable[int] = (),
                 in_boundary: Iterable[int] = (), name: str | None = None):
        self.vertices = tuple(sorted(set(int(v) for v in vertices)))
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), int(a[1]), int(a[2]))
            arrs.append(a)
        self.arrows = tuple(arrs)
        self.family = family
        self.name = name
        self.out_boundary = frozenset(out_boundary)
        self.in_boundary = frozenset(in_boundary)
        vset = set(self.vertices)
        self._vset = frozenset(vset)
        seen = set()
        for a in self.arrows:
            if a.src not in vset or a.tgt not in vset:
                raise ValueError(f"arrow {a.id} has an undeclared endpoint")
            if a.id in seen:
                raise ValueError(f"duplicate arrow id {a.id}")
            seen.add(a.id)
        if not (self.out_boundary | self.in_boundary) <= vset:
            raise ValueError("boundary vertices must be declared")
        self._by_id = {a.id: a for a in self.arrows}
        self._out = defaultdict(list)
        self._in = defaultdict(list)
        for a in self.arrows:
            self._out[a.src].append(a)
            self._in[a.tgt].append(a)
        self._paths_cache: dict[int, dict[int, list[tuple]]] = {}

    # -- basic queries

    def __repr__(self):
        label = self.name or self.family or "Quiver"
        return f"<{label}: {len(self.vertices)} vertices, {len(self.arrows)} arrows>"

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and sorted(self.arrows) == sorted(other.arrows)
                and self.out_boundary == other.out_boundary and self.in_boundary == other.in_boundary)

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.arrows))))

    def __contains__(self, v) -> bool:
        return v in self._vset

    def arrow(self, aid: str) -> Arrow:
        return self._by_id[aid]

    def arrows_from(self, v: int) -> list[Arrow]:
        return list(self._out.get(v, ()))

    def arrows_to(self, v: int) -> list[Arrow]:
        return list(self._in.get(v, ()))

    def num_arrows(self, v: int, w: int) -> int:
        return sum(1 for a in self._out.get(v, ()) if a.tgt == w)

    @property
    def is_truncation(self) -> bool:
        return bool(self.out_boundary or self.in_boundary)

    @property
    def boundary(self) -> frozenset:
        return self.out_boundary | self.in_boundary

    def finite(self) -> "Quiver":
        """The same quiver viewed as finite, forgetting the ambient family."""
        return Quiver(self.vertices, self.arrows, name=self.name)

    def opposite(self) -> "Quiver":
        return opposite(self)

    def undirected_neighbors(self, v: int) -> list[int]:
        return sorted({a.tgt for a in self._out.get(v, ())} | {a.src for a in self._in.get(v, ())})

    def components(self) -> list[list[int]]:
        seen, comps = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, queue = [], deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self.undirected_neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_acyclic(self) -> bool:
        indeg = {v: len(self._in.get(v, ())) for v in self.vertices}
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        count = 0
        while queue:
            u = queue.popleft()
            count += 1
            for a in self._out.get(u, ()):
                indeg[a.tgt] -= 1
                if indeg[a.tgt] == 0:
                    queue.append(a.tgt)
        return count == len(self.vertices)

    def full_subquiver(self, vertices: Iterable[int]) -> "Quiver":
        vs = set(vertices)
        return Quiver(vs, [a for a in self.arrows if a.src in vs and a.tgt in vs], name=self.name)

    # -- paths

    def paths_from(self, v: int) -> dict[int, list[tuple]]:
        """All paths starting at v, grouped by endpoint, as tuples of arrow ids."""
        if v not in self._paths_cache:
            out: dict[int, list[tuple]] = defaultdict(list)
            stack = [(v, ())]
            limit = 10 ** 6
            while stack:
                u, p = stack.pop()
                out[u].append(p)
                if len(p) > len(self.vertices):
                    raise ValueError("quiver has an oriented cycle; paths are unbounded")
                limit -= 1
                if limit < 0:
                    raise ValueError("too many paths")
                for a in self._out.get(u, ()):
                    stack.append((a.tgt, p + (a.id,)))
            self._paths_cache[v] = {w: sorted(ps) for w, ps in out.items()}
        return self._paths_cache[v]

    def paths(self, v: int, w: int) -> list[tuple]:
        return list(self.paths_from(v).get(w, []))

    def path_count_matrix(self) -> list[list[int]]:
        return [[len(self.paths(v, w)) for w in self.vertices] for v in self.vertices]

    # -- serialization

    def to_dict(self) -> dict:
        d = {"vertices": list(self.vertices),
             "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in self.arrows]}
        if self.family is not None:
            d["family"] = self.family
        if self.out_boundary:
            d["out_boundary"] = sorted(self.out_boundary)
        if self.in_boundary:
            d["in_boundary"] = sorted(self.in_boundary)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Quiver":
        if not isinstance(d, dict) or "vertices" not in d or "arrows" not in d:
            raise ValueError("quiver JSON needs 'vertices' and 'arrows'")
        arrows = []
        for a in d["arrows"]:
            try:
                arrows.append(Arrow(str(a["id"]), int(a["src"]), int(a["tgt"])))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"bad arrow entry {a!r}") from exc
        return cls(d["vertices"], arrows, family=d.get("family"),
                   out_boundary=d.get("out_boundary", ()), in_boundary=d.get("in_boundary", ()))

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        return cls.from_dict(json.loads(text))


def quiver(n_or_vertices, edges: Sequence[tuple[int, int]]) -> Quiver:
    """Convenience constructor from (src, tgt) pairs; parallel arrows get distinct ids."""
    vertices = range(n_or_vertices) if isinstance(n_or_vertices, int) else n_or_vertices
    count: dict = defaultdict(int)
    arrows = []
    for s, t in edges:
        arrows.append(Arrow(arrow_id(s, t, count[(s, t)]), s, t))
        count[(s, t)] += 1
    return Quiver(vertices, arrows)


def opposite(q: Quiver) -> Quiver:
    op = getattr(q, "_op", None)
    if op is None:
        op = Quiver(q.vertices, [Arrow(a.id, a.tgt, a.src) for a in q.arrows],
                    family=None if q.family is None else f"{q.family}^op",
                    out_boundary=q.in_boundary, in_boundary=q.out_boundary, name=q.name)
        q._op = op
        op._op = q
    return op


def euler_matrix(q: Quiver) -> ZMat:
    """E[v][w] = delta_vw - #(arrows v -> w), vertices in sorted order."""
    vs = q.vertices
    return ZMat([[int(v == w) - q.num_arrows(v, w) for w in vs] for v in vs], len(vs))


def euler_form(q: Quiver, d: dict, e: dict) -> int:
    total = sum(d.get(v, 0) * e.get(v, 0) for v in q.vertices)
    return total - sum(d.get(a.src, 0) * e.get(a.tgt, 0) for a in q.arrows)


# --- infinite families --------------------------------------------------------


class InfiniteFamily:
    """A locally finite infinite quiver given by a local generator.

    `incident(v)` returns every arrow of the infinite quiver touching v and
    `contains(v)` decides vertex membership.
    """

    def __init__(self, kind: str, incident: Callable[[int], list[Arrow]],
                 contains: Callable[[int], bool], name: str | None = None):
        self.kind = kind
        self.incident = incident
        self.contains = contains
        self.name = name or kind

    def __repr__(self):
        return f"InfiniteFamily({self.name})"

    @property
    def is_infinite_dynkin(self) -> bool:
        return self.kind in ("AInf", "AInfInf", "DInf")

    def full_subquiver(self, vertices: Iterable[int]) -> Quiver:
        vs = {v for v in vertices if self.contains(v)}
        arrows, out_b, in_b = {}, set(), set()
        for v in vs:
            for a in self.incident(v):
                if a.src in vs and a.tgt in vs:
                    arrows[a.id] = a
                elif a.src == v:
                    out_b.add(v)
                else:
                    in_b.add(v)
        return Quiver(vs, sorted(arrows.values()), family=self.name,
                      out_boundary=out_b, in_boundary=in_b, name=self.name)


def _a_inf_incident(v: int) -> list[Arrow]:
    out = []
    for w in (v - 1, v + 1):
        if w < 0:
            continue
        s, t = (v, w) if v % 2 else (w, v)
        out.append(Arrow(arrow_id(s, t), s, t))
    return out


def _a_infinf_incident(v: int) -> list[Arrow]:
    out = []
    for w in (v - 1, v + 1):
        s, t = (v, w) if v % 2 else (w, v)
        out.append(Arrow(arrow_id(s, t), s, t))
    return out


def _d_inf_edges(v: int) -> list[tuple[int, int]]:
    if v in (0, 1):
        return [(2, v)]
    edges = []
    if v == 2:
        edges += [(2, 0), (2, 1)]
    for w in (v - 1, v + 1):
        if w < 2:
            continue
        edges.append((v, w) if v % 2 == 0 else (w, v))
    return edges


def _d_inf_incident(v: int) -> list[Arrow]:
    return [Arrow(arrow_id(s, t), s, t) for s, t in _d_inf_edges(v)]


A_INF = InfiniteFamily("AInf", _a_inf_incident, lambda v: v >= 0, "AInf")
A_INFINF = InfiniteFamily("AInfInf", _a_infinf_incident, lambda v: True, "AInfInf")
D_INF = InfiniteFamily("DInf", _d_inf_incident, lambda v: v >= 0, "DInf")

FAMILIES = {"AInf": A_INF, "AInfInf": A_INFINF, "DInf": D_INF}


def comb_family() -> InfiniteFamily:
    """Infinite comb: spine 0-2-4-..., a tooth 2k+1 hanging at each 2k.

    Bipartite sink/source orientation, so every projective is finite.
    Not a Dynkin family: any window containing two teeth pairs is Euclidean
    or wild.
    """

    def colour(v: int) -> int:
        return (v // 2) % 2 if v % 2 == 0 else (v // 2 + 1) % 2

    def edges(v: int) -> list[tuple[int, int]]:
        if v % 2 == 1:
            nbrs = [v - 1]
        else:
            nbrs = [v + 1] + [w for w in (v - 2, v + 2) if w >= 0]
        return [(v, w) if colour(v) else (w, v) for w in nbrs]

    def incident(v: int) -> list[Arrow]:
        return [Arrow(arrow_id(s, t), s, t) for s, t in edges(v)]

    return InfiniteFamily("CustomGenerator", incident, lambda v: v >= 0, "Comb")


def truncate(f: InfiniteFamily, window: tuple[int, int]) -> Quiver:
    lo, hi = window
    if hi < lo:
        raise ValueError("empty window")
    q = f.full_subquiver(range(lo, hi + 1))
    if not q.vertices:
        raise ValueError("empty window")
    return q


# --- classification -----------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    name: str
    is_dynkin: bool

    def __str__(self):
        return self.name


def classify(q: Quiver) -> Classification:
    """Dynkin/Euclidean/wild type of the underlying graph of a connected quiver."""
    if not q.vertices:
        raise ValueError("empty quiver")
    if not q.is_connected():
        raise ValueError("classify needs a connected quiver")
    n = len(q.vertices)
    edges = defaultdict(int)
    for a in q.arrows:
        if a.src == a.tgt:
            return Classification("wild", False)
        edges[frozenset((a.src, a.tgt))] += 1
    multi = [e for e, k in edges.items() if k > 1]
    if multi:
        if n == 2 and len(q.arrows) == 2:
            return Classification("Euclidean(A~1)", False)
        return Classification("wild", False)
    m = len(edges)
    deg = {v: len(q.undirected_neighbors(v)) for v in q.vertices}
    if m == n:
        if all(d == 2 for d in deg.values()):
            return Classification(f"Euclidean(A~{n - 1})", False)
        return Classification("wild", False)
    if m > n:
        return Classification("wild", False)
    # tree
    branch = [v for v, d in deg.items() if d >= 3]
    if not branch:
        return Classification(f"A{n}", True)
    if len(branch) == 1 and deg[branch[0]] == 3:
        c = branch[0]
        raw = [_arm_length(q, c, w) for w in q.undirected_neighbors(c)]
        if all(x is not None for x in raw):
            arms = sorted(raw)
            p, r, s = arms
            if (p, r) == (1, 1):
                return Classification(f"D{n}", True)
            if (p, r) == (1, 2) and s in (2, 3, 4):
                return Classification(f"E{n}", True)
            if arms in ([2, 2, 2], [1, 3, 3], [1, 2, 5]):
                return Classification(f"Euclidean(E~{n - 1})", False)
        return Classification("wild", False)
    if len(branch) == 1 and deg[branch[0]] == 4 and n == 5:
        return Classification("Euclidean(D~4)", False)
    if len(branch) == 2 and all(deg[b] == 3 for b in branch):
        # D~_n: both branch vertices carry two leaves, joined by a path
        leaves = [sum(1 for w in q.undirected_neighbors(b) if deg[w] == 1) for b in branch]
        if leaves == [2, 2]:
            return Classification(f"Euclidean(D~{n - 1})", False)
    return Classification("wild", False)


def _arm_length(q: Quiver, centre: int, start: int) -> int | None:
    prev, cur, length = centre, start, 1
    while True:
        nbrs = [w for w in q.undirected_neighbors(cur) if w != prev]
        if not nbrs:
            return length
        if len(nbrs) > 1:
            return None
        prev, cur, length = cur, nbrs[0], length + 1


def extend_to_non_dynkin(f: InfiniteFamily, sub: Quiver, max_rounds: int = 64) -> Quiver:
    """Grow `sub` inside `f` to a finite connected non-Dynkin full subquiver."""
    if f.is_infinite_dynkin:
        raise ValueError(f"{f.name} is an infinite Dynkin quiver; every finite subquiver is Dynkin")
    current = f.full_subquiver(sub.vertices)
    if not current.is_connected():
        raise ValueError("sub must be connected")
    shape = classify(current)
    if not shape.is_dynkin:
        return current
    verts = set(sub.vertices)
    for _ in range(max_rounds):
        frontier = sorted({w for v in verts for a in f.incident(v) for w in (a.src, a.tgt)} - verts)
        if not frontier:
            break
        # add neighbours one at a time so the result stays small
        for w in frontier:
            verts.add(w)
            current = f.full_subquiver(verts)
            if not classify(current).is_dynkin:
                return current
    raise ValueError("no non-Dynkin extension found within the search bound")
