"""Standard modules, projective covers and presentations, decomposition, isomorphism."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .linalg import (Field, Mat, column_space_basis, complement_columns, default_field, express,
                     inverse, kernel_basis, nullspace_sparse, rank)
from .quiver import Quiver, WindowTooSmall, opposite
from .rep import (HomSpace, Rep, RepMap, direct_sum, dualize, dualize_map, identity_map, kernel,
                  subrep)


class DecompositionError(Exception):
    """End(M)/rad does not split over the working field."""


# --- standard modules --------------------------------------------------------


def _certify(q: Quiver, support, boundary, what: str):
    bad = sorted(set(support) & boundary)
    if bad:
        raise WindowTooSmall(f"{what} reaches the window boundary at {bad}")


def projective(q: Quiver, v: int, field: Field | None = None, certify: bool = True) -> Rep:
    """P(v): basis at w is the set of paths v -> w."""
    if v not in q:
        raise ValueError(f"unknown vertex {v}")
    field = field or default_field()
    paths = q.paths_from(v)
    if certify:
        _certify(q, paths.keys(), q.out_boundary, f"P({v})")
    index = {w: {p: i for i, p in enumerate(ps)} for w, ps in paths.items()}
    dims = {w: len(ps) for w, ps in paths.items()}
    maps = {}
    for a in q.arrows:
        src = paths.get(a.src, [])
        if not src:
            continue
        rows = [[0] * len(src) for _ in range(dims.get(a.tgt, 0))]
        for j, p in enumerate(src):
            rows[index[a.tgt][p + (a.id,)]][j] = 1
        maps[a.id] = Mat._raw(rows, len(src), field)
    return Rep(q, dims, maps, field, f"P({v})", labels=paths, check=False)


def injective(q: Quiver, v: int, field: Field | None = None, certify: bool = True) -> Rep:
    """I(v): basis at w is the set of paths w -> v."""
    if v not in q:
        raise ValueError(f"unknown vertex {v}")
    field = field or default_field()
    qop = opposite(q)
    paths = {w: sorted(tuple(reversed(p)) for p in ps) for w, ps in qop.paths_from(v).items()}
    if certify:
        _certify(q, paths.keys(), q.in_boundary, f"I({v})")
    index = {w: {p: i for i, p in enumerate(ps)} for w, ps in paths.items()}
    dims = {w: len(ps) for w, ps in paths.items()}
    maps = {}
    for a in q.arrows:
        src = paths.get(a.src, [])
        if not src:
            continue
        rows = [[0] * len(src) for _ in range(dims.get(a.tgt, 0))]
        for j, r in enumerate(src):
            if r and r[0] == a.id:
                rows[index[a.tgt][r[1:]]][j] = 1
        maps[a.id] = Mat._raw(rows, len(src), field)
    return Rep(q, dims, maps, field, f"I({v})", labels=paths, check=False)


def simple(q: Quiver, v: int, field: Field | None = None) -> Rep:
    if v not in q:
        raise ValueError(f"unknown vertex {v}")
    return Rep(q, {v: 1}, {}, field or default_field(), f"S({v})")


def standard_module(q: Quiver, kind: str, v: int, field: Field | None = None, certify: bool = True) -> Rep:
    if kind == "simple":
        return simple(q, v, field)
    if kind == "projective":
        return projective(q, v, field, certify)
    if kind == "injective":
        return injective(q, v, field, certify)
    raise ValueError(f"unknown kind {kind!r}")


def projective_certified(q: Quiver, v: int) -> bool:
    return not (set(q.paths_from(v)) & q.out_boundary)


def injective_certified(q: Quiver, v: int) -> bool:
    return not (set(opposite(q).paths_from(v)) & q.in_boundary)


# --- sums of projectives -------------------------------------------------------


class ProjectiveSum:
    """A direct sum of indecomposable projectives P(tops[0]) + P(tops[1]) + ..."""

    def __init__(self, q: Quiver, tops: Sequence[int], field: Field, certify: bool = True):
        self.quiver = q
        self.tops = list(tops)
        self.parts = [projective(q, v, field, certify) for v in self.tops]
        self.module, self.incs, self.prjs = direct_sum(self.parts, q, field)
        self.field = field

    def generator_index(self, k: int) -> int:
        """Position of the generator of summand k inside module at its top vertex."""
        v = self.tops[k]
        return sum(self.parts[j].dims[v] for j in range(k))

    def map_to(self, M: Rep, images: Sequence[Sequence]) -> RepMap:
        """The map sending generator k to the vector images[k] of M at tops[k]."""
        q, f = self.quiver, self.field
        comps = {}
        for w in q.vertices:
            cols = []
            for k, v in enumerate(self.tops):
                x = Mat._raw([[c] for c in images[k]], 1, f) if M.dims[v] else Mat.zeros(0, 1, f)
                for p in self.parts[k].labels.get(w, []):
                    cols.append((M.path_map(p, v) @ x).column(0) if M.dims[w] else [])
            comps[w] = Mat.from_columns(cols, M.dims[w], f) if cols else Mat.zeros(M.dims[w], 0, f)
        return RepMap(self.module, M, comps, check=False)

    def path_coefficients(self, fm: RepMap, k: int, other: "ProjectiveSum") -> dict[int, dict[tuple, object]]:
        """For fm: self -> other, the image of generator k as {summand: {path: coeff}}."""
        v = self.tops[k]
        col = fm.comps[v].column(self.generator_index(k))
        out, pos = {}, 0
        for j, part in enumerate(other.parts):
            paths = part.labels.get(v, [])
            coeffs = {p: col[pos + i] for i, p in enumerate(paths) if col[pos + i] != 0}
            if coeffs:
                out[j] = coeffs
            pos += len(paths)
        return out


def top_generators(M: Rep) -> dict[int, list[list]]:
    """Vectors at each vertex spanning a complement of the radical."""
    q, f = M.quiver, M.field
    gens = {}
    for v in q.vertices:
        if not M.dims[v]:
            continue
        ins = [M.maps[a.id] for a in q.arrows_to(v) if M.dims[a.src]]
        if ins:
            R = ins[0]
            for m in ins[1:]:
                R = R.hstack(m)
            R = column_space_basis(R)
        else:
            R = Mat.zeros(M.dims[v], 0, f)
        E = complement_columns(R)
        if E.ncols:
            gens[v] = E.columns()
    return gens


def projective_cover(M: Rep, certify: bool = True) -> tuple[ProjectiveSum, RepMap]:
    gens = top_generators(M)
    tops, images = [], []
    for v in sorted(gens):
        for x in gens[v]:
            tops.append(v)
            images.append(x)
    P = ProjectiveSum(M.quiver, tops, M.field, certify)
    return P, P.map_to(M, images)


class Presentation:
    """Minimal projective presentation P1 -d-> P0 -pi-> M -> 0."""

    def __init__(self, P1: ProjectiveSum, P0: ProjectiveSum, d: RepMap, pi: RepMap):
        self.P1, self.P0, self.d, self.pi = P1, P0, d, pi


def min_proj_presentation(M: Rep, certify: bool = True) -> Presentation:
    P0, pi = projective_cover(M, certify)
    K, inc = kernel(pi)
    P1, pi1 = projective_cover(K, certify)
    if P1.module.total_dim != K.total_dim:
        raise RuntimeError("syzygy is not projective; quiver is not hereditary here")
    return Presentation(P1, P0, inc @ pi1, pi)


def is_projective(M: Rep) -> bool:
    """Projective in the ambient (possibly infinite) quiver."""
    gens = top_generators(M)
    q = M.quiver
    total = 0
    for v, xs in gens.items():
        if not projective_certified(q, v):
            return False
        total += len(xs) * sum(len(ps) for ps in q.paths_from(v).values())
    return total == M.total_dim


def is_injective(M: Rep) -> bool:
    return is_projective(dualize(M))


def has_projective_summand(M: Rep) -> bool:
    q = M.quiver
    for u in M.support:
        if projective_certified(q, u) and HomSpace(M, projective(q, u, M.field, False)).dim:
            return True
    return False


def has_injective_summand(M: Rep) -> bool:
    return has_projective_summand(dualize(M))


def projective_dimension(M: Rep, bound: int = 8) -> int:
    if M.is_zero():
        return 0
    X = M
    for n in range(bound + 1):
        P, pi = projective_cover(X, certify=False)
        if P.module.total_dim == X.total_dim:
            return n
        X, _ = kernel(pi)
    raise RuntimeError("projective resolution did not terminate")


def homological_dims(M: Rep) -> tuple[int, int]:
    return projective_dimension(M), projective_dimension(dualize(M))


# --- endomorphisms and decomposition ----------------------------------------------


def _total_matrix(fm: RepMap) -> Mat:
    from .linalg import block_diag
    return block_diag([fm.comps[v] for v in fm.source.quiver.vertices if fm.source.dims[v]])


def end_radical(M: Rep, H: HomSpace | None = None) -> tuple[HomSpace, list[list]]:
    """Basis of rad End(M), as coordinate vectors in the basis of H = End(M).

    Uses the trace form: in characteristic 0 (or p > dim M) the radical is
    exactly its kernel.
    """
    H = H or HomSpace(M, M)
    p = M.field.characteristic
    if p and p <= M.total_dim:
        raise DecompositionError(f"trace-form radical needs characteristic > {M.total_dim}, got {p}")
    k = H.dim
    mats = [[H.basis[i].comps[v] for v in M.quiver.vertices if M.dims[v]] for i in range(k)]
    red = M.field.reduce
    gram = []
    for i in range(k):
        row = {}
        for j in range(k):
            t = red(sum((a @ b).trace() for a, b in zip(mats[i], mats[j])))
            if t != 0:
                row[j] = t
        gram.append(row)
    vecs, _ = nullspace_sparse(gram, k, M.field)
    return H, [[v.get(i, 0) for i in range(k)] for v in vecs]


def is_indecomposable(M: Rep) -> bool:
    if M.is_zero():
        return False
    H = HomSpace(M, M)
    if H.dim == 1:
        return True
    _, rad = end_radical(M, H)
    return H.dim - len(rad) == 1


def _min_poly(X: Mat) -> list:
    """Monic minimal polynomial, coefficients low degree first."""
    f = X.field
    n = X.nrows
    powers = []
    P = Mat.identity(n, f)
    for k in range(n + 1):
        vec = {(i, j): x for i, r in enumerate(P.rows) for j, x in enumerate(r) if x != 0}
        if powers:
            c = express(powers, vec, f)
            if c is not None:
                return [f.reduce(-x) for x in c] + [1]
        elif not vec:
            return [1]
        powers.append(vec)
        P = P @ X
    raise RuntimeError("minimal polynomial degree exceeded n")


def _factor(coeffs: list, field: Field) -> list[tuple[list, int]]:
    import sympy
    t = sympy.Symbol("t")
    if field.characteristic:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], t, modulus=field.characteristic)
    else:
        poly = sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                           for c in reversed(coeffs)], t, domain=sympy.QQ)
    _, factors = poly.factor_list()
    out = []
    for g, e in factors:
        h = (g ** e)
        cs = h.all_coeffs()
        if field.characteristic:
            vals = [int(c) % field.characteristic for c in reversed(cs)]
        else:
            vals = [field.coerce(Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)))
                    for c in reversed(cs)]
        out.append((vals, e))
    return out


def _poly_eval(coeffs: list, X: Mat) -> Mat:
    f = X.field
    n = X.nrows
    R = Mat.zeros(n, n, f)
    for c in reversed(coeffs):
        R = R @ X + Mat.identity(n, f).scale(c)
    return R


def _split_by(M: Rep, x: RepMap) -> list[tuple[Rep, RepMap, RepMap]] | None:
    X = _total_matrix(x)
    if X.nrows == 0:
        return None
    factors = _factor(_min_poly(X), M.field)
    if len(factors) < 2:
        return None
    q, f = M.quiver, M.field
    pieces = []
    for coeffs, _ in factors:
        bases = {v: kernel_basis(_poly_eval(coeffs, x.comps[v])) if M.dims[v] else Mat.zeros(0, 0, f)
                 for v in q.vertices}
        pieces.append(bases)
    proj_rows = {}
    for v in q.vertices:
        if not M.dims[v]:
            proj_rows[v] = [Mat.zeros(0, 0, f) for _ in pieces]
            continue
        S = pieces[0][v]
        for b in pieces[1:]:
            S = S.hstack(b[v])
        Sinv = inverse(S)
        blocks, o = [], 0
        for b in pieces:
            k = b[v].ncols
            blocks.append(Sinv.submatrix(range(o, o + k), range(S.nrows)))
            o += k
        proj_rows[v] = blocks
    out = []
    for idx, bases in enumerate(pieces):
        bases = {v: bases[v] if M.dims[v] else Mat.zeros(0, 0, f) for v in q.vertices}
        S, inc = subrep(M, bases)
        prj = RepMap(M, S, {v: proj_rows[v][idx] if M.dims[v] else Mat.zeros(0, 0, f)
                            for v in q.vertices}, check=False)
        out.append((S, inc, prj))
    return out


def decompose_with_maps(M: Rep, seed: int = 0, tries: int = 40) -> list[tuple[Rep, RepMap, RepMap]]:
    """Indecomposable summands with inclusions into and projections from M."""
    if M.is_zero():
        return []
    rng = random.Random(seed)
    done = []
    stack = [(M, identity_map(M), identity_map(M))]
    while stack:
        X, inc, prj = stack.pop()
        H = HomSpace(X, X)
        if H.dim == 1:
            done.append((X, inc, prj))
            continue
        _, rad = end_radical(X, H)
        if H.dim - len(rad) == 1:
            done.append((X, inc, prj))
            continue
        split = None
        candidates = list(H.basis)
        for _ in range(tries):
            candidates.append(H.element([rng.randint(-3, 3) for _ in range(H.dim)]))
        for x in candidates:
            split = _split_by(X, x)
            if split:
                break
        if not split:
            raise DecompositionError(
                f"End/rad of a summand of dimension {X.dimvec_tuple()} is not split over {X.field}")
        for S, i, p in split:
            stack.append((S, inc @ i, p @ prj))
    done.sort(key=lambda t: (t[0].dimvec_tuple(), t[0].total_dim))
    return done


def decompose(M: Rep) -> list[Rep]:
    return [S for S, _, _ in decompose_with_maps(M)]


def _indec_iso(A: Rep, B: Rep) -> bool:
    if A.dims != B.dims:
        return False
    H1, H2 = HomSpace(A, B), HomSpace(B, A)
    for f in H1.basis:
        for g in H2.basis:
            if (g @ f).is_iso():
                return True
    return False


def find_isomorphism(M: Rep, N: Rep, tries: int = 6, seed: int = 1) -> RepMap | None:
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return RepMap(M, N, {}, check=False)
    H = HomSpace(M, N)
    if H.dim == 0:
        return None
    rng = random.Random(seed)
    cands = list(H.basis[:4])
    cands += [H.element([rng.randint(-5, 5) for _ in range(H.dim)]) for _ in range(tries)]
    for f in cands:
        if f.is_iso():
            return f
    return None


def is_isomorphic(M: Rep, N: Rep) -> bool:
    if M.dims != N.dims:
        return False
    if find_isomorphism(M, N) is not None:
        return True
    ms, ns = decompose(M), decompose(N)
    if len(ms) != len(ns):
        return False
    used = [False] * len(ns)
    for A in ms:
        for k, B in enumerate(ns):
            if not used[k] and _indec_iso(A, B):
                used[k] = True
                break
        else:
            return False
    return True


def iso_index(M: Rep, reps: Sequence[Rep]) -> int | None:
    """Index of the first member of reps isomorphic to the indecomposable M."""
    for k, R in enumerate(reps):
        if R.dims == M.dims and _indec_iso(M, R):
            return k
    return None


def multiset_match(summands: Sequence[Rep], expected: Sequence[Rep]) -> bool:
    if len(summands) != len(expected):
        return False
    used = [False] * len(expected)
    for A in summands:
        for k, B in enumerate(expected):
            if not used[k] and A.dims == B.dims and _indec_iso(A, B):
                used[k] = True
                break
        else:
            return False
    return True


def random_rep(q: Quiver, dims: dict, rng: random.Random, field: Field | None = None, lo: int = -2,
               hi: int = 2) -> Rep:
    field = field or default_field()
    maps = {a.id: Mat([[rng.randint(lo, hi) for _ in range(dims.get(a.src, 0))]
                       for _ in range(dims.get(a.tgt, 0))], dims.get(a.src, 0), field)
            for a in q.arrows}
    return Rep(q, dims, maps, field)
