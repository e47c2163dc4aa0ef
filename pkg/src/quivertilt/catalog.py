"""Explicit indecomposables of the infinite Dynkin families and their predicted translates."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .ar import ar_sequence, knit_preinjective, knit_preprojective, tau, tau_inv
from .linalg import Field, Mat, default_field
from .modules import (is_indecomposable, is_injective, is_isomorphic, is_projective,
                      multiset_match)
from .quiver import A_INF, A_INFINF, D_INF, Quiver, WindowTooSmall, truncate
from .rep import Rep

FAMILIES = ("Mab_AInf", "Mab_AInfInf", "M_DInf", "N0", "N1", "Llm", "Lm", "S")
KIND_OF = {"Mab_AInf": "AInf", "Mab_AInfInf": "AInfInf"}


@dataclass(frozen=True, order=True)
class CatalogRep:
    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family}")
        p = self.params
        f = self.family
        if f in ("Mab_AInf", "Mab_AInfInf"):
            a, b = p
            if b < a or (f == "Mab_AInf" and a < 0):
                raise ValueError(f"M_a^b needs b >= a (>= 0 on AInf): {p}")
        elif f == "M_DInf":
            n, m = p
            if not m >= n >= 2:
                raise ValueError(f"M_n^m needs m >= n >= 2: {p}")
        elif f in ("N0", "N1"):
            if p[0] < 2:
                raise ValueError("N^m needs m >= 2")
        elif f == "Llm":
            l, m = p
            if not m > l >= 2:
                raise ValueError(f"L_l^m needs m > l >= 2: {p}")
        elif f == "Lm":
            if p[0] < 0 or p[0] == 1:
                raise ValueError("L^m needs m = 0 or m >= 2 (L^1 is decomposable)")

    @property
    def kind(self) -> str:
        return KIND_OF.get(self.family, "DInf")

    def __str__(self):
        f, p = self.family, self.params
        if f.startswith("Mab") or f == "M_DInf":
            return f"M_{p[0]}^{p[1]}"
        if f in ("N0", "N1"):
            return f"N{f[1]}^{p[0]}"
        if f == "Llm":
            return f"L_{p[0]}^{p[1]}"
        if f == "Lm":
            return f"L^{p[0]}"
        return f"S({p[0]})"

    def dims(self) -> dict[int, int]:
        f, p = self.family, self.params
        if f in ("Mab_AInf", "Mab_AInfInf", "M_DInf"):
            return {i: 1 for i in range(p[0], p[1] + 1)}
        if f == "N0":
            return {i: 1 for i in range(1, p[0] + 1)}
        if f == "N1":
            return {0: 1, **{i: 1 for i in range(2, p[0] + 1)}}
        if f == "Llm":
            l, m = p
            return {0: 1, 1: 1, **{i: 2 for i in range(2, l + 1)}, **{i: 1 for i in range(l + 1, m + 1)}}
        if f == "Lm":
            return {i: 1 for i in range(p[0] + 1)}
        return {p[0]: 1}


def M(a: int, b: int, kind: str = "AInf") -> CatalogRep:
    return CatalogRep({"AInf": "Mab_AInf", "AInfInf": "Mab_AInfInf", "DInf": "M_DInf"}[kind], (a, b))


def N(x: int, m: int) -> CatalogRep:
    return CatalogRep(f"N{x}", (m,))


def L(*params: int) -> CatalogRep:
    return CatalogRep("Llm" if len(params) == 2 else "Lm", tuple(params))


def S(v: int) -> CatalogRep:
    return CatalogRep("S", (v,))


def make(c: CatalogRep, q: Quiver, field: Field | None = None) -> Rep:
    """The representation of c on the window q, with identity maps along thin parts."""
    field = field or default_field()
    dims = c.dims()
    missing = sorted(v for v in dims if v not in q)
    if missing:
        raise WindowTooSmall(f"{c} needs vertices {missing} outside the window")
    one = Mat([[1]], field=field)
    maps = {}
    for a in q.arrows:
        s, t = a.src, a.tgt
        if s not in dims or t not in dims:
            continue
        ds, dt = dims[s], dims[t]
        if ds == dt == 1:
            maps[a.id] = one
        elif ds == dt == 2:
            maps[a.id] = Mat.identity(2, field)
        elif (s, t) == (2, 0):
            maps[a.id] = Mat([[1, 0]], field=field)
        elif (s, t) == (2, 1):
            maps[a.id] = Mat([[0, 1]], field=field)
        elif ds == 2:
            maps[a.id] = Mat([[1, 1]], field=field)
        else:
            maps[a.id] = Mat([[1], [1]], field=field)
    R = Rep(q, dims, maps, field, name=str(c))
    if not is_indecomposable(R):
        raise ValueError(f"{c} is decomposable")
    return R


# --- predictions -------------------------------------------------------------

# translates read off the drawn regular component of D_inf, (N^m = L^m, N_l^m = L_l^m)
_DINF_REGULAR_TAU = {
    M(3, 4, "DInf"): M(5, 6, "DInf"),
    L(2): M(3, 4, "DInf"),
    M(2, 3, "DInf"): L(2),
    M(4, 5, "DInf"): M(2, 3, "DInf"),
    L(4): M(3, 6, "DInf"),
    L(2, 3): L(4),
    M(2, 5, "DInf"): L(2, 3),
    L(3, 4): L(6),
    L(2, 5): L(3, 4),
    L(4, 5): L(3, 6),
}


def predicted_tau(c: CatalogRep) -> CatalogRep | None:
    f, p = c.family, c.params
    if f == "Mab_AInf":
        a, b = p
        if b % 2:
            return None
        if a % 2 == 0:
            k, m = a // 2, b // 2
            return M(2 * (k + 1), 2 * (m - 1)) if m > k + 1 else None
        if a == 1:
            return M(0, b - 2) if b >= 2 else None
        k, m = (a - 1) // 2, b // 2
        return M(2 * k - 1, 2 * (m - 1))
    if f == "Mab_AInfInf":
        a, b = p
        if a % 2 == 0 and b % 2 == 0:
            return M(a + 2, b - 2, "AInfInf") if b - a > 2 else None
        if a % 2 == 0:
            return M(a + 2, b + 2, "AInfInf")
        if b % 2 == 0:
            return M(a - 2, b - 2, "AInfInf")
        return None
    if f in ("N0", "N1"):
        x, m = int(f[1]), p[0]
        if m % 2 and m >= 5:
            return N(1 - x, m - 2)
        if m == 3:
            return S(x)
        if m % 2 == 0 and m >= 4:
            return N(1 - x, m + 2)
        return None
    return _DINF_REGULAR_TAU.get(c)


PRE, POST = "preprojective", "preinjective"


def regular(i: int) -> str:
    return f"regular({i})"


@dataclass(frozen=True)
class Prediction:
    component: str
    ambiguous: bool = False


def predicted_component(c: CatalogRep) -> Prediction:
    f, p = c.family, c.params
    if f == "Mab_AInf":
        return Prediction(PRE if p[1] % 2 == 0 else POST)
    if f == "Mab_AInfInf":
        a, b = p[0] % 2, p[1] % 2
        if a == b:
            return Prediction(PRE if a == 0 else POST)
        return Prediction(regular(a))
    if f in ("N0", "N1"):
        return Prediction(PRE if p[0] % 2 else POST, ambiguous=True)
    if f == "S":
        return Prediction(PRE)
    if f == "Lm":
        m = p[0]
        return Prediction(regular(0) if m and m % 2 == 0 else PRE)
    n, m = p
    if (n + m) % 2:
        return Prediction(regular(0))
    # the membership lists state the same parity rule for both sides
    return Prediction(PRE if n % 2 else POST, ambiguous=True)


def members(kind: str, window: tuple[int, int], margin: int = 0) -> list[CatalogRep]:
    lo, hi = window[0] + (margin if kind == "AInfInf" else 0), window[1] - margin
    if kind in ("AInf", "AInfInf"):
        return [M(a, b, kind) for a in range(lo, hi + 1) for b in range(a, hi + 1)]
    out = [M(n, m, "DInf") for n in range(2, hi + 1) for m in range(n, hi + 1)]
    out += [N(x, m) for x in (0, 1) for m in range(2, hi + 1)]
    out += [L(l, m) for l in range(2, hi + 1) for m in range(l + 1, hi + 1)]
    out += [L(m) for m in [0] + list(range(2, hi + 1))]
    return out


# --- verification ------------------------------------------------------------


@dataclass
class ItemResult:
    name: str
    predicted_tau: str | None = None
    tau_ok: bool | None = None
    predicted: str | None = None
    computed: str | None = None
    ambiguous: bool = False
    alpha: int | None = None
    shape_ok: bool | None = None
    skipped: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class CatalogReport:
    kind: str
    window: tuple[int, int]
    items: list[ItemResult] = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        bad = []
        for it in self.items:
            if it.skipped:
                continue
            if it.tau_ok is False:
                bad.append(f"{it.name}: tau disagrees with {it.predicted_tau}")
            if it.predicted and it.computed and not _agrees(it.predicted, it.computed) and not it.ambiguous:
                bad.append(f"{it.name}: predicted {it.predicted}, computed {it.computed}")
            if it.shape_ok is False:
                bad.append(f"{it.name}: almost split sequence has the wrong shape")
            if it.alpha is not None and it.alpha > 2:
                bad.append(f"{it.name}: middle term has {it.alpha} summands")
        return bad + list(self.extra.get("failures", []))

    @property
    def divergences(self) -> list[str]:
        return [f"{it.name}: listed {it.predicted}, computed {it.computed}" for it in self.items
                if not it.skipped and it.ambiguous and it.computed and not _agrees(it.predicted, it.computed)]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"family": self.kind, "window": list(self.window), "ok": self.ok,
                "failures": self.failures, "divergences": self.divergences,
                "items": [it.to_dict() for it in self.items],
                **{k: v for k, v in self.extra.items() if k != "failures"}}


    def to_dot(self) -> str:
        """Items coloured by membership: green agrees, orange flagged divergence,
        red failure, grey skipped; dashed edges are the predicted τ."""
        def nid(name):
            return '"' + name + '"'
        lines = [f"digraph {self.kind} {{", "  node [shape=box];"]
        names = {it.name for it in self.items}
        for it in self.items:
            if it.skipped:
                colour, label = "grey", f"{it.name}\\nskipped"
            else:
                agree = not (it.predicted and it.computed) or _agrees(it.predicted, it.computed)
                colour = "green" if agree and it.tau_ok is not False else "orange" if it.ambiguous else "red"
                label = f"{it.name}\\npredicted {it.predicted}\\ncomputed {it.computed}"
            lines.append(f'  {nid(it.name)} [label="{label}", color={colour}];')
        for it in self.items:
            if it.predicted_tau and it.predicted_tau in names:
                lines.append(f"  {nid(it.name)} -> {nid(it.predicted_tau)} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _agrees(predicted: str, computed: str) -> bool:
    if computed == "regular":
        return predicted.startswith("regular")
    return predicted == computed


def orbit_component(X: Rep, bound: int = 12) -> str:
    """Component by τ-orbit search: reaching a projective or an injective decides.

    Orbits that do neither within the bound (or leave the window) are
    reported regular; this is a bounded certificate only.
    """
    Y = X
    for _ in range(bound):
        if is_projective(Y):
            return PRE
        try:
            Y = tau(Y)
        except WindowTooSmall:
            break
        if Y.is_zero():
            return PRE
    Y = X
    for _ in range(bound):
        if is_injective(Y):
            return POST
        try:
            Y = tau_inv(Y)
        except WindowTooSmall:
            break
        if Y.is_zero():
            return POST
    return "regular"


def _ainfinf_shape_ok(c: CatalogRep, middle: list[Rep], q: Quiver) -> bool:
    a, b = c.params
    if a % 2 == 0 and b % 2:
        exp = [M(a, b + 2, "AInfInf")] + ([M(a + 2, b, "AInfInf")] if a + 2 <= b else [])
    elif a % 2 and b % 2 == 0:
        exp = [M(a - 2, b, "AInfInf")] + ([M(a, b - 2, "AInfInf")] if a <= b - 2 else [])
    else:
        return True
    return multiset_match(middle, [make(e, q) for e in exp])


def _dinf_quasi_simple(c: CatalogRep) -> bool:
    if c.family == "M_DInf":
        return c.params[1] == c.params[0] + 1
    return c == L(2)


def verify_catalog(kind: str, window: tuple[int, int], margin: int = 2, field: Field | None = None,
                   census: bool = False, depth: int = 8) -> CatalogReport:
    fam = {"AInf": A_INF, "AInfInf": A_INFINF, "DInf": D_INF}[kind]
    q = truncate(fam, window)
    rep = CatalogReport(kind, window)
    comps = None
    if census:
        comps = (knit_preprojective(q, depth, field), knit_preinjective(q, depth, field))
    regulars = []
    for c in members(kind, window, margin):
        pred = predicted_component(c)
        it = ItemResult(str(c), predicted=pred.component, ambiguous=pred.ambiguous)
        rep.items.append(it)
        try:
            X = make(c, q, field)
        except (WindowTooSmall, ValueError) as exc:
            it.skipped = str(exc)
            continue
        try:
            pt = predicted_tau(c)
            if pt is not None:
                it.predicted_tau = str(pt)
                it.tau_ok = is_isomorphic(tau(X), make(pt, q, field))
            comp = orbit_component(X)
            if comps is not None and comp != "regular":
                knitted = PRE if comps[0].find(X) is not None else POST if comps[1].find(X) is not None else None
                if knitted is not None and knitted != comp:
                    rep.extra.setdefault("failures", []).append(f"{c}: knitting and orbit search disagree")
                if knitted is None:
                    it.skipped = "not reached by knitting at this depth"
                    continue
            if comp == "regular":
                s = ar_sequence(X)
                it.alpha = s.alpha
                if kind == "AInfInf":
                    it.shape_ok = _ainfinf_shape_ok(c, s.middle, q)
                elif kind == "DInf":
                    it.shape_ok = (s.alpha == 1) == _dinf_quasi_simple(c)
                regulars.append((c, X, s, it))
            it.computed = comp
        except WindowTooSmall as exc:
            it.skipped = f"window: {exc}"
    if census:
        rep.extra["census"] = _census(regulars, rep)
    return rep


def _census(regulars, rep: CatalogReport) -> dict:
    """Connected classes of regular members linked by τ and by AR middle terms."""
    parent = list(range(len(regulars)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def index_of(Y):
        for j, (_, X, _, _) in enumerate(regulars):
            if X.dims == Y.dims and is_isomorphic(X, Y):
                return j
        return None

    for i, (_, _, s, _) in enumerate(regulars):
        for Y in [s.left] + s.middle:
            j = index_of(Y)
            if j is not None:
                parent[find(i)] = find(j)
    classes: dict = {}
    for i in range(len(regulars)):
        classes.setdefault(find(i), []).append(i)
    for members_ in classes.values():
        parity = {regulars[i][0].params[0] % 2 for i in members_}
        if len(parity) != 1:
            rep.extra.setdefault("failures", []).append(
                f"regular class {[str(regulars[i][0]) for i in members_][:4]}... mixes parities")
            continue
        label = regular(parity.pop()) if rep.kind == "AInfInf" else regular(0)
        for i in members_:
            regulars[i][3].computed = label
    counted = {PRE, POST} & {it.computed for it in rep.items if not it.skipped}
    return {"regular_classes": len(classes), "components": len(counted) + len(classes),
            "class_sizes": sorted(len(m) for m in classes.values())}


def tau_orbit(X: Rep, steps: int, inverse: bool = True) -> list[Rep]:
    out = [X]
    for _ in range(steps):
        X = tau_inv(X) if inverse else tau(X)
        if X.is_zero():
            break
        out.append(X)
    return out


def dinf_orbits(window: tuple[int, int] = (0, 14), steps: int = 4, field: Field | None = None) -> dict:
    """τ^- orbits of P(0) and P(1) against the listed N-sequences."""
    q = truncate(D_INF, window)
    out = {}
    for x in (0, 1):
        expected = [S(x)] + [N(x if k % 2 else 1 - x, 2 * k + 1) for k in range(1, steps + 1)]
        orbit = tau_orbit(make(S(x), q, field), steps)
        agree = len(orbit) == len(expected) and all(
            is_isomorphic(R, make(e, q, field)) for R, e in zip(orbit, expected))
        out[f"P({x})"] = {"expected": [str(e) for e in expected], "agrees": agree}
    return out
