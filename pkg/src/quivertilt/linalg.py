"""Exact linear algebra over the rationals and prime fields.

Matrices are small and very sparse in practice, so elimination runs on
dict-backed rows. Every routine is deterministic: reduced row echelon
form is canonical, and all choices (pivots, complements) are derived
from it.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class Field:
    """Base class for an exact field. Elements are plain Python numbers."""

    name = "field"
    characteristic = 0

    def coerce(self, x):
        raise NotImplementedError

    def reduce(self, x):
        return x

    def inv(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        text = str(text).strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))

    def fmt(self, x) -> str:
        return str(x)

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "QQ"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / x

    def fmt(self, x) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self.parse(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


FIELD_ENV = "QUIVERTILT_FIELD"


def field_from_name(name: str) -> Field:
    """Parse 'QQ', 'GF(7)' or '7'."""
    text = name.strip().upper()
    if text in ("QQ", "Q", "RATIONALS", ""):
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        text = text[3:-1]
    try:
        return GF(int(text))
    except ValueError as exc:
        raise ValueError(f"unknown field {name!r}") from exc


def default_field() -> Field:
    return field_from_name(os.environ.get(FIELD_ENV, "QQ"))


# --- sparse row elimination -------------------------------------------------


def _rref_sparse(rows: Iterable[dict], field: Field) -> list[tuple[int, dict]]:
    """Reduced row echelon form of sparse rows, as (pivot, row) sorted by pivot."""
    pivots: dict[int, dict] = {}
    red = field.reduce
    for src in rows:
        r = {c: v for c, v in src.items() if v != 0}
        for c in [c for c in r if c in pivots]:
            f = r.get(c, 0)
            if f == 0:
                continue
            for cc, vv in pivots[c].items():
                nv = red(r.get(cc, 0) - f * vv)
                if nv == 0:
                    r.pop(cc, None)
                else:
                    r[cc] = nv
        if not r:
            continue
        pc = min(r)
        scale = field.inv(r[pc])
        r = {c: red(v * scale) for c, v in r.items()}
        r[pc] = 1
        for prow in pivots.values():
            f = prow.get(pc, 0)
            if f == 0:
                continue
            for cc, vv in r.items():
                nv = red(prow.get(cc, 0) - f * vv)
                if nv == 0:
                    prow.pop(cc, None)
                else:
                    prow[cc] = nv
        pivots[pc] = r
    return sorted(pivots.items())


class Mat:
    """Dense exact matrix. Treated as immutable once built."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None, field: Field | None = None):
        self.field = field if field is not None else QQ
        co = self.field.coerce
        self.rows = [[co(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, rows: list[list], ncols: int, field: Field) -> "Mat":
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m.field = field
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field | None = None) -> "Mat":
        return cls._raw([[0] * ncols for _ in range(nrows)], ncols, field or QQ)

    @classmethod
    def identity(cls, n: int, field: Field | None = None) -> "Mat":
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        return cls._raw(rows, n, field or QQ)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, field: Field | None = None) -> "Mat":
        field = field or QQ
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols), field)

    @classmethod
    def from_sparse(cls, rows: Sequence[dict], ncols: int, field: Field) -> "Mat":
        dense = []
        for r in rows:
            d = [0] * ncols
            for c, v in r.items():
                d[c] = v
            dense.append(d)
        return cls._raw(dense, ncols, field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def sparse_rows(self) -> list[dict]:
        return [{j: v for j, v in enumerate(r) if v != 0} for r in self.rows]

    @property
    def T(self) -> "Mat":
        return Mat._raw([[r[j] for r in self.rows] for j in range(self.ncols)], self.nrows, self.field)

    def transpose(self) -> "Mat":
        return self.T

    def _check_field(self, other: "Mat"):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        red = self.field.reduce
        ocols = other.ncols
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [0] * ocols
            for k, a in enumerate(r):
                if a == 0:
                    continue
                orow = orows[k]
                for j in range(ocols):
                    b = orow[j]
                    if b != 0:
                        acc[j] += a * b
            if self.field.characteristic:
                acc = [red(x) for x in acc]
            out.append(acc)
        return Mat._raw(out, ocols, self.field)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        red = self.field.reduce
        return [red(sum(a * b for a, b in zip(r, v) if a != 0 and b != 0)) for r in self.rows]

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        red = self.field.reduce
        return Mat._raw([[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                        self.ncols, self.field)

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        red = self.field.reduce
        return Mat._raw([[red(c * a) for a in r] for r in self.rows], self.ncols, self.field)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self.rows)
        return f"Mat{self.shape}[{body}]"

    def hstack(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Mat._raw([r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols, self.field)

    def vstack(self, other: "Mat") -> "Mat":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Mat._raw([list(r) for r in self.rows] + [list(r) for r in other.rows], self.ncols, self.field)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw([[self.rows[i][j] for j in cols] for i in rows], len(cols), self.field)

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of non-square matrix")
        return self.field.reduce(sum(self.rows[i][i] for i in range(self.nrows)))

    def rref(self) -> tuple["Mat", list[int]]:
        piv = _rref_sparse(self.sparse_rows(), self.field)
        return Mat.from_sparse([r for _, r in piv], self.ncols, self.field), [c for c, _ in piv]

    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> "Mat":
        return kernel_basis(self)

    def inverse(self) -> "Mat":
        return inverse(self)

    def det(self):
        return det(self)


def block_diag(blocks: Sequence[Mat], field: Field | None = None) -> Mat:
    if not blocks:
        return Mat.zeros(0, 0, field or QQ)
    field = blocks[0].field
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    rows = [[0] * nc for _ in range(nr)]
    r0 = c0 = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[r0 + i][c0:c0 + b.ncols] = r
        r0 += b.nrows
        c0 += b.ncols
    return Mat._raw(rows, nc, field)


def block_matrix(grid: Sequence[Sequence[Mat]]) -> Mat:
    """Assemble a matrix from a rectangular grid of compatible blocks."""
    out = None
    for brow in grid:
        row = brow[0]
        for b in brow[1:]:
            row = row.hstack(b)
        out = row if out is None else out.vstack(row)
    return out


def rank(m: Mat) -> int:
    return len(_rref_sparse(m.sparse_rows(), m.field))


def kernel_basis(m: Mat) -> Mat:
    """Columns form a basis of {x : m x = 0}."""
    piv = _rref_sparse(m.sparse_rows(), m.field)
    pcols = {c for c, _ in piv}
    free = [j for j in range(m.ncols) if j not in pcols]
    red = m.field.reduce
    cols = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for c, r in piv:
            x = r.get(f, 0)
            if x != 0:
                v[c] = red(-x)
        cols.append(v)
    return Mat.from_columns(cols, m.ncols, m.field) if cols else Mat.zeros(m.ncols, 0, m.field)


def row_space_basis(m: Mat) -> Mat:
    piv = _rref_sparse(m.sparse_rows(), m.field)
    return Mat.from_sparse([r for _, r in piv], m.ncols, m.field)


def column_space_basis(m: Mat) -> Mat:
    """A basis of the column space, chosen among the columns of m."""
    piv = _rref_sparse(m.T.sparse_rows(), m.field) if m.ncols else []
    # rows of rref(m^T) span the column space in canonical form
    return Mat.from_columns([[r.get(i, 0) for i in range(m.nrows)] for _, r in piv], m.nrows, m.field) \
        if piv else Mat.zeros(m.nrows, 0, m.field)


def complement_columns(basis: Mat) -> Mat:
    """Unit vectors completing the column space of `basis` to the whole space."""
    n = basis.nrows
    piv = _rref_sparse(basis.T.sparse_rows(), basis.field) if basis.ncols else []
    used = {c for c, _ in piv}
    cols = []
    for j in range(n):
        if j not in used:
            v = [0] * n
            v[j] = 1
            cols.append(v)
    return Mat.from_columns(cols, n, basis.field) if cols else Mat.zeros(n, 0, basis.field)


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some x with a x = b, or None when the system is inconsistent."""
    if a.nrows != b.nrows:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    a._check_field(b)
    n = a.ncols
    aug = [{**ra, **{n + j: v for j, v in rb.items()}}
           for ra, rb in zip(a.sparse_rows(), b.sparse_rows())]
    piv = _rref_sparse(aug, a.field)
    x = [[0] * b.ncols for _ in range(n)]
    for c, r in piv:
        if c >= n:
            return None
        for cc, v in r.items():
            if cc >= n:
                x[c][cc - n] = v
    return Mat._raw(x, b.ncols, a.field)


def inverse(m: Mat) -> Mat:
    if m.nrows != m.ncols:
        raise ValueError("inverse of non-square matrix")
    x = solve(m, Mat.identity(m.nrows, m.field))
    if x is None or rank(m) < m.nrows:
        raise ZeroDivisionError("singular matrix")
    return x


def det(m: Mat):
    if m.nrows != m.ncols:
        raise ValueError("determinant of non-square matrix")
    f = m.field
    rows = [list(r) for r in m.rows]
    n = len(rows)
    d = 1
    for k in range(n):
        p = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            d = -d
        pv = rows[k][k]
        d = f.reduce(d * pv)
        inv = f.inv(pv)
        for i in range(k + 1, n):
            fac = rows[i][k]
            if fac == 0:
                continue
            fac = f.reduce(fac * inv)
            rows[i] = [f.reduce(a - fac * b) for a, b in zip(rows[i], rows[k])]
    return f.reduce(d)


class ZMat:
    """Integer matrix for Grothendieck group bookkeeping."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int | None = None):
        self.rows = [[int(x) for x in r] for r in rows]
        for r, orig in zip(self.rows, rows):
            if any(int(x) != x for x in orig):
                raise ValueError("ZMat entries must be integers")
        self.nrows = len(self.rows)
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)

    @classmethod
    def identity(cls, n: int) -> "ZMat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def T(self) -> "ZMat":
        return ZMat([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    def __matmul__(self, other: "ZMat") -> "ZMat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return ZMat([[sum(a * other.rows[k][j] for k, a in enumerate(r)) for j in range(other.ncols)]
                     for r in self.rows], other.ncols)

    def __eq__(self, other):
        return isinstance(other, ZMat) and self.rows == other.rows and self.ncols == other.ncols

    def __repr__(self):
        return f"ZMat({self.rows})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_mat(self, field: Field | None = None) -> Mat:
        return Mat(self.rows, self.ncols, field or QQ)

    def det(self) -> int:
        return bareiss_det(self)


def bareiss_det(z: ZMat) -> int:
    """Fraction-free determinant."""
    if z.nrows != z.ncols:
        raise ValueError("determinant of non-square matrix")
    n = z.nrows
    a = [list(r) for r in z.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def is_unimodular(z: ZMat) -> bool:
    if z.nrows != z.ncols:
        raise ValueError("is_unimodular needs a square matrix")
    return abs(bareiss_det(z)) == 1


def nullspace_sparse(rows: Iterable[dict], ncols: int, field: Field) -> tuple[list[dict], list[int]]:
    """Kernel of a sparse system.

    Returns (basis, free) where basis[k] has a 1 in column free[k] and a 0
    in every other free column, so the coordinates of a kernel vector are
    just its entries at the free columns.
    """
    piv = _rref_sparse(rows, field)
    pcols = {c for c, _ in piv}
    free = [j for j in range(ncols) if j not in pcols]
    red = field.reduce
    basis = []
    for f in free:
        v = {f: 1}
        for c, r in piv:
            x = r.get(f, 0)
            if x != 0:
                v[c] = red(-x)
        basis.append(v)
    return basis, free


class Reducer:
    """Reduction modulo a fixed subspace spanned by sparse vectors.

    `reduce(v)` returns the canonical representative of v modulo the span,
    supported away from the pivot columns; it is zero iff v lies in the span.
    """

    def __init__(self, vectors: Iterable[dict], field: Field):
        self.field = field
        self.pivots = dict(_rref_sparse(vectors, field))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict) -> dict:
        red = self.field.reduce
        r = {c: x for c, x in v.items() if x != 0}
        for c in sorted(c for c in r if c in self.pivots):
            f = r.get(c, 0)
            if f == 0:
                continue
            for cc, vv in self.pivots[c].items():
                nv = red(r.get(cc, 0) - f * vv)
                if nv == 0:
                    r.pop(cc, None)
                else:
                    r[cc] = nv
        return r

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def span_rank(vectors: Iterable[dict], field: Field) -> int:
    return len(_rref_sparse(vectors, field))


def express(vectors: Sequence[dict], target: dict, field: Field) -> list | None:
    """Coefficients c with sum c_k vectors[k] = target, or None."""
    n = len(vectors)
    cols = sorted({c for v in vectors for c in v} | set(target))
    index = {c: i for i, c in enumerate(cols)}
    rows = [dict() for _ in cols]
    for k, v in enumerate(vectors):
        for c, x in v.items():
            if x != 0:
                rows[index[c]][k] = x
    for c, x in target.items():
        if x != 0:
            rows[index[c]][n] = x
    piv = _rref_sparse(rows, field)
    sol = [0] * n
    for c, r in piv:
        if c == n:
            return None
        sol[c] = r.get(n, 0)
    return sol
