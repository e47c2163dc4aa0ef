"""Shared builders and independent oracles for the test suite."""

import random

import sympy

from quivertilt.quiver import quiver
from quivertilt.rep import Rep

A2 = quiver(2, [(0, 1)])
A3 = quiver(3, [(0, 1), (1, 2)])
D4 = quiver(4, [(0, 1), (2, 1), (3, 1)])
KRONECKER = quiver(2, [(0, 1), (0, 1)])
WILD3 = quiver(3, [(0, 1), (0, 1), (1, 2)])
SMALL_QUIVERS = [A2, A3, quiver(3, [(1, 0), (1, 2)]), D4, KRONECKER, WILD3, quiver(4, [(0, 1), (1, 2), (3, 2)])]


def brute_hom_dim(M: Rep, N: Rep) -> int:
    """Nullity of the full commuting-square system, assembled with Kronecker products."""
    q = M.quiver
    verts = list(q.vertices)
    offs, n = {}, 0
    for v in verts:
        offs[v] = n
        n += M.dims[v] * N.dims[v]
    if n == 0:
        return 0
    blocks = []
    for a in q.arrows:
        s, t = a.src, a.tgt
        rows = M.dims[s] * N.dims[t]
        if rows == 0:
            continue
        Na = sympy.Matrix(N.maps[a.id].rows) if N.dims[t] and N.dims[s] else sympy.zeros(N.dims[t], N.dims[s])
        Ma = sympy.Matrix(M.maps[a.id].rows) if M.dims[t] and M.dims[s] else sympy.zeros(M.dims[t], M.dims[s])
        row = sympy.zeros(rows, n)
        # column-major vec: vec(N f_s) = (I kron N) vec f_s, vec(f_t M) = (M^T kron I) vec f_t
        if M.dims[s] * N.dims[s]:
            left = sympy.kronecker_product(sympy.eye(M.dims[s]), Na)
            row[:, offs[s]:offs[s] + M.dims[s] * N.dims[s]] += left
        if M.dims[t] * N.dims[t]:
            right = sympy.kronecker_product(Ma.T, sympy.eye(N.dims[t]))
            row[:, offs[t]:offs[t] + M.dims[t] * N.dims[t]] -= right
        blocks.append(row)
    if not blocks:
        return n
    big = sympy.Matrix.vstack(*blocks)
    return n - big.rank()


def brute_euler(q, d, e) -> int:
    return (sum(d.get(v, 0) * e.get(v, 0) for v in q.vertices)
            - sum(d.get(a.src, 0) * e.get(a.tgt, 0) for a in q.arrows))


def rng(seed=0):
    return random.Random(seed)


def section_tilt(q, section, depth=None):
    """Knit q, check the section, and return (component, finite quiver, section modules on it)."""
    from quivertilt.ar import knit_preprojective
    from quivertilt.tilting import section_window_check, verify_section
    depth = depth if depth is not None else max(k for _, k in section) + 1
    c = knit_preprojective(q, depth)
    chk = verify_section(c, section)
    assert chk.ok, chk.violations
    if q.is_truncation:
        section_window_check(c, section)
    fq = q.finite()
    return c, fq, [c.rep(k).on(fq) for k in section]


def draw_window_section(q, rng, depth=4, tries=50):
    """A random section that passes the window check."""
    from quivertilt.ar import knit_preprojective
    from quivertilt.quiver import WindowTooSmall
    from quivertilt.tilting import random_section, section_window_check
    c = knit_preprojective(q, depth)
    for _ in range(tries):
        s = random_section(c, rng, max_level=depth - 1)
        try:
            section_window_check(c, s)
        except WindowTooSmall:
            continue
        return c, s
    raise AssertionError("no window-safe section drawn")
