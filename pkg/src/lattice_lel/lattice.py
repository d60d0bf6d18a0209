"""Lattice graphs under toroidal, cylindrical and free boundary conditions.

Every family is first laid out on the torus with each edge tagged by the
direction it wraps in (if any).  Cylindrical instances drop the edges that
wrap in the m-direction, free instances drop every wrapping edge.  Vertices
are never removed, so the three boundary versions of one (family, m, n)
share a vertex numbering and satisfy ``E(free) <= E(cyl) <= E(torus)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidSizeError
from .graph_core import (
    Graph,
    cartesian_product,
    delete_edges,
    line_graph,
    new_cycle,
    new_path,
    subdivision,
)


class Family(str, enum.Enum):
    SQUARE = "square"
    HEXAGONAL = "hex"
    J_3_12_12 = "j312"
    TRIANGULAR_KAGOME = "tkl"
    M_33_42 = "m3342"


class Boundary(str, enum.Enum):
    TORUS = "torus"
    CYLINDER = "cyl"
    FREE = "free"


# wrap tags attached to torus edges
_NONE, _WRAP_M, _WRAP_N = 0, 1, 2

_MIN_SIZE = {
    Family.HEXAGONAL: (2, 2),
    Family.J_3_12_12: (2, 2),
    Family.TRIANGULAR_KAGOME: (2, 2),
    Family.M_33_42: (2, 3),
}


@dataclass(frozen=True)
class LatticeSpec:
    """A concrete lattice instance.

    For ``M_33_42`` the instance has ``2*m`` rows and ``n`` columns.  Only
    positivity is checked here; :func:`check_buildable` enforces the
    per-family minimum sizes needed for a simple graph.
    """

    family: Family
    boundary: Boundary
    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        if self.m < 1 or self.n < 1:
            raise InvalidSizeError(f"lattice dimensions must be positive, got m={self.m}, n={self.n}")

    @property
    def tag(self) -> str:
        return f"{self.family.value}/{self.boundary.value}/{self.m}x{self.n}"

    def n_vertices(self) -> int:
        m, n = self.m, self.n
        cells = (m + 1) * (n + 1)
        return {
            Family.SQUARE: m * n,
            Family.HEXAGONAL: 2 * cells,
            Family.J_3_12_12: 6 * cells,
            Family.TRIANGULAR_KAGOME: 9 * cells,
            Family.M_33_42: 2 * m * n,
        }[self.family]

    def with_boundary(self, boundary: Boundary) -> "LatticeSpec":
        return LatticeSpec(self.family, boundary, self.m, self.n)


def check_buildable(spec: LatticeSpec) -> None:
    m, n = spec.m, spec.n
    if spec.family is Family.SQUARE:
        if spec.boundary is Boundary.TORUS and (m < 3 or n < 3):
            raise InvalidSizeError(f"square torus needs m, n >= 3 (got {m}x{n})")
        if spec.boundary is Boundary.CYLINDER and n < 3:
            raise InvalidSizeError(f"square cylinder needs n >= 3 for the cycle direction (got n={n})")
        return
    mm, mn = _MIN_SIZE[spec.family]
    if m < mm or n < mn:
        raise InvalidSizeError(
            f"{spec.family.value} lattice needs m >= {mm}, n >= {mn} (got {m}x{n})")


def _hex_torus(m: int, n: int) -> tuple[Graph, dict]:
    """Hexagonal torus on Z_{m+1} x Z_{n+1}; A(x,y) -> 2*(x*(n+1)+y), B(x,y) -> A+1."""
    M, N = m + 1, n + 1

    def a(x, y):
        return 2 * (x * N + y)

    edges, tags = [], {}
    for x in range(M):
        for y in range(N):
            for (bx, by), tag in (
                ((x, y), _NONE),
                (((x - 1) % M, y), _WRAP_M if x == 0 else _NONE),
                ((x, (y + 1) % N), _WRAP_N if y == n else _NONE),
            ):
                e = (a(x, y), a(bx, by) + 1)
                edges.append(e)
                tags[tuple(sorted(e))] = tag
    return Graph.from_edges(2 * M * N, edges), tags


def _m3342_torus(m: int, n: int, mirrored: bool = False) -> tuple[Graph, dict]:
    """2m x n square torus plus (r,c)-(r+1,c+1) diagonals on even rows; (r,c) -> r*n+c.

    ``mirrored`` uses (r,c+1)-(r+1,c) diagonals instead.
    """
    rows = 2 * m
    edges, tags = [], {}

    def add(r1, c1, r2, c2, tag):
        e = ((r1 % rows) * n + (c1 % n), (r2 % rows) * n + (c2 % n))
        edges.append(e)
        tags[tuple(sorted(e))] = tag

    for r in range(rows):
        for c in range(n):
            add(r, c, r + 1, c, _WRAP_M if r == rows - 1 else _NONE)
            add(r, c, r, c + 1, _WRAP_N if c == n - 1 else _NONE)
            if r % 2 == 0 and mirrored:
                add(r, c + 1, r + 1, c, _WRAP_N if c == n - 1 else _NONE)
            elif r % 2 == 0:
                add(r, c, r + 1, c + 1, _WRAP_N if c == n - 1 else _NONE)
    return Graph.from_edges(rows * n, edges), tags


def _cut_set(tags: dict, boundary: Boundary) -> list:
    if boundary is Boundary.TORUS:
        return []
    drop = {_WRAP_M} if boundary is Boundary.CYLINDER else {_WRAP_M, _WRAP_N}
    return sorted(e for e, t in tags.items() if t in drop)


def _square(spec: LatticeSpec) -> Graph:
    m, n = spec.m, spec.n
    if spec.boundary is Boundary.TORUS:
        return cartesian_product(new_cycle(m), new_cycle(n))
    if spec.boundary is Boundary.CYLINDER:
        return cartesian_product(new_path(m), new_cycle(n))
    return cartesian_product(new_path(m), new_path(n))


def _j_from_hex(h: Graph, cut: list) -> tuple[Graph, list]:
    """J = line graph of the subdivided hexagonal torus, with the rung of every
    cut hexagonal edge removed.  Returns the graph and the removed rungs."""
    s = subdivision(h)
    j = line_graph(s)
    pos = {e: k for k, e in enumerate(s.sorted_edges)}
    hidx = {e: k for k, e in enumerate(h.sorted_edges)}
    rungs = []
    for u, v in cut:
        w = h.n_vertices + hidx[(u, v)]
        rungs.append(tuple(sorted((pos[(u, w)], pos[(v, w)]))))
    return delete_edges(j, rungs), rungs


def _tkl_from_hex(h: Graph, cut: list) -> Graph:
    """TKL = line graph of the J torus.  A cut rung of J is a TKL vertex
    sitting between two triangles; it is detached from the triangle on the
    B-sublattice side of the hexagonal edge it came from."""
    j, _ = _j_from_hex(h, [])
    t = line_graph(j)
    s_pos = {e: k for k, e in enumerate(subdivision(h).sorted_edges)}
    j_pos = {e: k for k, e in enumerate(j.sorted_edges)}
    hidx = {e: k for k, e in enumerate(h.sorted_edges)}
    drop = []
    for u, v in cut:
        w = h.n_vertices + hidx[(u, v)]
        ju, jv = s_pos[(u, w)], s_pos[(v, w)]
        rung = tuple(sorted((ju, jv)))
        x = j_pos[rung]
        jb = jv if v % 2 == 1 else ju
        for other in j.adjacency[jb]:
            f = j_pos[tuple(sorted((jb, other)))]
            if f != x:
                drop.append((x, f))
    return delete_edges(t, drop)


def build(spec: LatticeSpec) -> Graph:
    check_buildable(spec)
    fam, m, n = spec.family, spec.m, spec.n
    if fam is Family.SQUARE:
        return _square(spec)
    if fam is Family.M_33_42:
        g, tags = _m3342_torus(m, n)
        return delete_edges(g, _cut_set(tags, spec.boundary))
    h, tags = _hex_torus(m, n)
    cut = _cut_set(tags, spec.boundary)
    if fam is Family.HEXAGONAL:
        return delete_edges(h, cut)
    if fam is Family.J_3_12_12:
        return _j_from_hex(h, cut)[0]
    return _tkl_from_hex(h, cut)


def boundary_chain(spec: LatticeSpec) -> tuple[Graph, Graph, Graph]:
    """(torus, cylinder, free) versions of ``spec`` on one vertex numbering."""
    return tuple(build(spec.with_boundary(b)) for b in (Boundary.TORUS, Boundary.CYLINDER, Boundary.FREE))
