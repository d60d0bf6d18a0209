"""Finite simple undirected graphs and the transforms used to build lattices.

Graphs are immutable.  Every transform returns a new :class:`Graph` with a
deterministic vertex numbering:

* ``cartesian_product``: vertex ``(u, u')`` gets index ``u * |V(h)| + u'``.
* ``subdivision``: original vertices keep their index, the vertex placed on
  the k-th edge (in sorted edge order) gets index ``|V| + k``.
* ``line_graph``: vertex k is the k-th edge of the sorted edge list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ContainmentError, InvalidSizeError, LatticeLelError, MissingEdgeError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset[Edge]
    labels: tuple | None = None

    def __post_init__(self):
        if self.n_vertices < 0:
            raise InvalidSizeError(f"negative vertex count {self.n_vertices}")
        n = self.n_vertices
        for u, v in self.edges:
            if u == v:
                raise LatticeLelError(f"self-loop at vertex {u}")
            if not (0 <= u < v < n):
                raise LatticeLelError(f"edge ({u}, {v}) is not normalised or out of range for n={n}")
        if self.labels is not None and len(self.labels) != n:
            raise LatticeLelError("labels must have one entry per vertex")

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        """Build a graph, rejecting loops and repeated edges.

        A repeated pair (in either orientation) means a construction produced
        a multigraph, which is reported as :class:`InvalidSizeError` because
        in this package that only happens for lattices below their minimum size.
        """
        seen: set[Edge] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidSizeError(f"construction produced a self-loop at vertex {u}")
            e = _norm(u, v)
            if e in seen:
                raise InvalidSizeError(f"construction produced a repeated edge {e}")
            seen.add(e)
        return cls(n_vertices, frozenset(seen), None if labels is None else tuple(labels))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for u, v in self.sorted_edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def is_regular(self) -> int | None:
        """Common degree if the graph is regular, else None."""
        degs = set(self.degrees)
        return degs.pop() if len(degs) == 1 else None

    def n_components(self) -> int:
        seen = [False] * self.n_vertices
        count = 0
        for s in range(self.n_vertices):
            if seen[s]:
                continue
            count += 1
            stack = [s]
            seen[s] = True
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
        return count

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and self.n_components() == 1

    def __repr__(self):
        return f"Graph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"


@dataclass(frozen=True)
class EdgeDelta:
    count: int


def new_path(n: int) -> Graph:
    if n < 1:
        raise InvalidSizeError(f"path needs at least 1 vertex, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def new_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidSizeError(f"a simple cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def cartesian_product(g: Graph, h: Graph) -> Graph:
    if g.n_vertices == 0 or h.n_vertices == 0:
        raise InvalidSizeError("cartesian product of an empty graph")
    nh = h.n_vertices
    edges = []
    for u in range(g.n_vertices):
        for a, b in h.sorted_edges:
            edges.append((u * nh + a, u * nh + b))
    for a, b in g.sorted_edges:
        for w in range(nh):
            edges.append((a * nh + w, b * nh + w))
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = [(lg, lh) for lg in g.labels for lh in h.labels]
    return Graph.from_edges(g.n_vertices * nh, edges, labels)


def subdivision(g: Graph) -> Graph:
    n = g.n_vertices
    edges = []
    for k, (u, v) in enumerate(g.sorted_edges):
        edges.append((u, n + k))
        edges.append((v, n + k))
    labels = None
    if g.labels is not None:
        labels = list(g.labels) + [("edge", g.labels[u], g.labels[v]) for u, v in g.sorted_edges]
    return Graph.from_edges(n + g.n_edges, edges, labels)


def line_graph(g: Graph) -> Graph:
    order = g.sorted_edges
    incident: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for k, (u, v) in enumerate(order):
        incident[u].append(k)
        incident[v].append(k)
    edges = []
    for inc in incident:
        for i in range(len(inc)):
            for j in range(i + 1, len(inc)):
                edges.append((inc[i], inc[j]))
    labels = None
    if g.labels is not None:
        labels = [(g.labels[u], g.labels[v]) for u, v in order]
    return Graph.from_edges(len(order), edges, labels)


def delete_edges(g: Graph, removed: Iterable[Sequence[int]]) -> Graph:
    drop = {_norm(int(u), int(v)) for u, v in removed}
    missing = drop - g.edges
    if missing:
        raise MissingEdgeError(f"edges not present in graph: {sorted(missing)[:5]}")
    return Graph(g.n_vertices, g.edges - drop, g.labels)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.n_vertices
    edges = set(g.edges) | {(u + off, v + off) for u, v in h.edges}
    return Graph(g.n_vertices + h.n_vertices, frozenset(edges))


def edge_delta(g: Graph, h: Graph) -> EdgeDelta:
    """Size of the symmetric difference of the two edge sets (index-aligned)."""
    common = len(g.edges & h.edges)
    return EdgeDelta(g.n_edges + h.n_edges - 2 * common)


def check_spanning_subgraph(g: Graph, h: Graph) -> None:
    if h.n_vertices != g.n_vertices:
        raise ContainmentError(
            f"vertex counts differ ({h.n_vertices} vs {g.n_vertices}); not a spanning subgraph")
    extra = h.edges - g.edges
    if extra:
        raise ContainmentError(f"{len(extra)} edge(s) of the subgraph are missing from the host, e.g. {min(extra)}")


def degree_agreement_fraction(g: Graph, h: Graph) -> Fraction:
    """Fraction of vertices whose degree in the spanning subgraph ``h`` equals that in ``g``."""
    check_spanning_subgraph(g, h)
    if g.n_vertices == 0:
        return Fraction(1)
    same = sum(1 for a, b in zip(g.degrees, h.degrees) if a == b)
    return Fraction(same, g.n_vertices)


def to_edgelist(g: Graph) -> str:
    lines = [f"n {g.n_vertices}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or rows[0][0] != "n" or len(rows[0]) != 2:
        raise LatticeLelError("edge list must start with a line 'n <vertex-count>'")
    n = int(rows[0][1])
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise LatticeLelError(f"malformed edge line: {' '.join(r)!r}")
        edges.append((int(r[0]), int(r[1])))
    return Graph.from_edges(n, edges)
