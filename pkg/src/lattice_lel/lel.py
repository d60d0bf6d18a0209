"""Laplacian-energy-like invariant: value, universal bounds, perturbation checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContainmentError, InvariantError
from .graph_core import Graph, check_spanning_subgraph, delete_edges, edge_delta
from .spectral import DEFAULT_CAP, Spectrum, numeric_spectrum

MARGIN_TOL = 1e-8


@dataclass(frozen=True)
class LelValue:
    value: float
    per_vertex: float
    n_vertices: int
    n_edges: int


def lel(spectrum: Spectrum) -> LelValue:
    """Sum of square roots of the clamped Laplacian eigenvalues.

    The zero eigenvalue contributes nothing, so summing every value gives the
    usual definition that skips the smallest one.  The edge count is recovered
    from the trace (``sum mu = 2|E|``).
    """
    vals = spectrum.clamped()
    total = float(np.sum(np.sqrt(vals)))
    n = len(vals)
    n_edges = int(round(float(np.sum(vals)) / 2.0))
    return LelValue(total, total / n if n else 0.0, n, n_edges)


def lel_of_graph(g: Graph, cap: int = DEFAULT_CAP) -> LelValue:
    return lel(numeric_spectrum(g, cap=cap))


def lel_bounds(n_vertices: int, n_edges: int) -> tuple[float, float]:
    """``(sqrt(2 m), sqrt(2) m)`` for a simple graph with ``m`` edges."""
    if n_edges < 0:
        raise ValueError("edge count must be non-negative")
    return math.sqrt(2.0 * n_edges), math.sqrt(2.0) * n_edges


def lower_bound_extremal(g: Graph) -> bool:
    """True for the graphs attaining the lower bound: no edges, or a single edge."""
    return g.n_edges <= 1


def upper_bound_extremal(g: Graph) -> bool:
    """True for the graphs attaining the upper bound: disjoint edges plus isolated vertices."""
    return max(g.degrees, default=0) <= 1


@dataclass(frozen=True)
class PerturbationReport:
    lel_g: LelValue
    lel_h: LelValue
    lel_diff_graph: LelValue
    lower_margin: float
    upper_margin: float

    @property
    def holds(self) -> bool:
        return self.lower_margin >= -MARGIN_TOL and self.upper_margin >= -MARGIN_TOL


def check_perturbation(g: Graph, h: Graph, cap: int = DEFAULT_CAP) -> PerturbationReport:
    """Evaluate ``|LEL(G) - LEL(H)| <= LEL(G - E(H)) <= LEL(G) + LEL(H)``.

    ``lower_margin`` is ``LEL(G-E(H)) - |LEL(G) - LEL(H)|`` and
    ``upper_margin`` is ``LEL(G) + LEL(H) - LEL(G-E(H))``; both are
    non-negative when the inequality holds.
    """
    try:
        check_spanning_subgraph(g, h)
    except ContainmentError as exc:
        raise ContainmentError(f"H is not a subgraph of G: {exc}") from None
    diff = delete_edges(g, h.edges)
    lg, lh, ld = (lel_of_graph(x, cap) for x in (g, h, diff))
    return PerturbationReport(
        lg, lh, ld,
        ld.value - abs(lg.value - lh.value),
        lg.value + lh.value - ld.value,
    )


@dataclass(frozen=True)
class RatioRow:
    delta: int
    lel_g: float
    lel_h: float
    delta_over_lel: float
    ratio: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return abs(self.ratio - 1.0) <= self.bound + MARGIN_TOL


def ratio_convergence(pairs, cap: int = DEFAULT_CAP) -> list[RatioRow]:
    """LEL ratios of index-aligned graph pairs against the ``2*Delta/LEL(G)`` bound.

    Raises :class:`InvariantError` if any row violates the bound.
    """
    rows = []
    for g, h in pairs:
        if g.n_vertices != h.n_vertices:
            raise ContainmentError("graph pairs must share a vertex index space")
        d = edge_delta(g, h).count
        lg = lel_of_graph(g, cap).value
        if lg == 0.0:
            raise ZeroDivisionError("LEL(G) is zero; the ratio is undefined")
        lh = lg if h == g else lel_of_graph(h, cap).value
        row = RatioRow(d, lg, lh, d / lg, lh / lg, 2.0 * d / lg)
        if not row.within_bound:
            raise InvariantError(
                f"|LEL(H)/LEL(G) - 1| = {abs(row.ratio - 1):.3e} exceeds 2*Delta/LEL(G) = {row.bound:.3e}")
        rows.append(row)
    return rows


# -- seeded random trials ----------------------------------------------------

def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Erdos-Renyi G(n, p) drawn from ``rng``."""
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def random_subgraph(rng: np.random.Generator, g: Graph, keep: float = 0.5) -> Graph:
    """Spanning subgraph keeping each edge of ``g`` independently with probability ``keep``."""
    edges = g.sorted_edges
    mask = rng.random(len(edges)) < keep
    return Graph.from_edges(g.n_vertices, [e for e, k in zip(edges, mask) if k])


def perturbation_trials(trials: int, seed: int, max_vertices: int = 30) -> list[PerturbationReport]:
    """Seeded (graph, subgraph) pairs run through :func:`check_perturbation`.

    Uses ``numpy.random.default_rng(seed)`` (PCG64); vertex counts are drawn
    from ``2..max_vertices``, edge densities and keep rates from ``[0.05, 0.95]``.
    """
    if trials < 0:
        raise ValueError("trial count must be non-negative")
    if max_vertices < 2:
        raise ValueError("need at least two vertices per trial graph")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        n = int(rng.integers(2, max_vertices + 1))
        g = random_graph(rng, n, float(rng.uniform(0.05, 0.95)))
        h = random_subgraph(rng, g, float(rng.uniform(0.05, 0.95)))
        out.append(check_perturbation(g, h))
    return out
