import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import numpy_laplacian_eigs
from lattice_lel.errors import ContainmentError, InvalidSpectrumError
from lattice_lel.graph_core import Graph, disjoint_union, empty_graph, new_cycle, new_path
from lattice_lel.lattice import LatticeSpec, boundary_chain
from lattice_lel.lel import (
    check_perturbation,
    lel,
    lel_bounds,
    lel_of_graph,
    lower_bound_extremal,
    perturbation_trials,
    random_graph,
    random_subgraph,
    ratio_convergence,
    upper_bound_extremal,
)
from lattice_lel.spectral import Spectrum, closed_form_spectrum


def lel_oracle(g):
    mu = numpy_laplacian_eigs(g)
    return float(np.sum(np.sqrt(np.where(np.abs(mu) <= 1e-9, 0.0, mu))))


def test_small_values():
    assert lel(Spectrum([2.0, 0.0], "x")).value == pytest.approx(math.sqrt(2), abs=1e-12)
    assert lel_of_graph(new_cycle(4)).value == pytest.approx(2 + 2 * math.sqrt(2), abs=1e-10)
    assert lel_of_graph(new_path(4)).value == pytest.approx(4.0274, abs=1e-4)


def test_edges_recovered_from_trace():
    v = lel_of_graph(new_cycle(5))
    assert (v.n_vertices, v.n_edges) == (5, 5)


def test_hex_torus_9x9_per_vertex():
    v = lel(closed_form_spectrum(LatticeSpec("hex", "torus", 9, 9)))
    assert abs(v.per_vertex - 1.6437) <= 0.02


def test_invalid_spectrum():
    with pytest.raises(InvalidSpectrumError):
        lel(Spectrum([1.0, -0.1], "x"))


def test_bounds_examples():
    assert lel_bounds(2, 1) == (pytest.approx(math.sqrt(2)), pytest.approx(math.sqrt(2)))
    assert lel_bounds(5, 0) == (0.0, 0.0)


@st.composite
def graphs(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_bounds_hold_and_equality_cases(g):
    v = lel_of_graph(g).value
    lo, hi = lel_bounds(g.n_vertices, g.n_edges)
    assert lo - 1e-9 <= v <= hi + 1e-9
    assert (abs(v - lo) <= 1e-9) == lower_bound_extremal(g)
    assert (abs(v - hi) <= 1e-9) == upper_bound_extremal(g)
    assert v == pytest.approx(lel_oracle(g), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(graphs(8), graphs(8))
def test_additive_over_disjoint_union(g, h):
    assert lel_of_graph(disjoint_union(g, h)).value == pytest.approx(
        lel_of_graph(g).value + lel_of_graph(h).value, abs=1e-9)


def test_perturbation_identity_margins():
    g = new_cycle(6)
    r = check_perturbation(g, g)
    assert r.lel_diff_graph.value == 0.0
    assert r.lower_margin == pytest.approx(0.0, abs=1e-12)
    assert r.upper_margin == pytest.approx(2 * r.lel_g.value)
    assert r.holds


def test_perturbation_containment():
    with pytest.raises(ContainmentError):
        check_perturbation(new_path(4), new_cycle(4))


def test_random_gnp_trials():
    rng = np.random.default_rng(7)
    for _ in range(100):
        g = random_graph(rng, 10, 0.4)
        r = check_perturbation(g, random_subgraph(rng, g))
        assert r.lower_margin >= -1e-8 and r.upper_margin >= -1e-8


def test_random_graph_matches_density():
    rng = np.random.default_rng(0)
    g = random_graph(rng, 200, 0.1)
    assert abs(g.n_edges / (200 * 199 / 2) - 0.1) < 0.01


def test_perturbation_trials_seeded():
    a = perturbation_trials(5, seed=3)
    b = perturbation_trials(5, seed=3)
    assert [r.lower_margin for r in a] == [r.lower_margin for r in b]
    assert all(r.holds for r in a)


def test_ratio_identity():
    g = new_cycle(5)
    (row,) = ratio_convergence([(g, g)])
    assert (row.delta_over_lel, row.ratio) == (0.0, 1.0)


def test_ratio_zero_lel():
    with pytest.raises(ZeroDivisionError):
        ratio_convergence([(empty_graph(3), empty_graph(3))])


def test_square_chain_ratios_approach_one():
    devs = []
    for k in (6, 10, 14):
        t, c, f = boundary_chain(LatticeSpec("square", "torus", k, k))
        rows = ratio_convergence([(t, c), (t, f)])
        assert all(r.within_bound for r in rows)
        devs.append(abs(rows[1].ratio - 1))
    assert devs[0] > devs[1] > devs[2]


def test_lel_matches_networkx_star():
    g = Graph.from_edges(5, nx.star_graph(4).edges())
    assert lel_of_graph(g).value == pytest.approx(math.sqrt(5) + 3.0, abs=1e-10)
