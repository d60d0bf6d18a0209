"""Laplacian-energy-like invariant (LEL) of lattice graphs.

LEL(G) is the sum of square roots of the Laplacian eigenvalues of G.  The
package builds finite lattice patches, computes their spectra in closed
form or with a Jacobi eigensolver, and evaluates the per-vertex asymptotic
constants by extrapolated quadrature.
"""

from .asymptotics import Rule, Weighting, converge_sweep, kdim_constant, quad_constant
from .graph_core import Graph, cartesian_product, line_graph, new_cycle, new_path, subdivision
from .jacobi import BACKEND, COMPILED_AVAILABLE, jacobi_eigh
from .lattice import Boundary, Family, LatticeSpec, boundary_chain, build
from .lel import check_perturbation, lel, lel_bounds, lel_of_graph, ratio_convergence
from .spectral import Spectrum, closed_form_spectrum, numeric_spectrum, spectrum_compare

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "COMPILED_AVAILABLE", "Boundary", "Family", "Graph", "LatticeSpec", "Rule", "Spectrum",
    "Weighting", "boundary_chain", "build", "cartesian_product", "check_perturbation", "closed_form_spectrum",
    "converge_sweep", "jacobi_eigh", "kdim_constant", "lel", "lel_bounds", "lel_of_graph", "line_graph",
    "new_cycle", "new_path", "numeric_spectrum", "quad_constant", "ratio_convergence", "spectrum_compare",
    "subdivision",
]
