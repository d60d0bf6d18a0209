"""Laplacian spectra: closed forms per lattice family and a numeric oracle.

Closed forms use momenta ``alpha_i = 2*pi*i/(m+1)``, ``beta_j = 2*pi*j/(n+1)``
(hexagonal-derived families) and the modulus of the hexagonal Bloch
coupling ``|1 + e^{i a} + e^{i b}| = sqrt(3 + 2cos a + 2cos b + 2cos(a+b))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, InvalidSpectrumError, InvariantError, NoClosedFormError, ShapeError
from .graph_core import Graph
from .jacobi import jacobi_eigh
from .lattice import Boundary, Family, LatticeSpec
from .report import csv_text, dumps_json

TOL_EIG = 1e-9
DEFAULT_CAP = 4096

CLOSED_FORM = "closed_form"
NUMERIC = "numeric"


@dataclass(frozen=True)
class Spectrum:
    """Laplacian eigenvalues stored in descending order.

    Values are kept as computed; :meth:`clamped` sets every value with
    ``|mu| <= TOL_EIG`` to zero and rejects anything more negative.
    """

    values: np.ndarray
    source: str
    subject: str = "graph"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=np.float64))[::-1].copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def clamped(self, tol: float = TOL_EIG) -> np.ndarray:
        vals = self.values
        if len(vals) and vals[-1] < -tol:
            raise InvalidSpectrumError(f"eigenvalue {vals[-1]:.3e} is below -{tol:g}; not a Laplacian spectrum")
        # round-off leaves the zero mode at about +-1e-16, whose sqrt would be 1e-8
        return np.where(vals <= tol, 0.0, vals)

    def zero_multiplicity(self, tol: float = TOL_EIG) -> int:
        return int(np.sum(np.abs(self.values) <= tol))


def laplacian_matrix(g: Graph) -> np.ndarray:
    n = g.n_vertices
    lap = np.zeros((n, n))
    if g.n_edges:
        e = np.array(g.sorted_edges)
        lap[e[:, 0], e[:, 1]] = -1.0
        lap[e[:, 1], e[:, 0]] = -1.0
    lap[np.diag_indices(n)] = g.degrees
    return lap


def numeric_spectrum(g: Graph, cap: int = DEFAULT_CAP, subject: str = "graph", backend: str | None = None) -> Spectrum:
    """Laplacian spectrum of ``g`` by cyclic Jacobi on the dense matrix."""
    n = g.n_vertices
    if n < 1:
        raise CapacityError("numeric spectrum needs at least one vertex")
    if n > cap:
        raise CapacityError(f"graph has {n} vertices, above the eigensolver cap of {cap}")
    lap = laplacian_matrix(g)
    vals, _, info = jacobi_eigh(lap, backend=backend)
    trace = 2.0 * g.n_edges
    if abs(vals.sum() - trace) > 1e-8 * max(trace, 1.0):
        raise InvariantError(f"eigenvalue sum {vals.sum():.12g} differs from 2|E| = {trace}")
    return Spectrum(vals, NUMERIC, subject, {"sweeps": info.sweeps, "backend": info.backend})


def _hex_modulus(a, b):
    return np.sqrt(np.maximum(3.0 + 2.0 * np.cos(a) + 2.0 * np.cos(b) + 2.0 * np.cos(a + b), 0.0))


def _hex_momenta(m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    a = 2.0 * np.pi * np.arange(m + 1) / (m + 1)
    b = 2.0 * np.pi * np.arange(n + 1) / (n + 1)
    A, B = np.meshgrid(a, b, indexing="ij")
    return A.ravel(), B.ravel()


def path_eigenvalues(n: int) -> np.ndarray:
    return 2.0 - 2.0 * np.cos(np.pi * np.arange(n) / n)


def cycle_eigenvalues(n: int) -> np.ndarray:
    return 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(n) / n)


def line_subdivision_branches(m: int, n: int, divisor: float = 2.0) -> np.ndarray:
    """Dispersive eigenvalues ``(5 +/- sqrt(13 +/- 4 s)) / divisor`` shared by J and TKL.

    ``divisor=2`` is the true Laplacian spectrum; other divisors exist only so
    the constant audit can test alternative readings.
    """
    s = _hex_modulus(*_hex_momenta(m, n))
    out = []
    for inner in (1.0, -1.0):
        r = np.sqrt(np.maximum(13.0 + inner * 4.0 * s, 0.0))
        out.append((5.0 + r) / divisor)
        out.append((5.0 - r) / divisor)
    return np.concatenate(out)


def flat_bands(family: Family, m: int, n: int) -> np.ndarray:
    cells = (m + 1) * (n + 1)
    if family is Family.J_3_12_12:
        return np.repeat([5.0, 3.0], cells)
    if family is Family.TRIANGULAR_KAGOME:
        return np.concatenate([np.full(3 * cells, 6.0), np.full(cells, 5.0), np.full(cells, 3.0)])
    raise NoClosedFormError(f"{family.value} has no flat bands")


def m3342_eigenvalues(m: int, n: int, diagonal_angle: str = "column") -> np.ndarray:
    """``5 - 2cos(theta_d) +/- sqrt(3 + 2cos(x) + 2cos(y) + 2cos(x+y))`` on the
    ``m`` x ``n`` momentum grid ``x = 2 pi i/m``, ``y = 2 pi j/n``.

    ``theta_d`` is the column momentum ``y`` (matches the constructed graph);
    ``diagonal_angle="row"`` uses ``x`` instead and is kept for the audit.
    """
    x = 2.0 * np.pi * np.arange(m) / m
    y = 2.0 * np.pi * np.arange(n) / n
    X, Y = np.meshgrid(x, y, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    d = {"column": Y, "row": X}[diagonal_angle]
    s = _hex_modulus(X, Y)
    base = 5.0 - 2.0 * np.cos(d)
    return np.concatenate([base + s, base - s])


def closed_form_spectrum(spec: LatticeSpec) -> Spectrum:
    fam, bnd, m, n = spec.family, spec.boundary, spec.m, spec.n
    if fam is Family.SQUARE:
        first = cycle_eigenvalues(m) if bnd is Boundary.TORUS else path_eigenvalues(m)
        second = path_eigenvalues(n) if bnd is Boundary.FREE else cycle_eigenvalues(n)
        vals = (first[:, None] + second[None, :]).ravel()
    elif bnd is not Boundary.TORUS:
        raise NoClosedFormError(
            f"no closed-form spectrum for {fam.value} with {bnd.value} boundary; use numeric_spectrum(build(spec))")
    elif fam is Family.HEXAGONAL:
        s = _hex_modulus(*_hex_momenta(m, n))
        vals = np.concatenate([3.0 + s, 3.0 - s])
    elif fam in (Family.J_3_12_12, Family.TRIANGULAR_KAGOME):
        vals = np.concatenate([flat_bands(fam, m, n), line_subdivision_branches(m, n)])
    elif fam is Family.M_33_42:
        vals = m3342_eigenvalues(m, n)
    else:  # pragma: no cover
        raise NoClosedFormError(fam)
    return Spectrum(vals, CLOSED_FORM, spec.tag)


@dataclass(frozen=True)
class SpectrumComparison:
    max_deviation: float
    index: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol


def spectrum_compare(a: Spectrum, b: Spectrum, tol: float = 1e-8) -> SpectrumComparison:
    if len(a) != len(b):
        raise ShapeError(f"spectra have different lengths ({len(a)} vs {len(b)})")
    if len(a) == 0:
        return SpectrumComparison(0.0, -1, tol)
    diff = np.abs(a.values - b.values)
    k = int(np.argmax(diff))
    return SpectrumComparison(float(diff[k]), k, tol)


def regular_adjacency_to_laplacian(adjacency_eigs, r: int) -> np.ndarray:
    """Laplacian spectrum of an r-regular graph from its adjacency spectrum."""
    return r - np.asarray(adjacency_eigs, dtype=np.float64)


def spectrum_to_csv(spectrum: Spectrum) -> str:
    return csv_text(["index", "eigenvalue"], ((k, float(v)) for k, v in enumerate(spectrum.values)))


def spectrum_to_json(spectrum: Spectrum, tolerance: float = TOL_EIG, extra: dict | None = None) -> str:
    doc = {
        "subject": spectrum.subject,
        "source": spectrum.source,
        "tolerance": tolerance,
        "n": len(spectrum),
        "eigenvalues": [float(v) for v in spectrum.values],
    }
    if extra:
        doc.update(extra)
    return dumps_json(doc)
