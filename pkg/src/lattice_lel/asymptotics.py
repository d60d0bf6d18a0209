"""Asymptotic per-vertex LEL constants by quadrature, and finite-size sweeps.

Each lattice family has a per-vertex integrand on the unit square of
momenta ``(x, y)``: the sum over its dispersive bands of ``sqrt(mu(x, y))``
divided by the vertices per unit cell, plus the contribution of flat bands.
The asymptotic constant is its integral over ``[0, 1]^2``.

The default rule is the composite midpoint rule.  Its nodes are shifted
lattice momenta, so the integrand is never evaluated at the zero mode where
it has a cone-shaped kink.  For a kink in ``d`` dimensions the periodic
midpoint error decays like ``h**(d+1)``, which sets the leading Richardson
order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import CapacityError, InvalidSizeError, NoClosedFormError
from .lattice import Boundary, Family, LatticeSpec, build
from .lel import lel
from .report import csv_text
from .spectral import DEFAULT_CAP, closed_form_spectrum, numeric_spectrum

SQRT2 = math.sqrt(2.0)


class Rule(str, enum.Enum):
    MIDPOINT = "midpoint"
    GAUSS = "gauss"


class Weighting(str, enum.Enum):
    """Branch weighting for the J and TKL integrands.

    ``SPECTRUM`` follows from the Laplacian eigenvalues ``(5 +/- r)/2`` and is
    what the constructed graphs obey.  ``PUBLISHED`` uses the prefactors
    1/12 and 1/18 of the literature values and is kept for comparison.
    """

    SPECTRUM = "spectrum"
    PUBLISHED = "published"


VERTICES_PER_CELL = {
    Family.SQUARE: 1,
    Family.HEXAGONAL: 2,
    Family.J_3_12_12: 6,
    Family.TRIANGULAR_KAGOME: 9,
    Family.M_33_42: 2,
}


def _hex_modulus(x, y):
    tx, ty = 2.0 * np.pi * x, 2.0 * np.pi * y
    return np.sqrt(np.maximum(3.0 + 2.0 * np.cos(tx) + 2.0 * np.cos(ty) + 2.0 * np.cos(tx + ty), 0.0))


def _branch_sum(s):
    out = 0.0
    for inner in (1.0, -1.0):
        r = np.sqrt(np.maximum(13.0 + inner * 4.0 * s, 0.0))
        out = out + np.sqrt(5.0 + r) + np.sqrt(np.maximum(5.0 - r, 0.0))
    return out


@dataclass(frozen=True)
class Integrand:
    family: Family
    weighting: Weighting | None
    func: Callable = field(repr=False)
    formula: str = ""

    def __call__(self, x, y):
        return self.func(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))


def integrand(family, weighting=None) -> Integrand:
    """Per-vertex LEL integrand of ``family`` over ``[0, 1]^2``."""
    family = Family(family)
    if family is Family.SQUARE:
        def f(x, y):
            return np.sqrt(np.maximum(4.0 - 2.0 * np.cos(2 * np.pi * x) - 2.0 * np.cos(2 * np.pi * y), 0.0))
        return Integrand(family, None, f, "sqrt(4 - 2cos 2pi x - 2cos 2pi y)")
    if family is Family.HEXAGONAL:
        def f(x, y):
            s = _hex_modulus(x, y)
            return 0.5 * (np.sqrt(3.0 + s) + np.sqrt(np.maximum(3.0 - s, 0.0)))
        return Integrand(family, None, f, "(sqrt(3+s) + sqrt(3-s)) / 2")
    if family is Family.M_33_42:
        def f(x, y):
            s = _hex_modulus(x, y)
            base = 5.0 - 2.0 * np.cos(2 * np.pi * x)
            return 0.5 * (np.sqrt(np.maximum(base - s, 0.0)) + np.sqrt(base + s))
        return Integrand(family, None, f, "(sqrt(5 - 2cos 2pi x - s) + sqrt(5 - 2cos 2pi x + s)) / 2")

    weighting = Weighting(weighting or Weighting.SPECTRUM)
    if family is Family.J_3_12_12:
        w = 1.0 / (6.0 * SQRT2) if weighting is Weighting.SPECTRUM else 1.0 / 12.0
        flat = (math.sqrt(3.0) + math.sqrt(5.0)) / 6.0
    elif family is Family.TRIANGULAR_KAGOME:
        w = 1.0 / (9.0 * SQRT2) if weighting is Weighting.SPECTRUM else 1.0 / 18.0
        flat = (math.sqrt(3.0) + math.sqrt(5.0)) / 9.0 + math.sqrt(6.0) / 3.0
    else:  # pragma: no cover
        raise ValueError(f"unknown family {family!r}")

    def f(x, y):
        return w * _branch_sum(_hex_modulus(x, y)) + flat
    return Integrand(family, weighting, f, f"{w:.6g} * sum sqrt(5 +/- sqrt(13 +/- 4s)) + {flat:.6g}")


# -- quadrature ---------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(4)


def _nodes_1d(n: int, rule: Rule) -> tuple[np.ndarray, np.ndarray]:
    if rule is Rule.MIDPOINT:
        return (np.arange(n) + 0.5) / n, np.full(n, 1.0 / n)
    panels = n // 4
    left = np.arange(panels)[:, None] / panels
    x = (left + (_GL_NODES[None, :] + 1.0) / (2.0 * panels)).ravel()
    w = np.tile(_GL_WEIGHTS / (2.0 * panels), panels)
    return x, w


def _tensor_integral(f: Callable, n: int, rule: Rule, block: int = 256) -> float:
    """Integral over [0,1]^2 summed block by block in a fixed order."""
    x, w = _nodes_1d(n, rule)
    total = 0.0
    for start in range(0, n, block):
        xs = x[start:start + block, None]
        vals = f(xs, x[None, :])
        total += float(np.sum((w[start:start + block, None] * vals) @ w))
    return total


def _richardson(values: list[float], order: int) -> tuple[float, float]:
    """Richardson table over successive doublings with orders order, order+1, ...

    Returns the most extrapolated value and the change it made relative to the
    previous diagonal entry.
    """
    table = [list(values)]
    for j in range(1, len(values)):
        prev = table[-1]
        factor = 2.0 ** (order + j - 1) - 1.0
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / factor for i in range(len(prev) - 1)])
    best = table[-1][-1]
    before = table[-2][-1] if len(table) > 1 else best
    return best, abs(best - before)


@dataclass(frozen=True)
class QuadratureResult:
    constant_h: float
    error_estimate: float
    grid_points_per_axis: int
    rule: Rule
    richardson_levels: int
    family: str = ""
    weighting: str | None = None
    level_values: tuple = ()


def _check_grid(points: int, levels: int, rule: Rule, minimum: int = 8) -> None:
    if points < minimum or points & (points - 1):
        raise InvalidSizeError(f"points per axis must be a power of two >= {minimum}, got {points}")
    if levels < 1:
        raise InvalidSizeError(f"need at least one Richardson level, got {levels}")
    coarsest = points >> levels
    if coarsest < (4 if rule is Rule.GAUSS else 1):
        raise InvalidSizeError(f"{levels} levels below {points} points leaves a grid of {coarsest}")


def _extrapolate(evaluate, points: int, levels: int, order: int):
    grids = [points >> (levels - k) for k in range(levels + 1)]
    values = [evaluate(g) for g in grids]
    best, change = _richardson(values, order)
    err = max(abs(values[-1] - values[-2]), change)
    return best, err, tuple(values)


DEFAULT_GRID = 1024
DEFAULT_LEVELS = 3


def quad_constant(family, points_per_axis: int = DEFAULT_GRID, rule=Rule.MIDPOINT,
                  levels: int = DEFAULT_LEVELS, weighting=None) -> QuadratureResult:
    """Asymptotic per-vertex LEL of ``family`` by extrapolated tensor quadrature."""
    rule = Rule(rule)
    _check_grid(points_per_axis, levels, rule)
    f = integrand(family, weighting)
    best, err, values = _extrapolate(lambda n: _tensor_integral(f, n, rule), points_per_axis, levels, order=3)
    return QuadratureResult(best, err, points_per_axis, rule, levels, f.family.value,
                            f.weighting.value if f.weighting else None, values)


KDIM_MAX_EVALS = 10**8
KDIM_DEFAULT_POINTS = {1: 1 << 16, 2: 1024, 3: 256, 4: 64}


def _kdim_midpoint(k: int, n: int) -> float:
    c = 2.0 - 2.0 * np.cos(2.0 * np.pi * (np.arange(n) + 0.5) / n)
    if k == 1:
        return float(np.mean(np.sqrt(c)))
    rest = c
    for _ in range(k - 2):
        rest = (rest[..., None] + c).reshape(-1)
    # outer loop over the first axis keeps memory at n**(k-1)
    total = 0.0
    for ci in c:
        total += float(np.sum(np.sqrt(ci + rest)))
    return total / n**k


def kdim_constant(k: int, points_per_axis: int | None = None, levels: int = 2) -> QuadratureResult:
    """Per-vertex LEL of the k-dimensional hypercubic lattice, ``1 <= k <= 4``."""
    if not 1 <= k <= 4:
        raise InvalidSizeError(f"dimension k must be in 1..4, got {k}")
    n = points_per_axis or KDIM_DEFAULT_POINTS[k]
    if float(n) ** k > KDIM_MAX_EVALS:
        raise InvalidSizeError(f"{n}^{k} grid exceeds the {KDIM_MAX_EVALS:.0e} evaluation budget")
    _check_grid(n, levels, Rule.MIDPOINT)
    best, err, values = _extrapolate(lambda g: _kdim_midpoint(k, g), n, levels, order=k + 1)
    return QuadratureResult(best, err, n, Rule.MIDPOINT, levels, f"hypercubic-{k}d", None, values)


def torus_lattice_sum(family, cells: int, weighting=None) -> float:
    """Mean of the integrand on the unshifted ``cells`` x ``cells`` grid ``k/cells``.

    For a torus with that many unit cells per direction this equals its
    per-vertex LEL exactly.
    """
    f = integrand(family, weighting)
    x = np.arange(cells) / cells
    return float(np.mean(f(x[:, None], x[None, :])))


# -- finite-size sweeps -------------------------------------------------------

TREND_SLACK = 1.5


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    n: int
    boundary: str
    n_vertices: int
    per_vertex_lel: float
    deviation: float
    method: str


@dataclass(frozen=True)
class ConvergenceReport:
    family: str
    constant_h: float
    rows: tuple

    def deviations(self, boundary) -> list[float]:
        b = Boundary(boundary).value
        return [r.deviation for r in self.rows if r.boundary == b]

    def trend_ok(self, boundary, slack: float = TREND_SLACK) -> bool:
        """Deviation never grows by more than ``slack`` from one size to the next."""
        d = self.deviations(boundary)
        return all(b <= slack * a + 1e-12 for a, b in zip(d, d[1:]))

    def to_csv(self) -> str:
        return csv_text(["m", "n", "boundary", "per_vertex", "deviation"],
                        ((r.m, r.n, r.boundary, r.per_vertex_lel, r.deviation) for r in self.rows))

    def to_gnuplot(self) -> str:
        """Two-column ``n_vertices deviation`` blocks, one gnuplot index per boundary."""
        out = [f"# family {self.family}; constant {self.constant_h:.12g}"]
        for b in dict.fromkeys(r.boundary for r in self.rows):
            out.append(f"# boundary {b}")
            out.extend(f"{r.n_vertices} {r.deviation:.12g}" for r in self.rows if r.boundary == b)
            out.append("")
            out.append("")
        return "\n".join(out)


def finite_per_vertex(spec: LatticeSpec, cap: int = DEFAULT_CAP) -> tuple[float, str]:
    """Per-vertex LEL of a finite instance: closed form when one exists, else numeric."""
    try:
        spectrum = closed_form_spectrum(spec)
        method = "closed_form"
    except NoClosedFormError:
        if spec.n_vertices() > cap:
            raise CapacityError(
                f"{spec.tag} has {spec.n_vertices()} vertices, above the eigensolver cap {cap}, and no closed form")
        spectrum = numeric_spectrum(build(spec), cap=cap, subject=spec.tag)
        method = "numeric"
    return lel(spectrum).per_vertex, method


def converge_sweep(family, sizes, boundaries=(Boundary.TORUS, Boundary.CYLINDER, Boundary.FREE),
                   constant: float | None = None, cap: int = DEFAULT_CAP, weighting=None) -> ConvergenceReport:
    family = Family(family)
    if constant is None:
        constant = quad_constant(family, weighting=weighting).constant_h
    rows = []
    for m, n in sorted(sizes, key=lambda s: (s[0] * s[1], s)):
        for b in (Boundary(x) for x in boundaries):
            spec = LatticeSpec(family, b, m, n)
            pv, method = finite_per_vertex(spec, cap)
            rows.append(ConvergenceRow(m, n, b.value, spec.n_vertices(), pv, abs(pv - constant), method))
    return ConvergenceReport(family.value, constant, tuple(rows))
