"""Adjudicate closed-form spectra and published constants against the eigensolver.

The eigensolver applied to an explicitly constructed graph is the ground
truth.  Each check compares candidate closed forms with it, keeps the ones
that agree to ``ORACLE_TOL`` and then evaluates the asymptotic constants
implied by the winning candidate next to the published values.
"""

from __future__ import annotations

import numpy as np

from .asymptotics import Weighting, quad_constant, torus_lattice_sum
from .graph_core import Graph, delete_edges
from .lattice import Boundary, Family, LatticeSpec, _m3342_torus, _cut_set, build
from .lel import lel
from .spectral import (
    CLOSED_FORM,
    Spectrum,
    closed_form_spectrum,
    flat_bands,
    line_subdivision_branches,
    m3342_eigenvalues,
    numeric_spectrum,
    spectrum_compare,
)

ORACLE_TOL = 1e-8
CONSTANT_TOL = 5e-4

# Published per-vertex constants and total-LEL coefficients (per unit cell).
PUBLISHED_PER_VERTEX = {
    Family.SQUARE: 1.9162,
    Family.HEXAGONAL: 1.6437,
    Family.J_3_12_12: 1.3375,
    Family.TRIANGULAR_KAGOME: 1.7082,
    Family.M_33_42: 2.1525,
}
PUBLISHED_TOTAL_PER_CELL = {
    Family.HEXAGONAL: 3.2714,
    Family.J_3_12_12: 8.0250,
    Family.TRIANGULAR_KAGOME: 15.3738,
    Family.M_33_42: 4.3050,
}
VERTICES_PER_UNIT = {
    Family.HEXAGONAL: 2,
    Family.J_3_12_12: 6,
    Family.TRIANGULAR_KAGOME: 9,
    Family.M_33_42: 2,
}

DEFAULT_SIZES = {
    Family.SQUARE: (4, 4),
    Family.HEXAGONAL: (3, 3),
    Family.J_3_12_12: (3, 3),
    Family.TRIANGULAR_KAGOME: (2, 2),
    Family.M_33_42: (3, 4),
}


def _cmp(candidate: np.ndarray, oracle: Spectrum, subject: str) -> float:
    return spectrum_compare(Spectrum(candidate, CLOSED_FORM, subject), oracle, ORACLE_TOL).max_deviation


def _totals(family: Family, h: float) -> dict:
    out = {}
    if family in PUBLISHED_TOTAL_PER_CELL:
        k = VERTICES_PER_UNIT[family]
        pub_pv = PUBLISHED_PER_VERTEX[family]
        pub_total = PUBLISHED_TOTAL_PER_CELL[family]
        out = {
            "vertices_per_unit": k,
            "published_total_coefficient": pub_total,
            "published_per_vertex_times_vertices": k * pub_pv,
            "published_total_consistent": abs(pub_total - k * pub_pv) <= CONSTANT_TOL * k,
            "computed_total_coefficient": k * h,
            "published_total_matches_computed": abs(pub_total - k * h) <= CONSTANT_TOL * k,
        }
    return out


def _constant_section(family: Family, grid: int, weighting=None) -> dict:
    q = quad_constant(family, grid, weighting=weighting)
    published = PUBLISHED_PER_VERTEX[family]
    return {
        "constant": q.constant_h,
        "error_estimate": q.error_estimate,
        "published": published,
        "deviation_from_published": abs(q.constant_h - published),
        "matches_published": abs(q.constant_h - published) <= CONSTANT_TOL,
    }


def audit_square(m: int = 4, n: int = 4, grid: int = 1024) -> dict:
    checks = {}
    for b in Boundary:
        spec = LatticeSpec(Family.SQUARE, b, m, n)
        oracle = numeric_spectrum(build(spec), subject=spec.tag)
        checks[b.value] = spectrum_compare(closed_form_spectrum(spec), oracle, ORACLE_TOL).max_deviation
    section = _constant_section(Family.SQUARE, grid)
    ok = all(d <= ORACLE_TOL for d in checks.values())
    return {
        "family": Family.SQUARE.value,
        "size": [m, n],
        "oracle_deviation": checks,
        "oracle_passed": ok,
        **section,
        "verdict": (
            f"closed forms agree with the eigensolver on all boundaries; constant "
            f"{section['constant']:.4f} {'matches' if section['matches_published'] else 'differs from'} "
            f"the published {section['published']:.4f}"),
    }


def audit_hexagonal(m: int = 3, n: int = 3, grid: int = 1024) -> dict:
    spec = LatticeSpec(Family.HEXAGONAL, Boundary.TORUS, m, n)
    dev = spectrum_compare(closed_form_spectrum(spec), numeric_spectrum(build(spec)), ORACLE_TOL).max_deviation
    section = _constant_section(Family.HEXAGONAL, grid)
    totals = _totals(Family.HEXAGONAL, section["constant"])
    h = section["constant"]
    notes = []
    if not totals["published_total_consistent"]:
        notes.append(
            f"published total coefficient {totals['published_total_coefficient']:.4f} is inconsistent with "
            f"2 x published per-vertex {PUBLISHED_PER_VERTEX[Family.HEXAGONAL]:.4f} = "
            f"{totals['published_per_vertex_times_vertices']:.4f}")
    notes.append(f"self-consistent total: LEL ~ {2 * h:.4f} (m+1)(n+1) from per-vertex {h:.4f}")
    if not section["matches_published"]:
        notes.append(
            f"computed per-vertex {h:.4f} differs from the published {section['published']:.4f} by "
            f"{section['deviation_from_published']:.4f}; the published total "
            f"{'agrees' if totals['published_total_matches_computed'] else 'disagrees'} with the computed one")
    return {
        "family": Family.HEXAGONAL.value,
        "size": [m, n],
        "oracle_deviation": dev,
        "oracle_passed": dev <= ORACLE_TOL,
        **section,
        **totals,
        "verdict": "; ".join(notes),
    }


# divisor applied to (5 +/- sqrt(13 +/- 4 s)); 4 is what the published 1/12, 1/18 prefactors imply
BRANCH_CANDIDATES = {"divide_by_2": 2.0, "divide_by_4": 4.0, "undivided": 1.0}
CANDIDATE_WEIGHTING = {"divide_by_2": Weighting.SPECTRUM, "divide_by_4": Weighting.PUBLISHED}


def audit_line_family(family, m: int | None = None, n: int | None = None, grid: int = 1024,
                      check_cells: int = 64) -> dict:
    """Decide which dispersive-branch normalisation the J or TKL graph obeys."""
    family = Family(family)
    if family not in (Family.J_3_12_12, Family.TRIANGULAR_KAGOME):
        raise ValueError(f"branch audit applies to j312 and tkl, not {family.value}")
    m, n = (m, n) if m and n else DEFAULT_SIZES[family]
    spec = LatticeSpec(family, Boundary.TORUS, m, n)
    oracle = numeric_spectrum(build(spec), subject=spec.tag)
    flats = flat_bands(family, m, n)
    deviations = {
        name: _cmp(np.concatenate([flats, line_subdivision_branches(m, n, div)]), oracle, spec.tag)
        for name, div in BRANCH_CANDIDATES.items()
    }
    winners = [k for k, d in deviations.items() if d <= ORACLE_TOL]
    selected = winners[0] if winners else None
    constants = {w.value: quad_constant(family, grid, weighting=w).constant_h for w in Weighting}
    # finite-size cross-check on a large torus via the oracle-validated closed form
    big = LatticeSpec(family, Boundary.TORUS, check_cells - 1, check_cells - 1)
    big_pv = lel(closed_form_spectrum(big)).per_vertex if selected == "divide_by_2" else None
    published = PUBLISHED_PER_VERTEX[family]
    selected_weighting = CANDIDATE_WEIGHTING.get(selected)
    adjudicated = constants[selected_weighting.value] if selected_weighting else None
    if selected is None:
        verdict = "no candidate branch normalisation agrees with the eigensolver"
    else:
        verdict = (
            f"eigensolver selects branches (5 +/- sqrt(13 +/- 4s)) / {BRANCH_CANDIDATES[selected]:g} "
            f"(max deviation {deviations[selected]:.2e}); adjudicated constant {adjudicated:.4f} "
            f"vs published {published:.4f} (reproduced only by the '{Weighting.PUBLISHED.value}' weighting: "
            f"{constants[Weighting.PUBLISHED.value]:.4f})")
    return {
        "family": family.value,
        "size": [m, n],
        "candidate_deviations": deviations,
        "selected_candidate": selected,
        "selected_weighting": selected_weighting.value if selected_weighting else None,
        "oracle_passed": selected is not None,
        "constants": constants,
        "adjudicated_constant": adjudicated,
        "published": published,
        "published_reproduced_by": [w for w, c in constants.items() if abs(c - published) <= CONSTANT_TOL],
        "large_torus_cells": check_cells,
        "large_torus_per_vertex": big_pv,
        **_totals(family, adjudicated if adjudicated is not None else float("nan")),
        "verdict": verdict,
    }


def build_m3342_mirrored(m: int, n: int, boundary=Boundary.TORUS) -> Graph:
    """3^3.4^2 lattice with the (r, c+1)-(r+1, c) diagonal orientation."""
    g, tags = _m3342_torus(m, n, mirrored=True)
    return delete_edges(g, _cut_set(tags, Boundary(boundary)))


def audit_m3342(m: int | None = None, n: int | None = None, grid: int = 1024) -> dict:
    """Check diagonal orientation and the momentum attached to the ``5 - 2cos`` term."""
    m, n = (m, n) if m and n else DEFAULT_SIZES[Family.M_33_42]
    spec = LatticeSpec(Family.M_33_42, Boundary.TORUS, m, n)
    graphs = {"primary": build(spec), "mirrored": build_m3342_mirrored(m, n)}
    deviations = {}
    for orient, g in graphs.items():
        oracle = numeric_spectrum(g, subject=spec.tag)
        for angle in ("column", "row"):
            deviations[f"{orient}/{angle}"] = _cmp(m3342_eigenvalues(m, n, angle), oracle, spec.tag)
    selected = next((k for k in ("primary/column", "primary/row", "mirrored/column", "mirrored/row")
                     if deviations[k] <= ORACLE_TOL), None)
    section = _constant_section(Family.M_33_42, grid)
    return {
        "family": Family.M_33_42.value,
        "size": [m, n],
        "candidate_deviations": deviations,
        "selected": selected,
        "oracle_passed": selected is not None and selected.startswith("primary"),
        "diagonal_orientation": selected.split("/")[0] if selected else None,
        "diagonal_momentum": selected.split("/")[1] if selected else None,
        **section,
        **_totals(Family.M_33_42, section["constant"]),
        "verdict": (
            f"selected {selected}: the 5 - 2cos term carries the "
            f"{'column (n-direction)' if selected and selected.endswith('column') else 'row-cell'} momentum; "
            f"constant {section['constant']:.4f} vs published {section['published']:.4f}"
            if selected else "no orientation/momentum convention agrees with the eigensolver"),
    }


def audit_family(family, m: int | None = None, n: int | None = None, grid: int = 1024) -> dict:
    family = Family(family)
    if family is Family.SQUARE:
        return audit_square(*(m and n and (m, n) or DEFAULT_SIZES[family]), grid=grid)
    if family is Family.HEXAGONAL:
        return audit_hexagonal(*(m and n and (m, n) or DEFAULT_SIZES[family]), grid=grid)
    if family is Family.M_33_42:
        return audit_m3342(m, n, grid)
    return audit_line_family(family, m, n, grid)


def full_audit(grid: int = 1024) -> dict:
    return {f.value: audit_family(f, grid=grid) for f in Family}


def torus_consistency(family, cells: int, weighting=None) -> float:
    """|closed-form torus per-vertex LEL - unshifted-grid integrand mean| at ``cells`` per side."""
    family = Family(family)
    spec = LatticeSpec(family, Boundary.TORUS, cells, cells) if family in (Family.SQUARE, Family.M_33_42) \
        else LatticeSpec(family, Boundary.TORUS, cells - 1, cells - 1)
    return abs(lel(closed_form_spectrum(spec)).per_vertex - torus_lattice_sum(family, cells, weighting))
