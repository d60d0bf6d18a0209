"""Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

Two interchangeable backends are provided:

``compiled``
    Cython kernel (``_jacobi_ext``).
``python``
    NumPy fallback applying each step's disjoint rotations as one
    vectorised update.

Both visit the n(n-1)/2 pivots of a sweep in the same round-robin
(circle-method) order, n/2 disjoint rotations per step, so they run the
same iteration and agree to rounding.

The compiled kernel is used when it imports; setting the environment
variable ``LATTICE_LEL_PURE_PYTHON=1`` forces the fallback.  Both are
deterministic for a fixed input.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvariantError

try:
    from ._jacobi_ext import jacobi_sweeps as _compiled_sweeps
except ImportError:  # extension not built
    _compiled_sweeps = None

COMPILED_AVAILABLE = _compiled_sweeps is not None
BACKEND = "compiled" if COMPILED_AVAILABLE and not os.environ.get("LATTICE_LEL_PURE_PYTHON") else "python"

DEFAULT_REL_TOL = 1e-12
DEFAULT_MAX_SWEEPS = 60


@dataclass(frozen=True)
class JacobiInfo:
    backend: str
    sweeps: int
    off_norm: float
    frobenius_norm: float


@lru_cache(maxsize=16)
def round_robin_steps(n: int) -> np.ndarray:
    """Pivot pairs of the circle-method tournament on n indices.

    Shape ``(steps, n_pairs, 2)``; each step holds disjoint pairs ``(p, q)``
    with ``p < q``; slots paired with the padding index are ``-1``.  One
    sweep over all steps visits every pair exactly once.
    """
    players = list(range(n + (n % 2)))
    size = len(players)
    out = np.full((max(size - 1, 0), size // 2, 2), -1, dtype=np.intp)
    for st in range(size - 1):
        for i in range(size // 2):
            x, y = players[i], players[size - 1 - i]
            if x < n and y < n:
                out[st, i] = (min(x, y), max(x, y))
        players = [players[0], players[-1]] + players[1:-1]
    out.setflags(write=False)
    return out


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def _python_sweeps(a: np.ndarray, v: np.ndarray | None, steps: np.ndarray,
                   target: float, max_sweeps: int) -> tuple[int, float]:
    pairs = [(st[st[:, 0] >= 0, 0], st[st[:, 0] >= 0, 1]) for st in steps]
    sweep = 0
    off = _off_norm(a)
    while off > target and sweep < max_sweeps:
        sweep += 1
        for P, Q in pairs:
            apq = a[P, Q]
            active = apq != 0.0
            if not active.any():
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            # tiny pivots overflow theta to inf, which correctly gives t = 0
            with np.errstate(over="ignore", divide="ignore"):
                theta = (a[Q, Q] - a[P, P]) / (2.0 * apq)
                t = 1.0 / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta < 0.0] *= -1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            dp = a[P, P] - t * apq
            dq = a[Q, Q] + t * apq
            rp, rq = a[P, :], a[Q, :]
            a[P, :] = c[:, None] * rp - s[:, None] * rq
            a[Q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, P], a[:, Q]
            a[:, P] = cp * c - cq * s
            a[:, Q] = cp * s + cq * c
            a[P, P] = dp
            a[Q, Q] = dq
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            if v is not None:
                vp, vq = v[:, P], v[:, Q]
                v[:, P] = vp * c - vq * s
                v[:, Q] = vp * s + vq * c
        off = _off_norm(a)
    return sweep, off


def jacobi_eigh(matrix, *, vectors: bool = False, rel_tol: float = DEFAULT_REL_TOL,
                max_sweeps: int = DEFAULT_MAX_SWEEPS, backend: str | None = None):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors_or_None, info)``.  Eigenvalues come in
    diagonal order (unsorted); eigenvector k is column k.  Iteration stops when
    the off-diagonal Frobenius norm is at most ``rel_tol * ||A||_F``.
    """
    a = np.array(matrix, dtype=np.float64, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvariantError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise InvariantError("matrix is not symmetric")
    backend = backend or BACKEND
    if backend == "compiled" and not COMPILED_AVAILABLE:
        raise RuntimeError("compiled Jacobi backend requested but the extension is not built")
    n = a.shape[0]
    fro = float(np.linalg.norm(a))
    target = rel_tol * fro
    v = np.eye(n) if vectors else None
    steps = round_robin_steps(n)
    if backend == "compiled":
        sweeps, off = _compiled_sweeps(a, v, np.ascontiguousarray(steps), target, max_sweeps)
    elif backend == "python":
        sweeps, off = _python_sweeps(a, v, steps, target, max_sweeps)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if off > target:
        raise InvariantError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e} > {target:.3e})")
    return np.diag(a).copy(), v, JacobiInfo(backend, int(sweeps), float(off), fro)
