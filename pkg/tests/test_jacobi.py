import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conftest import BACKENDS
from lattice_lel.errors import InvariantError
from lattice_lel.jacobi import COMPILED_AVAILABLE, jacobi_eigh, round_robin_steps
from lattice_lel.lattice import LatticeSpec, build
from lattice_lel.spectral import laplacian_matrix


@pytest.mark.parametrize("n", [1, 2, 3, 6, 7, 16])
def test_round_robin_covers_every_pair_once(n):
    steps = round_robin_steps(n)
    pairs = [tuple(p) for step in steps for p in step if p[0] >= 0]
    assert len(pairs) == n * (n - 1) // 2
    assert set(pairs) == {(i, j) for i in range(n) for j in range(i + 1, n)}
    for step in steps:
        used = [x for p in step if p[0] >= 0 for x in p]
        assert len(used) == len(set(used))


def test_known_2x2(backend):
    vals, vecs, info = jacobi_eigh([[2.0, 1.0], [1.0, 2.0]], vectors=True, backend=backend)
    assert sorted(vals) == pytest.approx([1.0, 3.0], abs=1e-14)
    assert info.backend == backend


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14).flatmap(lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10))))
def test_random_symmetric_against_lapack(a):
    a = a + a.T
    ref = np.linalg.eigvalsh(a)
    scale = max(1.0, np.abs(ref).max())
    for b in BACKENDS:
        vals, vecs, _ = jacobi_eigh(a, vectors=True, backend=b)
        assert np.allclose(np.sort(vals), ref, atol=1e-10 * scale)
        assert np.abs(a @ vecs - vecs * vals).max() <= 1e-7 * scale
        assert np.allclose(vecs.T @ vecs, np.eye(len(a)), atol=1e-10)


def test_lattice_laplacian_residual(backend):
    lap = laplacian_matrix(build(LatticeSpec("hex", "free", 4, 4)))
    vals, vecs, info = jacobi_eigh(lap, vectors=True, backend=backend)
    assert np.abs(lap @ vecs - vecs * vals).max() <= 1e-7
    assert info.off_norm <= 1e-12 * info.frobenius_norm


@pytest.mark.skipif(not COMPILED_AVAILABLE, reason="compiled extension not built")
def test_backends_agree_bitwise():
    lap = laplacian_matrix(build(LatticeSpec("tkl", "cyl", 2, 2)))
    vp, _, ip = jacobi_eigh(lap, backend="python")
    vc, _, ic = jacobi_eigh(lap, backend="compiled")
    assert ip.sweeps == ic.sweeps
    assert np.array_equal(vp, vc)


def test_rejects_non_symmetric():
    with pytest.raises(InvariantError):
        jacobi_eigh([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(InvariantError):
        jacobi_eigh(np.zeros((2, 3)))


def test_non_convergence_reported(backend):
    rng = np.random.default_rng(1)
    a = rng.normal(size=(20, 20))
    with pytest.raises(InvariantError):
        jacobi_eigh(a + a.T, max_sweeps=1, backend=backend)


def test_does_not_modify_input():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    jacobi_eigh(a)
    assert a[0, 1] == 1.0
