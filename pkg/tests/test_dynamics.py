"""Checks for the eigensolver and the two propagation paths.

The dense-solver battery uses numpy's eigvalsh purely as a cross-check
oracle; the package itself never calls it.
"""
import numpy as np
import pytest

from ringemit.dynamics import (
    BlockDecomposition,
    block_diagonalize,
    eigendecompose_hermitian,
    evolve,
    evolve_rk4,
    propagator,
)
from ringemit.errors import BlockStructureError, NormDriftWarning, NumericError
from ringemit.hilbert import SpaceShape, dagger, kron, pauli
from ringemit.models import ModelId, ModelParams, initial_state, total_hamiltonian


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2.0


def test_eigendecompose_diagonal():
    es = eigendecompose_hermitian(np.diag([3.0, 1.0, 2.0]).astype(complex))
    np.testing.assert_allclose(es.eigenvalues, [1.0, 2.0, 3.0])
    # columns must be permuted standard basis vectors
    np.testing.assert_allclose(np.abs(es.eigenvectors), np.eye(3)[:, [1, 2, 0]])


def test_eigendecompose_pauli_x():
    es = eigendecompose_hermitian(pauli("x").astype(complex))
    np.testing.assert_allclose(es.eigenvalues, [-1.0, 1.0], atol=1e-15)
    recon = (es.eigenvectors * es.eigenvalues) @ dagger(es.eigenvectors)
    np.testing.assert_allclose(recon, pauli("x"), atol=1e-14)


def test_eigendecompose_random_battery():
    rng = np.random.default_rng(2024)
    for dim in (2, 3, 5, 8, 12, 16):
        for _ in range(6):
            h = random_hermitian(rng, dim)
            es = eigendecompose_hermitian(h)
            scale = max(np.max(np.abs(h)), 1.0)
            np.testing.assert_allclose(
                es.eigenvalues, np.linalg.eigvalsh(h), atol=1e-11 * scale
            )
            recon = (es.eigenvectors * es.eigenvalues) @ dagger(es.eigenvectors)
            assert np.max(np.abs(recon - h)) < 1e-11 * scale
            gram = dagger(es.eigenvectors) @ es.eigenvectors
            assert np.max(np.abs(gram - np.eye(dim))) < 1e-12
            assert np.all(np.diff(es.eigenvalues) >= 0.0)


def test_eigendecompose_degenerate_pairs():
    # doubled spectrum; eigenvector columns must stay orthonormal
    rng = np.random.default_rng(5)
    h = kron(np.eye(2), random_hermitian(rng, 6))
    es = eigendecompose_hermitian(h)
    gram = dagger(es.eigenvectors) @ es.eigenvectors
    assert np.max(np.abs(gram - np.eye(12))) < 1e-12
    recon = (es.eigenvectors * es.eigenvalues) @ dagger(es.eigenvectors)
    assert np.max(np.abs(recon - h)) < 1e-11


def test_eigendecompose_scale_invariance():
    rng = np.random.default_rng(17)
    h = random_hermitian(rng, 8)
    for factor in (1e-8, 1e8):
        es = eigendecompose_hermitian(h * factor)
        np.testing.assert_allclose(
            es.eigenvalues / factor, np.linalg.eigvalsh(h), atol=1e-11
        )


def test_eigendecompose_deterministic():
    h = total_hamiltonian(ModelParams(ModelId.C, 2.0, 3.0, 0.6, 0.8))
    a = eigendecompose_hermitian(h)
    b = eigendecompose_hermitian(h)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_eigendecompose_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eigendecompose_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    with pytest.raises(ValueError):
        eigendecompose_hermitian(np.zeros((2, 3), dtype=complex))


def test_eigendecompose_reports_non_convergence():
    h = random_hermitian(np.random.default_rng(1), 6)
    with pytest.raises(NumericError):
        eigendecompose_hermitian(h, max_sweeps=0)


def test_model_c_spectrum_is_doubled():
    h = total_hamiltonian(ModelParams(ModelId.C, 2.0, 3.0, 1.0, 0.0))
    vals = eigendecompose_hermitian(h).eigenvalues
    np.testing.assert_allclose(vals[0::2], vals[1::2], atol=1e-12)


def test_propagator_identity_at_zero():
    h = total_hamiltonian(ModelParams(ModelId.A, 1.0, 1.0, 1.0, 0.0))
    np.testing.assert_allclose(propagator(h, 0.0), np.eye(12), atol=1e-13)


def test_propagator_group_law_and_unitarity():
    h = total_hamiltonian(ModelParams(ModelId.B, 1.0, 1.0, 1.0, 0.0))
    es = eigendecompose_hermitian(h)
    u1 = propagator(h, 0.9, eigensystem=es)
    u2 = propagator(h, 1.7, eigensystem=es)
    u12 = propagator(h, 2.6, eigensystem=es)
    np.testing.assert_allclose(u2 @ u1, u12, atol=1e-11)
    np.testing.assert_allclose(dagger(u1) @ u1, np.eye(12), atol=1e-12)


def test_evolve_start_point_and_norm():
    params = ModelParams(ModelId.C, 2.0, 3.0, 0.6, 0.8, phi=0.4)
    h = total_hamiltonian(params)
    psi0 = initial_state(params)
    traj = evolve(h, psi0, np.array([0.0]))
    np.testing.assert_allclose(traj.states[0], psi0, atol=1e-14)

    grid = np.linspace(0.0, 25.0, 101)
    traj = evolve(h, psi0, grid)
    assert traj.states.shape == (101, 16)
    norms = np.linalg.norm(traj.states, axis=1)
    np.testing.assert_allclose(norms, np.ones(101), atol=1e-12)
    assert traj.method == "spectral"


def test_evolve_grid_validation():
    h = total_hamiltonian(ModelParams(ModelId.A, 1.0, 1.0, 1.0, 0.0))
    psi0 = initial_state(ModelParams(ModelId.A, 1.0, 1.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        evolve(h, psi0, np.array([1.0, 0.5]))
    with pytest.raises(ValueError):
        evolve(h, psi0, np.array([]))
    with pytest.raises(ValueError):
        evolve(h, psi0[:6], np.array([0.0]))


def test_evolve_parity_dead_components():
    # even-sector start never populates the six odd-sector slots
    params = ModelParams(ModelId.A, 1.0, 1.0, 0.6, 0.8, phi=0.9)
    traj = evolve(total_hamiltonian(params), initial_state(params), np.linspace(0, 20, 81))
    dead = [0, 1, 2, 9, 10, 11]
    assert np.max(np.abs(traj.states[:, dead])) < 1e-12


def test_rk4_constant_hamiltonian_phase():
    h = np.eye(2, dtype=complex)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    traj = evolve_rk4(h, psi0, np.array([0.0, 1.0]), dt=1e-3)
    np.testing.assert_allclose(traj.states[1, 0], np.exp(-1j), atol=1e-10)
    assert traj.method == "rk4"


def test_rk4_matches_spectral():
    params = ModelParams(ModelId.B, 1.0, 1.0, 0.6, 0.8, phi=0.7)
    h = total_hamiltonian(params)
    psi0 = initial_state(params)
    grid = np.linspace(0.0, 10.0, 41)
    ref = evolve(h, psi0, grid)
    got = evolve_rk4(h, psi0, grid, dt=1e-3)
    assert np.max(np.abs(got.states - ref.states)) < 1e-9


def test_rk4_fractional_final_step():
    # grid points that are not multiples of dt exercise the remainder step
    params = ModelParams(ModelId.A, 1.0, 1.0, 1.0, 0.0)
    h = total_hamiltonian(params)
    psi0 = initial_state(params)
    grid = np.array([0.0, 0.0137, 1.2345])
    ref = evolve(h, psi0, grid)
    got = evolve_rk4(h, psi0, grid, dt=1e-3)
    assert np.max(np.abs(got.states - ref.states)) < 1e-10


def test_rk4_warns_on_norm_drift():
    params = ModelParams(ModelId.C, 2.0, 3.0, 1.0, 0.0)
    h = total_hamiltonian(params)
    psi0 = initial_state(params)
    with pytest.warns(NormDriftWarning):
        evolve_rk4(h, psi0, np.array([0.0, 20.0]), dt=0.2)


def test_rk4_rejects_bad_dt():
    h = np.eye(2, dtype=complex)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    with pytest.raises(ValueError):
        evolve_rk4(h, psi0, np.array([0.0, 1.0]), dt=0.0)


def test_block_diagonalize_model_a():
    h = total_hamiltonian(ModelParams(ModelId.A, 1.0, 1.0, 1.0, 0.0))
    dec = block_diagonalize(h, SpaceShape.for_sites(3))
    assert isinstance(dec, BlockDecomposition)
    assert len(dec.blocks) == 4
    # corner carries +coupling, -coupling, -coupling, +coupling
    np.testing.assert_allclose(
        [blk[2, 2].real for blk in dec.blocks], [1.0, -1.0, -1.0, 1.0], atol=1e-14
    )
    np.testing.assert_allclose(dec.blocks[0], dec.blocks[3], atol=1e-14)
    np.testing.assert_allclose(dec.blocks[1], dec.blocks[2], atol=1e-14)
    np.testing.assert_allclose(
        dagger(dec.transform) @ dec.transform, np.eye(12), atol=1e-14
    )


def test_block_diagonalize_free_case():
    h = total_hamiltonian(ModelParams(ModelId.B, 1.5, 0.0, 1.0, 0.0))
    dec = block_diagonalize(h, SpaceShape.for_sites(3))
    for blk in dec.blocks[1:]:
        np.testing.assert_allclose(blk, dec.blocks[0], atol=1e-14)


def test_block_diagonalize_reconstructs():
    h = total_hamiltonian(ModelParams(ModelId.C, 2.0, 3.0, 1.0, 0.0))
    dec = block_diagonalize(h, SpaceShape.for_sites(4))
    rebuilt = np.zeros_like(h)
    for k, blk in enumerate(dec.blocks):
        rebuilt[4 * k : 4 * k + 4, 4 * k : 4 * k + 4] = blk
    np.testing.assert_allclose(dagger(dec.transform) @ h @ dec.transform, rebuilt, atol=1e-13)


def test_block_diagonalize_rejects_foreign_coupling():
    # a photon-only drive breaks the parity block pattern
    h = total_hamiltonian(ModelParams(ModelId.A, 1.0, 1.0, 1.0, 0.0))
    h = h + 0.5 * kron(kron(pauli("z"), pauli("id")), np.eye(3))
    # sigma_z maps to sigma_x under the similarity, spilling between blocks
    with pytest.raises(BlockStructureError):
        block_diagonalize(h, SpaceShape.for_sites(3))


def test_block_diagonalize_shape_mismatch():
    h = total_hamiltonian(ModelParams(ModelId.A, 1.0, 1.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        block_diagonalize(h, SpaceShape.for_sites(4))
