"""Time evolution: spectral propagation, an independent RK4 integrator, and
the qubit block decomposition of the model Hamiltonians."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BlockStructureError, NormDriftWarning, NumericError
from .hilbert import EigenSystem, SpaceShape, dagger, kron

HERMITICITY_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-11
DEGENERACY_GAP = 1e-9
BLOCK_RESIDUAL_TOL = 1e-10
DRIFT_WARN_THRESHOLD = 1e-6


@dataclass(eq=False)
class Trajectory:
    """States of one evolution run, row k of ``states`` at ``times[k]``."""

    times: np.ndarray
    states: np.ndarray
    method: str


@dataclass(eq=False)
class BlockDecomposition:
    """Change of basis W and the four diagonal blocks of W H W^dagger."""

    transform: np.ndarray
    blocks: tuple


def _offdiag_norm(a: np.ndarray) -> float:
    b = np.abs(a) ** 2
    np.fill_diagonal(b, 0.0)
    return float(np.sqrt(b.sum()))


def eigendecompose_hermitian(h, tol: float = 1e-14, max_sweeps: int = 100) -> EigenSystem:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps run over the strict upper triangle in fixed row-major order; each
    pivot is annihilated by a unitary plane rotation.  Iteration stops when
    the off-diagonal Frobenius norm falls below tol relative to the input
    norm.  Output is deterministic for identical input: eigenvalues ascend
    (stable sort) and eigenvectors inside a degenerate cluster are
    re-orthonormalized in index order.

    Raises
    ------
    ValueError
        If the input is not square or not Hermitian.
    NumericError
        If the sweep cap is reached before convergence.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if np.abs(a - a.conj().T).max() > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within 1e-12")

    q = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    # Entries this small cannot push the off-norm above threshold; rotating on
    # them risks overflow in tau for denormal pivots.
    skip = 1e-18 * scale
    converged = False
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= tol * scale:
            converged = True
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                mag = abs(apq)
                if mag <= skip:
                    continue
                phase = apq / mag
                tau = (a[r, r].real - a[p, p].real) / (2.0 * mag)
                if abs(tau) > 1e8:
                    # asymptotic form, exact to double precision and overflow-safe
                    t = 1.0 / (2.0 * tau)
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                w = t * c * phase
                col_p, col_q = a[:, p].copy(), a[:, r].copy()
                a[:, p] = c * col_p - np.conj(w) * col_q
                a[:, r] = w * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[r, :].copy()
                a[p, :] = c * row_p - w * row_q
                a[r, :] = np.conj(w) * row_p + c * row_q
                qp, qq = q[:, p].copy(), q[:, r].copy()
                q[:, p] = c * qp - np.conj(w) * qq
                q[:, r] = w * qp + c * qq
    if not converged and _offdiag_norm(a) > tol * scale:
        raise NumericError(f"Jacobi sweeps did not converge within {max_sweeps} iterations")

    vals = np.diag(a).real.copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = q[:, order]
    _orthonormalize_degenerate(vals, vecs)

    hmat = np.array(h, dtype=complex)
    recon = (vecs * vals) @ vecs.conj().T
    if np.abs(recon - hmat).max() > RECONSTRUCTION_TOL * scale:
        raise NumericError("eigendecomposition reconstruction error above 1e-11")
    return EigenSystem(eigenvalues=vals, eigenvectors=vecs)


def _orthonormalize_degenerate(vals: np.ndarray, vecs: np.ndarray) -> None:
    """QR-orthonormalize columns inside each near-degenerate cluster, in place.

    Column order is preserved and phases are fixed by making the R diagonal
    real positive, so the output is deterministic.
    """
    n = vals.shape[0]
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[stop - 1] < DEGENERACY_GAP:
            stop += 1
        if stop - start > 1:
            qmat, rmat = np.linalg.qr(vecs[:, start:stop])
            diag = np.diag(rmat).copy()
            diag[np.abs(diag) == 0] = 1.0
            vecs[:, start:stop] = qmat * (diag / np.abs(diag))
        start = stop


def propagator(h, t: float, eigensystem: EigenSystem | None = None) -> np.ndarray:
    """Evolution operator U(t) = sum_k exp(-i lambda_k t) |k><k|."""
    es = eigensystem if eigensystem is not None else eigendecompose_hermitian(h)
    phases = np.exp(-1j * es.eigenvalues * float(t))
    return (es.eigenvectors * phases) @ dagger(es.eigenvectors)


def _check_grid(times) -> np.ndarray:
    grid = np.asarray(times, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("time grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) < 0):
        raise ValueError("time grid must be ascending")
    return grid


def evolve(h, psi0, times, eigensystem: EigenSystem | None = None) -> Trajectory:
    """Propagate psi0 over a time grid via the spectral decomposition.

    ``states[k]`` equals U(times[k]) psi0 with psi0 taken at t = 0.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if psi0.ndim != 1 or h.shape != (psi0.size, psi0.size):
        raise ValueError(f"dimension mismatch: state {psi0.shape}, operator {h.shape}")
    grid = _check_grid(times)
    es = eigensystem if eigensystem is not None else eigendecompose_hermitian(h)
    coeff = dagger(es.eigenvectors) @ psi0
    phases = np.exp(-1j * np.outer(grid, es.eigenvalues))
    states = (phases * coeff) @ es.eigenvectors.T
    return Trajectory(times=grid, states=states, method="spectral")


def _rk4_step(mih: np.ndarray, psi: np.ndarray, dt: float) -> np.ndarray:
    k1 = mih @ psi
    k2 = mih @ (psi + 0.5 * dt * k1)
    k3 = mih @ (psi + 0.5 * dt * k2)
    k4 = mih @ (psi + dt * k3)
    return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def evolve_rk4(h, psi0, times, dt: float = 1e-3) -> Trajectory:
    """Integrate i d psi/dt = H psi by classical fourth-order Runge-Kutta.

    Each grid interval is covered by whole steps of dt plus one smaller
    final step.  The state is never renormalized; if the accumulated norm
    drift exceeds 1e-6 a NormDriftWarning is issued so the caller can see
    that dt was too coarse.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if psi0.ndim != 1 or h.shape != (psi0.size, psi0.size):
        raise ValueError(f"dimension mismatch: state {psi0.shape}, operator {h.shape}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    grid = _check_grid(times)
    if grid[0] < 0:
        raise ValueError("time grid must start at t >= 0")

    mih = -1j * h
    psi = psi0.copy()
    t_now = 0.0
    states = np.empty((grid.size, psi0.size), dtype=complex)
    for k, t_target in enumerate(grid):
        span = t_target - t_now
        if span > 0:
            whole = int(span // dt)
            for _ in range(whole):
                psi = _rk4_step(mih, psi, dt)
            rest = span - whole * dt
            if rest > 1e-12:
                psi = _rk4_step(mih, psi, rest)
            t_now = t_target
        states[k] = psi
    drift = float(np.abs(np.sqrt((np.abs(states) ** 2).sum(axis=1)) - 1.0).max())
    if drift > DRIFT_WARN_THRESHOLD:
        warnings.warn(
            f"RK4 norm drift {drift:.3e} exceeds {DRIFT_WARN_THRESHOLD:.0e}; reduce dt",
            NormDriftWarning,
            stacklevel=2,
        )
    return Trajectory(times=grid, states=states, method="rk4")


def block_diagonalize(omega, shape: SpaceShape) -> BlockDecomposition:
    """Split a qubit-conditioned Hamiltonian into four position-space blocks.

    W = V (x) V (x) I_L with V = (1/sqrt 2) [[1, 1], [1, -1]], the real
    unitary exchanging sigma_x and sigma_z.  For Hamiltonians of the form
    identity-on-qubits + sigma_x (x) sigma_x (x) P the conjugation
    W Omega W^dagger is block diagonal with blocks (H+ , H-, H-, H+),
    where H(+-) = free block +- coupling * diag(P).

    Raises
    ------
    BlockStructureError
        If residual off-block mass exceeds 1e-10 (input not of that form).
    """
    omega = np.asarray(omega, dtype=complex)
    sites = shape.sites
    dim = shape.total_dim
    if omega.shape != (dim, dim):
        raise ValueError(f"operator shape {omega.shape} does not match space dimension {dim}")
    v = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    w = kron(kron(v, v), np.eye(sites))
    rotated = w @ omega @ dagger(w)
    mask = np.ones_like(rotated)
    for k in range(4):
        mask[k * sites:(k + 1) * sites, k * sites:(k + 1) * sites] = 0.0
    off_mass = float(np.abs(rotated * mask).max())
    if off_mass > BLOCK_RESIDUAL_TOL:
        raise BlockStructureError(
            f"off-block residual {off_mass:.3e} exceeds {BLOCK_RESIDUAL_TOL:.0e}; "
            "operator is not of the qubit-conditioned form"
        )
    blocks = tuple(
        rotated[k * sites:(k + 1) * sites, k * sites:(k + 1) * sites].copy() for k in range(4)
    )
    return BlockDecomposition(transform=w, blocks=blocks)
