"""Observable extraction: emission probabilities, phase sweeps, and the
two-path interference decomposition of the emission law."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics, models
from .errors import AnsatzViolationError
from .models import ModelId, ModelParams

RESIDUAL_LIMIT = 1e-8
_HALF = 1.0 / math.sqrt(2.0)
# 12-point phase grid used to validate the fitted form
_PHI_CHECK = np.array([k * math.pi / 6.0 for k in range(12)])


@dataclass(frozen=True)
class EmissionRecord:
    """Emission data at one (t, phi) cell.

    p is the total emission probability, p_cond the per-site joint
    probabilities |psi(1, -, j)|^2, norm the state norm.
    """

    t: float
    phi: float
    p: float
    p_cond: tuple
    norm: float


@dataclass(frozen=True)
class InterferenceFit:
    """Coefficients of p = A alpha^2 + B beta^2 + alpha beta (C cos phi + S sin phi).

    residual is the worst absolute error of that form against directly
    computed probabilities on the 12-point phase grid, at alpha = beta =
    1/sqrt(2).
    """

    t: float
    a: float
    b: float
    c: float
    s: float
    residual: float


def _emission_slice(dim: int) -> slice:
    if dim % 4 != 0:
        raise ValueError(f"state dimension {dim} is not a photon x atom x position layout")
    sites = dim // 4
    return slice(2 * sites, 3 * sites)


def emission_probability(psi) -> float:
    """Total probability of having emitted a photon: sum over |psi(1, -, j)|^2."""
    psi = np.asarray(psi, dtype=complex)
    return float((np.abs(psi[_emission_slice(psi.size)]) ** 2).sum())


def conditional_emission_probability(psi, j: int) -> float:
    """Joint probability |psi(1, -, j)|^2 of emission with the atom at site j.

    Reported unnormalized; divide by the total to condition on emission.
    """
    psi = np.asarray(psi, dtype=complex)
    sites = psi.size // 4
    if not 1 <= j <= sites:
        raise ValueError(f"site index must be in 1..{sites}, got {j!r}")
    return float(abs(psi[2 * sites + j - 1]) ** 2)


def _record(t: float, phi: float, state: np.ndarray) -> EmissionRecord:
    sites = state.size // 4
    weights = np.abs(state[_emission_slice(state.size)]) ** 2
    return EmissionRecord(
        t=float(t),
        phi=float(phi),
        p=float(weights.sum()),
        p_cond=tuple(float(x) for x in weights),
        norm=float(np.linalg.norm(state)),
    )


def phase_sweep(model: ModelId, omega0: float, omega1: float, alpha: float, beta: float,
                t_grid, phi_grid, method: str = "spectral", dt: float = 1e-3):
    """Emission records over the full (t, phi) grid, t outer and phi inner.

    The spectral method shares one eigendecomposition across all phases;
    the rk4 method integrates each phase independently.
    """
    model = ModelId(model)
    t_grid = np.asarray(t_grid, dtype=float)
    phi_grid = np.asarray(phi_grid, dtype=float)
    if t_grid.size == 0 or phi_grid.size == 0:
        raise ValueError("time and phase grids must be non-empty")

    eigensystem = None
    trajectories = []
    for phi in phi_grid:
        params = ModelParams(model, omega0, omega1, alpha, beta, float(phi))
        h = models.total_hamiltonian(params)
        psi0 = models.initial_state(params)
        if method == "spectral":
            if eigensystem is None:
                eigensystem = dynamics.eigendecompose_hermitian(h)
            traj = dynamics.evolve(h, psi0, t_grid, eigensystem=eigensystem)
        elif method == "rk4":
            traj = dynamics.evolve_rk4(h, psi0, t_grid, dt=dt)
        else:
            raise ValueError(f"unknown method {method!r}; expected 'spectral' or 'rk4'")
        trajectories.append(traj)

    records = []
    for it, t in enumerate(t_grid):
        for ip, phi in enumerate(phi_grid):
            records.append(_record(t, phi, trajectories[ip].states[it]))
    return records


def decompose_interference_grid(model: ModelId, omega0: float, omega1: float, t_grid):
    """Interference coefficients for every t in the grid.

    Calibration uses four runs sharing one eigendecomposition:
    A from (alpha, beta) = (1, 0), B from (0, 1), then C and S from the
    equal-weight state at phi = 0 and phi = pi/2 through
    p = (A + B)/2 + (C cos phi + S sin phi)/2.

    Raises
    ------
    AnsatzViolationError
        If any residual exceeds 1e-8.  The full fit table is attached to
        the exception so results can still be reported.
    """
    model = ModelId(model)
    t_grid = np.asarray(t_grid, dtype=float)
    h = models.total_hamiltonian(ModelParams(model, omega0, omega1, 1.0, 0.0, 0.0))
    es = dynamics.eigendecompose_hermitian(h)
    sites = model.sites
    emit = slice(2 * sites, 3 * sites)

    def corner_states(alpha, beta, phi):
        psi0 = models.initial_state(ModelParams(model, omega0, omega1, alpha, beta, phi))
        return dynamics.evolve(h, psi0, t_grid, eigensystem=es).states[:, emit]

    first = corner_states(1.0, 0.0, 0.0)
    second = corner_states(0.0, 1.0, 0.0)
    coef_a = (np.abs(first) ** 2).sum(axis=1)
    coef_b = (np.abs(second) ** 2).sum(axis=1)
    p_phi0 = (np.abs(corner_states(_HALF, _HALF, 0.0)) ** 2).sum(axis=1)
    p_phi90 = (np.abs(corner_states(_HALF, _HALF, math.pi / 2.0)) ** 2).sum(axis=1)
    coef_c = 2.0 * p_phi0 - coef_a - coef_b
    coef_s = 2.0 * p_phi90 - coef_a - coef_b

    # residual of the fitted form over the check grid, equal-weight state
    worst = np.zeros(t_grid.size)
    for phi in _PHI_CHECK:
        p_direct = (np.abs(corner_states(_HALF, _HALF, float(phi))) ** 2).sum(axis=1)
        fitted = 0.5 * (coef_a + coef_b) + 0.5 * (
            coef_c * math.cos(phi) + coef_s * math.sin(phi)
        )
        worst = np.maximum(worst, np.abs(p_direct - fitted))

    fits = [
        InterferenceFit(
            t=float(t_grid[k]),
            a=float(coef_a[k]),
            b=float(coef_b[k]),
            c=float(coef_c[k]),
            s=float(coef_s[k]),
            residual=float(worst[k]),
        )
        for k in range(t_grid.size)
    ]
    peak = float(worst.max())
    if peak > RESIDUAL_LIMIT:
        raise AnsatzViolationError(
            f"interference form residual {peak:.3e} exceeds {RESIDUAL_LIMIT:.0e}",
            fits=fits,
        )
    return fits


def decompose_interference(model: ModelId, omega0: float, omega1: float, t: float) -> InterferenceFit:
    """Interference coefficients at a single time point."""
    return decompose_interference_grid(model, omega0, omega1, [float(t)])[0]
