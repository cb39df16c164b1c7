"""Hamiltonians and initial states of the three ring-emission models.

All three models share the layout photon (2) x atom (2) x position (L).
The atom hops on a ring of L sites; entering the interaction zone couples
the atomic level to the photon mode through a doubly controlled flip,
sigma_x (x) sigma_x (x) P, where P projects onto the zone sites.

* Model A: three sites, chiral hopping (a rotation generator), zone {3}.
* Model B: three sites, symmetric hopping, zone {3}.
* Model C: four sites, symmetric hopping, zone {3, 4}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .hilbert import BasisLabel, SpaceShape, basis_index, ensure_finite, kron, pauli, projector

NORMALIZATION_TOL = 1e-12


class ModelId(enum.Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def sites(self) -> int:
        return 4 if self is ModelId.C else 3

    @property
    def shape(self) -> SpaceShape:
        return SpaceShape.for_sites(self.sites)

    @property
    def interaction_sites(self) -> tuple[int, ...]:
        """Position sites where emission can occur."""
        return (3, 4) if self is ModelId.C else (3,)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ModelParams:
    """Model identity plus the five scalar parameters.

    omega0 is the hopping frequency (> 0), omega1 the emission coupling
    (>= 0).  alpha, beta, phi are real and define the initial superposition
    alpha |+, X1> + beta e^{i phi} |+, X2>; alpha^2 + beta^2 must be 1.
    """

    model: ModelId
    omega0: float
    omega1: float
    alpha: float
    beta: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "model", ModelId(self.model))
        for name in ("omega0", "omega1", "alpha", "beta", "phi"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.omega1 < 0:
            raise ValueError(f"omega1 must be non-negative, got {self.omega1}")
        mass = self.alpha**2 + self.beta**2
        if abs(mass - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"alpha^2 + beta^2 must equal 1, got {mass!r}")

    @property
    def shape(self) -> SpaceShape:
        return self.model.shape


def _cyclic_raising(sites: int) -> np.ndarray:
    """|X_1><X_2| + |X_2><X_3| + ... + |X_L><X_1|."""
    r = np.zeros((sites, sites), dtype=complex)
    for row in range(sites):
        r[row, (row + 1) % sites] = 1.0
    return r


def free_position_block(model: ModelId, omega0: float) -> np.ndarray:
    """L x L position-space generator of the free dynamics.

    Model A uses i*omega0*R + h.c. with R the cyclic raising operator,
    generating a rotation around the ring.  Models B and C use
    omega0*(R + R^T), symmetric hopping in both directions.
    """
    model = ModelId(model)
    omega0 = float(omega0)
    if not math.isfinite(omega0) or omega0 < 0:
        raise ValueError(f"omega0 must be finite and non-negative, got {omega0!r}")
    r = _cyclic_raising(model.sites)
    if model is ModelId.A:
        m = 1j * omega0 * r
        return m + m.conj().T
    return omega0 * (r + r.conj().T)


def free_hamiltonian(model: ModelId, omega0: float) -> np.ndarray:
    """Full-space free Hamiltonian, identity on the photon and atom factors."""
    block = free_position_block(model, omega0)
    return kron(kron(pauli("id"), pauli("id")), block)


def interaction_hamiltonian(model: ModelId, omega1: float) -> np.ndarray:
    """Emission coupling omega1 * sigma_x (x) sigma_x (x) P_zone."""
    model = ModelId(model)
    omega1 = float(omega1)
    if not math.isfinite(omega1) or omega1 < 0:
        raise ValueError(f"omega1 must be finite and non-negative, got {omega1!r}")
    sites = model.sites
    zone = sum(projector(j, sites) for j in model.interaction_sites)
    return omega1 * kron(kron(pauli("x"), pauli("x")), zone)


def total_hamiltonian(params: ModelParams) -> np.ndarray:
    """Free plus interaction part for the given parameters."""
    return free_hamiltonian(params.model, params.omega0) + interaction_hamiltonian(
        params.model, params.omega1
    )


def initial_state(params: ModelParams) -> np.ndarray:
    """Vacuum photon, excited atom split over sites 1 and 2.

    Amplitude alpha at (0, +, 1) and beta e^{i phi} at (0, +, 2).
    """
    shape = params.shape
    psi = np.zeros(shape.total_dim, dtype=complex)
    psi[basis_index(shape, BasisLabel(0, "+", 1))] = params.alpha
    psi[basis_index(shape, BasisLabel(0, "+", 2))] = params.beta * np.exp(1j * params.phi)
    return ensure_finite(psi, "initial state")


def free_period(model: ModelId, omega0: float) -> float:
    """Duration of one cycle of the free position dynamics.

    Model A rotates with frequency sqrt(3)*omega0, model B recurs after
    2*pi/(3*omega0).  Model C has no single free cycle and is rejected.
    """
    model = ModelId(model)
    omega0 = float(omega0)
    if not omega0 > 0:
        raise ValueError(f"omega0 must be positive, got {omega0!r}")
    if model is ModelId.A:
        return 2.0 * math.pi / (math.sqrt(3.0) * omega0)
    if model is ModelId.B:
        return 2.0 * math.pi / (3.0 * omega0)
    raise ValueError("model C has no single free-dynamics cycle")
