"""Closed-form expressions for the three models, used as independent oracles.

Everything here is an explicit formula: block spectra and eigenvectors for
the three-site chiral model, free propagators, and full solution vectors at
the pinned parameter points (model B at omega0 = omega1 = 1, model C at
omega0 = 2, omega1 = 3).  The dynamics module must reproduce these numbers;
nothing in this module calls the numerical eigensolver.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import UnsupportedParametersError
from .models import ModelId

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class ClosedFormEigenvalues(NamedTuple):
    """The three eigenvalues of the plus block at omega1 = 1."""

    lambda1: float
    lambda2: float
    lambda3: float


class ModelCFactors(NamedTuple):
    """Orbital (O) and emission (I) envelopes of the four-site solution."""

    o12: complex
    o34: complex
    i12: complex
    i34: complex


def omega_plus(omega0: float, omega1: float = 1.0) -> np.ndarray:
    """Plus block of the chiral three-site model: free rotation block plus
    +omega1 at the zone-site diagonal corner.  Any real omega0 is accepted."""
    w = float(omega0)
    return np.array(
        [
            [0.0, 1j * w, -1j * w],
            [-1j * w, 0.0, 1j * w],
            [1j * w, -1j * w, float(omega1)],
        ],
        dtype=complex,
    )


def omega_minus(omega0: float, omega1: float = 1.0) -> np.ndarray:
    """Minus block, obtained from the plus block by -omega_plus(-omega0)."""
    return -omega_plus(-float(omega0), float(omega1))


def lambda_eigenvalues(omega0: float) -> ClosedFormEigenvalues:
    """Eigenvalues of omega_plus(omega0) in units where omega1 = 1.

    The cubic is solved trigonometrically: with K = 9 omega0^2 + 1 and
    theta = arg(sqrt(4 - 4 K^3) + 2) / 3 (principal branch, complex sqrt),

        lambda1 = 1/3 + (2/3) sqrt(K) cos(theta)
        lambda2 = 1/3 - sqrt(K) cos(theta)/3 - sqrt(K) sin(theta)/sqrt(3)
        lambda3 = 1/3 - sqrt(K) cos(theta)/3 + sqrt(K) sin(theta)/sqrt(3)

    The radicand 4 - 4 K^3 is <= 0 for every real omega0, so the branch is
    fixed for the whole domain; the sum is 1 identically (trace).
    """
    w = float(omega0)
    if not math.isfinite(w) or w < 0:
        raise ValueError(f"omega0 must be finite and non-negative, got {omega0!r}")
    big_k = 9.0 * w * w + 1.0
    z = np.sqrt(complex(4.0 - 4.0 * big_k**3)) + 2.0
    theta = float(np.angle(z)) / 3.0
    root_k = math.sqrt(big_k)
    l1 = 1.0 / 3.0 + 2.0 / 3.0 * root_k * math.cos(theta)
    l2 = 1.0 / 3.0 - root_k * math.cos(theta) / 3.0 - root_k * math.sin(theta) / SQRT3
    l3 = 1.0 / 3.0 - root_k * math.cos(theta) / 3.0 + root_k * math.sin(theta) / SQRT3
    return ClosedFormEigenvalues(l1, l2, l3)


def lambda_eigenvector(lam: float, omega0: float) -> np.ndarray:
    """Normalized eigenvector of omega_plus(omega0) for eigenvalue lam.

        (-omega0^2 - i lam omega0, i lam omega0 - omega0^2, lam^2 - omega0^2)
        / sqrt(lam^4 + 3 omega0^4)

    The denominator identity 2 w^4 + 2 lam^2 w^2 + (lam^2 - w^2)^2
    = lam^4 + 3 w^4 holds whenever lam is an eigenvalue, so the result has
    unit norm.  At omega0 = 0 the formula degenerates to the zero vector
    for lam = 0 and is rejected.
    """
    w = float(omega0)
    lam = float(lam)
    if w == 0.0:
        raise ValueError("omega0 = 0 makes the eigenvector formula degenerate")
    v = np.array(
        [-w * w - 1j * lam * w, 1j * lam * w - w * w, lam * lam - w * w],
        dtype=complex,
    )
    return v / math.sqrt(lam**4 + 3.0 * w**4)


def u0_closed_form(model: ModelId, omega0: float, t: float) -> np.ndarray:
    """Free position-space propagator of models A and B as an explicit 3x3.

    Model A (period T = 2 pi / (sqrt(3) omega0), c = cos(2 pi t / T),
    s = sin(2 pi t / T)):

        -(1/3) * [[-2c - 1,      c - r3 s - 1,  c + r3 s - 1],
                  [c + r3 s - 1, -2c - 1,       c - r3 s - 1],
                  [c - r3 s - 1, c + r3 s - 1,  -2c - 1]]

    with r3 = sqrt(3).  Model B mixes two counter-rotating phases:
    diagonal -(1/3)(-2 e^{i t w} - e^{-2 i t w}), off-diagonal
    -(1/3) e^{-2 i t w} (e^{3 i t w} - 1).
    """
    model = ModelId(model)
    w = float(omega0)
    t = float(t)
    if not w > 0:
        raise ValueError(f"omega0 must be positive, got {omega0!r}")
    if model is ModelId.A:
        angle = SQRT3 * w * t  # 2 pi t / T
        c, s = math.cos(angle), math.sin(angle)
        diag = -2.0 * c - 1.0
        lower = c + SQRT3 * s - 1.0  # first subdiagonal position (cyclic)
        upper = c - SQRT3 * s - 1.0
        m = np.array(
            [
                [diag, upper, lower],
                [lower, diag, upper],
                [upper, lower, diag],
            ],
            dtype=complex,
        )
        return -m / 3.0
    if model is ModelId.B:
        e1 = np.exp(1j * t * w)
        e2 = np.exp(-2j * t * w)
        diag = -2.0 * e1 - e2
        off = e2 * (np.exp(3j * t * w) - 1.0)
        m = np.full((3, 3), off, dtype=complex)
        np.fill_diagonal(m, diag)
        return -m / 3.0
    raise UnsupportedParametersError("free propagator closed form exists for models A and B only")


def _pinned(value: float, pinned: float, name: str, model: str) -> None:
    if float(value) != pinned:
        raise UnsupportedParametersError(
            f"model {model} closed-form solution is pinned to {name} = {pinned:g}, got {value!r}"
        )


def psi_closed_form_b(alpha: float, beta: float, phi: float, t: float,
                      omega0: float = 1.0, omega1: float = 1.0) -> np.ndarray:
    """Explicit 12-component solution of model B at omega0 = omega1 = 1.

    Two-term structure: the antisymmetric combination (alpha - e^{i phi} beta)
    stays frozen on sites 1 and 2 up to a phase, the symmetric combination
    carries all the dynamics.
    """
    _pinned(omega0, 1.0, "omega0", "B")
    _pinned(omega1, 1.0, "omega1", "B")
    t = float(t)
    b = np.exp(1j * float(phi)) * float(beta)
    sym = float(alpha) + b
    anti = float(alpha) - b

    v_anti = np.zeros(12, dtype=complex)
    v_anti[3] = 1.0
    v_anti[4] = -1.0

    em = np.exp(-1j * t)
    c2t, s2t = math.cos(SQRT2 * t), math.sin(SQRT2 * t)
    c3t, s3t = math.cos(SQRT3 * t), math.sin(SQRT3 * t)
    v_sym = np.zeros(12, dtype=complex)
    v_sym[3] = 3.0 * em * c2t + 3.0 * c3t - 1j * SQRT3 * s3t
    v_sym[4] = v_sym[3]
    v_sym[5] = -1j * (3.0 * SQRT2 * em * s2t + 2.0 * SQRT3 * s3t)
    v_sym[6] = 3.0 * em * c2t - 3.0 * c3t + 1j * SQRT3 * s3t
    v_sym[7] = v_sym[6]
    v_sym[8] = -1j * (3.0 * SQRT2 * em * s2t - 2.0 * SQRT3 * s3t)

    return 0.5 * np.exp(1j * t) * anti * v_anti + sym / 12.0 * v_sym


def model_b_f(t: float) -> float:
    """Envelope f(t) of the model B emission law p = |alpha + beta e^{i phi}|^2 f.

    Computed from the symmetric-branch single-photon components of the
    closed-form solution, whose (alpha + beta e^{i phi}) prefactor is common
    to all of them; evaluated at the (1, 0, 0) corner where the prefactor
    has unit modulus.
    """
    psi = psi_closed_form_b(1.0, 0.0, 0.0, t)
    return float((np.abs(psi[6:9]) ** 2).sum())


def model_c_factors(t: float) -> ModelCFactors:
    """Envelope functions of the four-site solution at omega0 = 2, omega1 = 3.

        O12 = (4 cos t + cos 4t) / 5
        O34 = -(2/5) i (sin t + sin 4t)
        I12 = (8/5) i (6 cos(t/2) + 3 cos(3t/2) + cos(5t/2)) sin^3(t/2)
        I34 = -(4/5) (6 cos t + 4 cos 2t + 2 cos 3t + 3) sin^2(t/2)

    At t = 0: O12 = 1 and the other three vanish (initial-state recovery).
    """
    t = float(t)
    o12 = (4.0 * math.cos(t) + math.cos(4.0 * t)) / 5.0
    o34 = -0.4j * (math.sin(t) + math.sin(4.0 * t))
    i12 = 1.6j * (
        6.0 * math.cos(t / 2.0) + 3.0 * math.cos(1.5 * t) + math.cos(2.5 * t)
    ) * math.sin(t / 2.0) ** 3
    i34 = -0.8 * (
        6.0 * math.cos(t) + 4.0 * math.cos(2.0 * t) + 2.0 * math.cos(3.0 * t) + 3.0
    ) * math.sin(t / 2.0) ** 2
    return ModelCFactors(complex(o12), complex(o34), complex(i12), complex(i34))


def psi_closed_form_c(alpha: float, beta: float, phi: float, t: float,
                      omega0: float = 2.0, omega1: float = 3.0) -> np.ndarray:
    """Explicit 16-component solution of model C at omega0 = 2, omega1 = 3.

    With c1 = alpha cos 2t - i e^{i phi} beta sin 2t and
    c2 = e^{i phi} beta cos 2t - i alpha sin 2t, the nonzero components are

        psi[4]  = c1 O12   psi[5]  = c2 O12   (atom excited, sites 1, 2)
        psi[6]  = c2 O34   psi[7]  = c1 O34   (atom excited, zone sites)
        psi[8]  = c1 I12   psi[9]  = c2 I12   (photon out, sites 1, 2)
        psi[10] = c2 I34   psi[11] = c1 I34   (photon out, zone sites)
    """
    _pinned(omega0, 2.0, "omega0", "C")
    _pinned(omega1, 3.0, "omega1", "C")
    t = float(t)
    b = np.exp(1j * float(phi)) * float(beta)
    c1 = float(alpha) * math.cos(2.0 * t) - 1j * b * math.sin(2.0 * t)
    c2 = b * math.cos(2.0 * t) - 1j * float(alpha) * math.sin(2.0 * t)
    o12, o34, i12, i34 = model_c_factors(t)
    psi = np.zeros(16, dtype=complex)
    psi[4] = c1 * o12
    psi[5] = c2 * o12
    psi[6] = c2 * o34
    psi[7] = c1 * o34
    psi[8] = c1 * i12
    psi[9] = c2 * i12
    psi[10] = c2 * i34
    psi[11] = c1 * i34
    return psi


def model_c_eigenvalues(omega0: float, omega1: float) -> np.ndarray:
    """All 16 eigenvalues of the four-site Hamiltonian, sorted ascending.

    The eight distinct values are (1/2)(+-2 omega0 +- omega1
    +- sqrt(4 omega0^2 + omega1^2)) over all sign choices; each occurs
    twice.
    """
    w0 = float(omega0)
    w1 = float(omega1)
    if not (math.isfinite(w0) and math.isfinite(w1)) or w0 < 0 or w1 < 0:
        raise ValueError("omega0 and omega1 must be finite and non-negative")
    root = math.sqrt(4.0 * w0 * w0 + w1 * w1)
    vals = [
        0.5 * (s1 * 2.0 * w0 + s2 * w1 + s3 * root)
        for s1 in (1.0, -1.0)
        for s2 in (1.0, -1.0)
        for s3 in (1.0, -1.0)
    ]
    return np.sort(np.repeat(np.array(vals), 2))


def modulus_identities(alpha: float, beta: float, phi: float, t: float):
    """Both sides of the two weight identities of the four-site solution.

    lhs1 = |alpha cos 2t - i e^{i phi} beta sin 2t|^2
    rhs1 = alpha^2 cos^2 2t + beta^2 sin^2 2t + alpha beta sin 4t sin phi
    lhs2 = |e^{i phi} beta cos 2t - i alpha sin 2t|^2
    rhs2 = alpha^2 sin^2 2t + beta^2 cos^2 2t - alpha beta sin 4t sin phi

    Returns (lhs1, rhs1, lhs2, rhs2); the two sides agree identically and
    the pair sums to alpha^2 + beta^2.
    """
    a = float(alpha)
    bmag = float(beta)
    phi = float(phi)
    t = float(t)
    b = np.exp(1j * phi) * bmag
    c2, s2 = math.cos(2.0 * t), math.sin(2.0 * t)
    lhs1 = float(abs(a * c2 - 1j * b * s2) ** 2)
    rhs1 = a * a * c2 * c2 + bmag * bmag * s2 * s2 + a * bmag * math.sin(4.0 * t) * math.sin(phi)
    lhs2 = float(abs(b * c2 - 1j * a * s2) ** 2)
    rhs2 = a * a * s2 * s2 + bmag * bmag * c2 * c2 - a * bmag * math.sin(4.0 * t) * math.sin(phi)
    return lhs1, rhs1, lhs2, rhs2
