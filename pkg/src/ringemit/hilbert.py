"""Dense complex linear algebra over composite photon/atom/position spaces.

The composite basis is ordered photon number first, then atom level, then
position site.  A label (n, s, j) with n in {0, 1}, s in {-, +} and
j in {1..L} maps to the flat index

    n * 2L + s * L + (j - 1),

with the atom level encoded minus -> 0, plus -> 1.  Components therefore
run (0,-,1), (0,-,2), ..., (0,+,1), ..., (1,+,L).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOM_MINUS = "-"
ATOM_PLUS = "+"
_ATOM_CODE = {ATOM_MINUS: 0, ATOM_PLUS: 1}
_ATOM_NAME = {0: ATOM_MINUS, 1: ATOM_PLUS}


@dataclass(frozen=True)
class SpaceShape:
    """Factor dimensions of a composite space, ordered (photon, atom, position)."""

    factor_dims: tuple[int, int, int]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.factor_dims)
        if len(dims) != 3 or any(d < 1 for d in dims):
            raise ValueError(f"factor_dims must be three positive integers, got {self.factor_dims!r}")
        object.__setattr__(self, "factor_dims", dims)

    @classmethod
    def for_sites(cls, sites: int) -> "SpaceShape":
        """Standard shape: two photon levels, two atom levels, ``sites`` positions."""
        return cls((2, 2, sites))

    @property
    def total_dim(self) -> int:
        a, b, c = self.factor_dims
        return a * b * c

    @property
    def sites(self) -> int:
        return self.factor_dims[2]


@dataclass(frozen=True)
class BasisLabel:
    """One composite basis vector: photon number n, atom level s, site j."""

    n: int
    s: str
    j: int


@dataclass(eq=False)
class EigenSystem:
    """Spectral data of a Hermitian operator.

    Attributes
    ----------
    eigenvalues : ndarray
        Real eigenvalues in ascending order.
    eigenvectors : ndarray
        Unitary matrix whose column k is the eigenvector for eigenvalue k.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def basis_index(shape: SpaceShape, label: BasisLabel) -> int:
    """Flat index of a composite basis label.

    Raises
    ------
    ValueError
        If any part of the label is out of range for the shape.
    """
    sites = shape.sites
    if label.n not in (0, 1):
        raise ValueError(f"photon number must be 0 or 1, got {label.n!r}")
    if label.s not in _ATOM_CODE:
        raise ValueError(f"atom level must be '-' or '+', got {label.s!r}")
    if not 1 <= label.j <= sites:
        raise ValueError(f"site index must be in 1..{sites}, got {label.j!r}")
    return label.n * 2 * sites + _ATOM_CODE[label.s] * sites + (label.j - 1)


def basis_label(shape: SpaceShape, index: int) -> BasisLabel:
    """Inverse of :func:`basis_index`."""
    dim = shape.total_dim
    if not 0 <= index < dim:
        raise ValueError(f"flat index must be in 0..{dim - 1}, got {index!r}")
    sites = shape.sites
    n, rest = divmod(index, 2 * sites)
    s, j = divmod(rest, sites)
    return BasisLabel(n=n, s=_ATOM_NAME[s], j=j + 1)


def basis_ket(shape: SpaceShape, label: BasisLabel) -> np.ndarray:
    """Unit vector for one composite basis label."""
    v = np.zeros(shape.total_dim, dtype=complex)
    v[basis_index(shape, label)] = 1.0
    return v


def kron(a, b) -> np.ndarray:
    """Kronecker product with the first factor varying slowest.

    (a kron b)[i*db + k, j*db + l] = a[i, j] * b[k, l]
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def is_hermitian(a, tol: float = 1e-14) -> bool:
    """True if max-entry deviation from the conjugate transpose is within tol."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return bool(np.abs(a - a.conj().T).max() <= tol)


def is_unitary(a, tol: float = 1e-14) -> bool:
    """True if max-entry deviation of a.a^dagger from identity is within tol."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return bool(np.abs(a @ a.conj().T - np.eye(a.shape[0])).max() <= tol)


def projector(j: int, sites: int) -> np.ndarray:
    """Projector |X_j><X_j| on the position factor.

    Parameters
    ----------
    j : int
        Site index, 1-based.
    sites : int
        Number of position sites.
    """
    if not 1 <= j <= sites:
        raise ValueError(f"site index must be in 1..{sites}, got {j!r}")
    p = np.zeros((sites, sites), dtype=complex)
    p[j - 1, j - 1] = 1.0
    return p


def pauli(kind: str) -> np.ndarray:
    """Standard 2x2 matrices in the basis |0> = (1, 0)^T.

    ``kind`` is one of "x", "z", "id".
    """
    if kind == "x":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if kind == "z":
        return np.array([[1, 0], [0, -1]], dtype=complex)
    if kind == "id":
        return np.eye(2, dtype=complex)
    raise ValueError(f"unknown Pauli kind {kind!r}; expected 'x', 'z' or 'id'")


def ensure_finite(a, name: str = "array") -> np.ndarray:
    """Return the input as a complex array, rejecting NaN or Inf entries."""
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a
