"""State families, Bloch coordinates, partial trace and partial transpose.

A state family is an affine subspace of the unit-trace Hermitian matrices:
rho(a) = I_n/n + sum_i a_i D_i with HS-orthonormal direction matrices D_i.
Because the directions are orthonormal, the coordinates a are Euclidean
coordinates and the Lebesgue measure on them is the measure in which all
volume ratios are taken.  Five named families from the literature are
provided next to the fully general bipartite body.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .basis import (
    _frozen,
    build_product_basis,
    gell_mann_matrices,
    sigma_x,
    sigma_y,
    sigma_z,
)

# A matrix counts as positive semidefinite when its minimum eigenvalue is
# >= -PSD_TOL.  Boundary states have measure zero, so the tolerance cannot
# bias volume ratios beyond statistical error.
PSD_TOL = 1e-12

# Maximum reconstruction residual for a matrix to count as a member of a
# family's affine span.
SPAN_TOL = 1e-10


class NotInFamilyError(ValueError):
    """Raised when a matrix lies outside a family's affine span."""


@dataclass(frozen=True, eq=False)
class StateFamily:
    """An affine family of unit-trace Hermitian matrices.

    Attributes
    ----------
    kind : str
        One of ``general``, ``bell_diagonal``, ``x_state``, ``rebit_rebit``,
        ``qubit_qutrit_i``, ``qubit_qutrit_ii``.
    n_a, n_b : int
        Subsystem dimensions of the ambient bipartite system.
    directions : np.ndarray
        (d, n, n) HS-orthonormal Hermitian direction matrices.
    """

    kind: str
    n_a: int
    n_b: int
    directions: np.ndarray

    @property
    def dim(self) -> int:
        """Dimension d of the family's coordinate space."""
        return self.directions.shape[0]

    @property
    def ambient_dim(self) -> int:
        """Hilbert-space dimension n = n_a * n_b."""
        return self.n_a * self.n_b

    @property
    def label(self) -> str:
        if self.kind == "general":
            return f"general {self.n_a}x{self.n_b}"
        return self.kind

    @cached_property
    def _dirs_flat(self) -> np.ndarray:
        # (d, n*n) view used by the matrix-building hot paths
        n = self.ambient_dim
        return _frozen(np.ascontiguousarray(self.directions.reshape(self.dim, n * n)))

    @cached_property
    def _eye_flat(self) -> np.ndarray:
        n = self.ambient_dim
        return _frozen(np.eye(n, dtype=complex).reshape(n * n) / n)

    def matrix_from_coords(self, coords: np.ndarray) -> np.ndarray:
        """I_n/n + sum_i coords_i D_i as an (n, n) array."""
        n = self.ambient_dim
        return (self._eye_flat + coords @ self._dirs_flat).reshape(n, n)

    def matrices_from_coords(self, coords: np.ndarray) -> np.ndarray:
        """Batched matrix_from_coords for a (batch, d) coordinate array."""
        n = self.ambient_dim
        flat = coords @ self._dirs_flat + self._eye_flat
        return flat.reshape(-1, n, n)


@dataclass(frozen=True, eq=False)
class BlochVector:
    """Coordinates of a unit-trace Hermitian matrix within a family."""

    family: StateFamily
    coords: np.ndarray


def general(n_a: int, n_b: int) -> StateFamily:
    """The full bipartite state body, d = n_a^2 n_b^2 - 1."""
    product = build_product_basis(n_a, n_b)
    return StateFamily(kind="general", n_a=n_a, n_b=n_b, directions=product.matrices)


def bell_diagonal() -> StateFamily:
    """Two-qubit Bell-diagonal states: directions (1/2) sigma_i (x) sigma_i."""
    dirs = np.array([np.kron(s, s) / 2 for s in (sigma_x, sigma_y, sigma_z)])
    return StateFamily(kind="bell_diagonal", n_a=2, n_b=2, directions=_frozen(dirs))


def x_state() -> StateFamily:
    """Two-qubit X-states, the 7-dimensional family whose matrices have the
    X-shaped sparsity pattern in the computational basis."""
    pairs = [
        (sigma_z, np.eye(2)),
        (np.eye(2), sigma_z),
        (sigma_x, sigma_x),
        (sigma_x, sigma_y),
        (sigma_y, sigma_x),
        (sigma_y, sigma_y),
        (sigma_z, sigma_z),
    ]
    dirs = np.array([np.kron(a, b) / 2 for a, b in pairs])
    return StateFamily(kind="x_state", n_a=2, n_b=2, directions=_frozen(dirs))


def rebit_rebit() -> StateFamily:
    """Real-valued two-qubit states, coordinatized by the 9 real tensor
    products of {I, sigma_x, sigma_z} plus sigma_y (x) sigma_y."""
    pairs = [
        (np.eye(2), sigma_x),
        (np.eye(2), sigma_z),
        (sigma_x, np.eye(2)),
        (sigma_z, np.eye(2)),
        (sigma_x, sigma_x),
        (sigma_x, sigma_z),
        (sigma_y, sigma_y),
        (sigma_z, sigma_x),
        (sigma_z, sigma_z),
    ]
    dirs = np.array([np.kron(a, b) / 2 for a, b in pairs])
    return StateFamily(kind="rebit_rebit", n_a=2, n_b=2, directions=_frozen(dirs))


def _qubit_qutrit(kind: str, num_gell_mann: int) -> StateFamily:
    lam = gell_mann_matrices()[:num_gell_mann]
    dirs = np.array(
        [np.kron(s, g) / 2 for s in (sigma_x, sigma_y, sigma_z) for g in lam]
    )
    return StateFamily(kind=kind, n_a=2, n_b=3, directions=_frozen(dirs))


def qubit_qutrit_i() -> StateFamily:
    """Qubit-qutrit subfamily (i): sigma_{x,y,z} (x) lambda_{1..4}, d = 12."""
    return _qubit_qutrit("qubit_qutrit_i", 4)


def qubit_qutrit_ii() -> StateFamily:
    """Qubit-qutrit subfamily (ii): sigma_{x,y,z} (x) lambda_{1..8}, d = 24."""
    return _qubit_qutrit("qubit_qutrit_ii", 8)


def to_matrix(v: BlochVector) -> np.ndarray:
    """Embed Bloch coordinates as a unit-trace Hermitian matrix.

    The result is not necessarily positive semidefinite; use `is_state` to
    test membership in the state body.
    """
    coords = np.asarray(v.coords, dtype=float)
    if coords.shape != (v.family.dim,):
        raise ValueError(
            f"coordinate vector has shape {coords.shape}, "
            f"family {v.family.label} needs ({v.family.dim},)"
        )
    return v.family.matrix_from_coords(coords)


def to_bloch(m: np.ndarray, family: StateFamily, tol: float = SPAN_TOL) -> BlochVector:
    """Project a Hermitian unit-trace matrix onto a family's coordinates.

    Raises NotInFamilyError when the reconstruction from the projected
    coordinates misses `m` by more than `tol` elementwise, i.e. when `m`
    does not lie in the family's affine span.
    """
    n = family.ambient_dim
    m = np.asarray(m, dtype=complex)
    if m.shape != (n, n):
        raise ValueError(f"matrix has shape {m.shape}, expected ({n}, {n})")
    coords = np.einsum("ij,aji->a", m, family.directions).real
    residual = np.abs(family.matrix_from_coords(coords) - m).max()
    if residual > tol:
        raise NotInFamilyError(
            f"matrix is not in the span of family {family.label} "
            f"(residual {residual:.3e} > {tol:.1e})"
        )
    return BlochVector(family=family, coords=coords)


def min_eigenvalue(m: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(np.linalg.eigvalsh(m)[0])


def is_state(v: BlochVector) -> bool:
    """Membership of Bloch coordinates in the state body K.

    True iff the embedded matrix has minimum eigenvalue >= -PSD_TOL.
    """
    return min_eigenvalue(to_matrix(v)) >= -PSD_TOL


def partial_trace(m: np.ndarray, n_a: int, n_b: int, subsystem: str) -> np.ndarray:
    """Trace out one subsystem of a bipartite matrix.

    Parameters
    ----------
    subsystem : str
        The subsystem that is traced out: "B" returns the reduction to A
        (n_a x n_a), "A" the reduction to B (n_b x n_b).
    """
    m4 = np.asarray(m).reshape(n_a, n_b, n_a, n_b)
    if subsystem == "B":
        return np.einsum("ijkj->ik", m4)
    if subsystem == "A":
        return np.einsum("ijil->jl", m4)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def partial_transpose(m: np.ndarray, n_a: int, n_b: int, subsystem: str = "A") -> np.ndarray:
    """Transpose one tensor factor with respect to the product basis.

    For subsystem "A" the entries are reindexed as <ij|m^T_A|kl> = <kj|m|il>;
    for "B" the roles of the column indices are swapped.  The two choices
    give matrices with identical spectra.
    """
    n = n_a * n_b
    m4 = np.asarray(m).reshape(n_a, n_b, n_a, n_b)
    if subsystem == "A":
        return m4.transpose(2, 1, 0, 3).reshape(n, n)
    if subsystem == "B":
        return m4.transpose(0, 3, 2, 1).reshape(n, n)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
