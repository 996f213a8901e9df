"""Orthonormal Hermitian generator bases.

The traceless part of the space of Hermitian n x n matrices is spanned by
the n^2 - 1 generalized Gell-Mann matrices, normalized here so that
Tr(T_i T_j) = delta_ij under the Hilbert-Schmidt inner product.  Together
with I_n/sqrt(n) they form an orthonormal basis of all Hermitian matrices,
which is what lets a unit-trace matrix be written as I_n/n + sum_i a_i T_i
with Euclidean coordinates a.

Element order is fixed so that Bloch coordinates are stable across runs:

* symmetric off-diagonal pairs (E_jk + E_kj)/sqrt(2), j < k lexicographic,
* antisymmetric pairs -i(E_jk - E_kj)/sqrt(2), j < k lexicographic,
* diagonal matrices diag(1, ..., 1, -l, 0, ..., 0)/sqrt(l(l+1)), l = 1..n-1.

For n = 2 this yields exactly (sigma_x, sigma_y, sigma_z)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HS_TOL = 1e-12

sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
sigma_y = np.array([[0, -1j], [1j, 0]], dtype=complex)
sigma_z = np.array([[1, 0], [0, -1]], dtype=complex)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GeneratorBasis:
    """Normalized SU(n) generators T_1 .. T_{n^2-1}, HS-orthonormal."""

    n: int
    matrices: np.ndarray  # (n^2 - 1, n, n) complex, read-only

    def __len__(self) -> int:
        return self.matrices.shape[0]


@dataclass(frozen=True)
class ProductBasis:
    """Traceless HS-orthonormal basis of a bipartite n_a x n_b system.

    Elements come in three blocks, each in lexicographic index order:
    ``T_i^(A) (x) I/sqrt(n_b)``, ``I/sqrt(n_a) (x) T_j^(B)`` and
    ``T_i^(A) (x) T_j^(B)``, of sizes n_a^2-1, n_b^2-1 and
    (n_a^2-1)(n_b^2-1).
    """

    n_a: int
    n_b: int
    matrices: np.ndarray  # (n_a^2 n_b^2 - 1, n, n) complex, read-only

    def __len__(self) -> int:
        return self.matrices.shape[0]

    @property
    def block_sizes(self) -> tuple[int, int, int]:
        da, db = self.n_a**2 - 1, self.n_b**2 - 1
        return da, db, da * db


def build_generator_basis(n: int) -> GeneratorBasis:
    """Construct the generalized Gell-Mann basis of SU(n).

    Parameters
    ----------
    n : int
        Subsystem dimension, at least 2.

    Returns
    -------
    GeneratorBasis
        n^2 - 1 traceless Hermitian matrices with Tr(T_i T_j) = delta_ij,
        in the module-level documented order.
    """
    if n < 2:
        raise ValueError(f"generator basis needs dimension n >= 2, got {n}")
    mats = np.zeros((n * n - 1, n, n), dtype=complex)
    idx = 0
    for j in range(n):
        for k in range(j + 1, n):
            mats[idx, j, k] = mats[idx, k, j] = 1 / np.sqrt(2)
            idx += 1
    for j in range(n):
        for k in range(j + 1, n):
            mats[idx, j, k] = -1j / np.sqrt(2)
            mats[idx, k, j] = 1j / np.sqrt(2)
            idx += 1
    for l in range(1, n):
        norm = 1 / np.sqrt(l * (l + 1))
        for i in range(l):
            mats[idx, i, i] = norm
        mats[idx, l, l] = -l * norm
        idx += 1
    return GeneratorBasis(n=n, matrices=_frozen(mats))


def build_product_basis(n_a: int, n_b: int) -> ProductBasis:
    """Construct the bipartite product basis for an n_a x n_b system."""
    if n_a < 2 or n_b < 2:
        raise ValueError(f"product basis needs dimensions >= 2, got {n_a}x{n_b}")
    ta = build_generator_basis(n_a).matrices
    tb = build_generator_basis(n_b).matrices
    eye_a = np.eye(n_a) / np.sqrt(n_a)
    eye_b = np.eye(n_b) / np.sqrt(n_b)
    elements = [np.kron(t, eye_b) for t in ta]
    elements += [np.kron(eye_a, t) for t in tb]
    elements += [np.kron(a, b) for a in ta for b in tb]
    return ProductBasis(n_a=n_a, n_b=n_b, matrices=_frozen(np.array(elements)))


def gell_mann_matrices() -> np.ndarray:
    """The eight Gell-Mann matrices lambda_1 .. lambda_8 (Tr lambda_i^2 = 2),
    in the conventional physics order."""
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0, 0, 1] = lam[0, 1, 0] = 1
    lam[1, 0, 1] = -1j
    lam[1, 1, 0] = 1j
    lam[2, 0, 0], lam[2, 1, 1] = 1, -1
    lam[3, 0, 2] = lam[3, 2, 0] = 1
    lam[4, 0, 2] = -1j
    lam[4, 2, 0] = 1j
    lam[5, 1, 2] = lam[5, 2, 1] = 1
    lam[6, 1, 2] = -1j
    lam[6, 2, 1] = 1j
    lam[7, 0, 0] = lam[7, 1, 1] = 1 / np.sqrt(3)
    lam[7, 2, 2] = -2 / np.sqrt(3)
    return _frozen(lam)
