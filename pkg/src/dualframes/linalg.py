"""Dense linear algebra for small matrices (N <= 16).

Symmetric problems go through cyclic Jacobi, general real matrices through
balancing, Householder-Hessenberg reduction and Francis double-shift QR.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import DomainError, NoConvergence, NonSymmetric

SYM_TOL = 1e-14
ASYMMETRY_TOL = 1e-12
MAX_SWEEPS = 100
QR_ITER_FACTOR = 30
NULL_TOL = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending; ``vectors[:, j]`` pairs with ``values[j]``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self):
        return (self.vectors * self.values) @ self.vectors.T


def as_matrix(m, name="matrix"):
    a = np.array(m, dtype=float)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DomainError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} has non-finite entries")
    return a


def _square(m, name="matrix"):
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise DomainError(f"{name} must be square, got shape {a.shape}")
    return a


def _fix_signs(vectors):
    # largest-magnitude component of every column made positive; near-ties
    # go to the first such index
    mags = np.abs(vectors)
    idx = np.argmax(mags >= mags.max(axis=0) * (1.0 - 1e-9), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def sym_eig(m, tol=SYM_TOL):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops below
    ``tol * ||M||_F``. Eigenvector signs are fixed so that each column's
    largest-magnitude entry is positive.
    """
    a = _square(m)
    fro = np.linalg.norm(a)
    if np.linalg.norm(a - a.T) > ASYMMETRY_TOL * fro:
        raise NonSymmetric(
            f"relative asymmetry {np.linalg.norm(a - a.T) / fro:.3e} exceeds {ASYMMETRY_TOL:g}")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    if n == 1 or not np.any(a - np.diag(np.diag(a))):
        values = np.diag(a).copy()
        vectors = np.eye(n)
    else:
        scale = _kernels.pow2_scale(a)
        values, vectors, _, ok = _kernels.jacobi_eigh(a / scale, float(tol), MAX_SWEEPS)
        if not ok:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        values = values * scale
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], _fix_signs(vectors[:, order]))


def general_eigenvalues(m):
    """All eigenvalues of a real square matrix, with multiplicity.

    Returned as a complex array ordered by descending real part, then
    descending imaginary part.
    """
    a = _square(m)
    n = a.shape[0]
    if n > 16:
        raise DomainError(f"matrix size {n} exceeds 16")
    if n == 1:
        return np.array([complex(a[0, 0], 0.0)])
    wr, wi, ok = _kernels.real_eigvals(a, QR_ITER_FACTOR)
    if not ok:
        raise NoConvergence(f"Francis QR did not converge in {QR_ITER_FACTOR * n} iterations")
    order = np.lexsort((-wi, -wr))
    return (wr + 1j * wi)[order]


def spectral_radius(m):
    return float(np.max(np.abs(general_eigenvalues(m))))


def operator_norm(m):
    """Largest singular value, i.e. sqrt of the top eigenvalue of M^T M."""
    a = as_matrix(m)
    lam = sym_eig(a.T @ a).values[0]
    return float(np.sqrt(max(lam, 0.0)))


def null_space_basis(m, tol=NULL_TOL):
    """Orthonormal basis (as columns) for eigenvalues below ``tol * lambda_max``."""
    eig = sym_eig(m)
    lam_max = eig.values[0]
    keep = eig.values < tol * lam_max if lam_max > 0 else np.ones(eig.values.size, bool)
    return eig.vectors[:, keep]


def power_mean_check(a, w, m):
    """Compare the weighted mean of ``a**m`` with the m-th power of the weighted mean.

    Returns ``">="``, ``"<="`` or ``"="``. Equality is reported when all
    ``a`` coincide (relative 1e-12), and for ``m`` in {0, 1} where both sides
    agree identically.
    """
    a = np.asarray(a, dtype=float)
    w = np.asarray(w, dtype=float)
    if a.ndim != 1 or a.shape != w.shape or a.size == 0:
        raise DomainError("a and w must be non-empty lists of equal length")
    if np.any(a <= 0) or np.any(w <= 0):
        raise DomainError("all entries of a and w must be positive")
    m = float(Fraction(m)) if isinstance(m, (str, Fraction)) else float(m)
    spread = np.max(a) - np.min(a)
    if spread <= 1e-12 * np.max(a) or m in (0.0, 1.0):
        return "="
    lhs = np.sum(w * a**m) / np.sum(w)
    rhs = (np.sum(w * a) / np.sum(w)) ** m
    return ">=" if lhs >= rhs else "<="
