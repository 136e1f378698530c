"""Dense complex linear algebra shared by every other module.

Matrices are plain numpy arrays with dtype complex128.  Hermitian spectra
go through LAPACK's dedicated Hermitian solver after explicit
symmetrization, and operator norms are square roots of the top eigenvalue
of M*M.  Everything here stays at desk scale (dimension <= ~200), where
double precision is conclusive at the tolerances used.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotHermitianError

__all__ = [
    "Definiteness",
    "DefinitenessVerdict",
    "as_matrix",
    "classify_definiteness",
    "default_tol",
    "herm_eigs",
    "kron",
    "operator_norm",
]


def as_matrix(obj, name: str = "matrix") -> np.ndarray:
    """Coerce ``obj`` to a finite 2-d complex128 array."""
    M = np.asarray(obj, dtype=np.complex128)
    if M.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {M.shape}")
    if M.shape[0] == 0 or M.shape[1] == 0:
        raise ValueError(f"{name} must have positive dimensions")
    if not (np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag))):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def default_tol(M: np.ndarray) -> float:
    """Default tolerance 1e-9 * (1 + ||M||_F), used wherever unstated."""
    return 1e-9 * (1.0 + float(np.linalg.norm(M)))


def kron(A, B) -> np.ndarray:
    """Kronecker product; entry ((i*rB+k), (j*cB+l)) equals A[i,j]*B[k,l]."""
    return np.kron(as_matrix(A, "A"), as_matrix(B, "B"))


def herm_eigs(M, tol: float | None = None) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    The input must satisfy ||M - M*|| <= tol * (1 + ||M||); what is
    diagonalized is the symmetrization (M + M*) / 2.
    """
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise NotHermitianError(f"matrix is not square: shape {M.shape}")
    if tol is None:
        tol = 1e-9
    scale = 1.0 + float(np.linalg.norm(M))
    deviation = float(np.linalg.norm(M - M.conj().T))
    if deviation > tol * scale:
        raise NotHermitianError(
            f"||M - M*|| = {deviation:.3e} exceeds {tol:.1e} * (1 + ||M||)"
        )
    return np.linalg.eigvalsh((M + M.conj().T) / 2.0)


def operator_norm(M) -> float:
    """Largest singular value; 0 for the zero matrix."""
    M = as_matrix(M)
    if not M.any():
        return 0.0
    gram = M.conj().T @ M
    top = float(herm_eigs(gram)[-1])
    return float(np.sqrt(max(top, 0.0)))


class Definiteness(Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE_SINGULAR = "positive_semidefinite_singular"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class DefinitenessVerdict:
    """Sign classification of a Hermitian matrix with a tolerance band.

    Positive definite when min_eig > tol, indefinite when min_eig < -tol,
    and positive semidefinite with a numerically singular part in between.
    """

    kind: Definiteness
    min_eig: float
    tol: float


def classify_definiteness(M, tol: float | None = None) -> DefinitenessVerdict:
    """Classify a Hermitian matrix by the sign of its smallest eigenvalue."""
    M = as_matrix(M)
    if tol is None:
        tol = default_tol(M)
    min_eig = float(herm_eigs(M)[0])
    if min_eig > tol:
        kind = Definiteness.POSITIVE_DEFINITE
    elif min_eig < -tol:
        kind = Definiteness.INDEFINITE
    else:
        kind = Definiteness.POSITIVE_SEMIDEFINITE_SINGULAR
    return DefinitenessVerdict(kind=kind, min_eig=min_eig, tol=float(tol))
