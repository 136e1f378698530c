"""Monic linear pencils and membership tests for their matrix solution sets.

A pencil is a tuple A of d x d coefficient matrices; it evaluates on a
g-tuple X of n x n matrices as

    L_A(X) = I - sum_j kron(A_j, X_j) - sum_j kron(A_j, X_j)*

and X belongs to the solution set at level n exactly when L_A(X) is
positive semidefinite.  The module also covers spectraballs (off-diagonal
block pencils, membership via ||Lambda_E(X)|| <= 1) and the two-step
block pencils built from a pair (C1, C2) of norm-one matrices, whose
membership reduces, by a Schur complement, to

    kron(X1* X1, C1* C1) + kron(X2 X2*, C2 C2*)  vs  I.

The Kronecker factor order is fixed globally: coefficient first for
pencil evaluation, variable product first for the reduced two-step test.
The two orders are permutation-similar, so classifications agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, NormNotOneError
from .linalg import as_matrix, default_tol, herm_eigs, operator_norm

__all__ = [
    "ETuple",
    "MatrixTuple",
    "MembershipVerdict",
    "Pencil",
    "Region",
    "build_E_pencil",
    "coefficient_sum_lambda_max",
    "direct_sum",
    "e_membership",
    "eval_lambda",
    "eval_pencil",
    "is_free_bidisk",
    "membership",
    "spectraball_membership",
    "spectraball_pencil",
    "sum_not_strictly_dominated",
    "torus_scale",
]


def _freeze(M: np.ndarray) -> np.ndarray:
    out = np.array(M, dtype=np.complex128)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class MatrixTuple:
    """A g-tuple of square n x n complex matrices (a point at level n)."""

    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.mats) == 0:
            raise ValueError("tuple must contain at least one matrix")
        frozen = []
        n = None
        for i, M in enumerate(self.mats):
            M = as_matrix(M, f"mats[{i}]")
            if M.shape[0] != M.shape[1]:
                raise DimensionMismatchError(f"mats[{i}] is not square: {M.shape}")
            if n is None:
                n = M.shape[0]
            elif M.shape[0] != n:
                raise DimensionMismatchError(
                    f"mats[{i}] has size {M.shape[0]}, expected {n}"
                )
            frozen.append(_freeze(M))
        object.__setattr__(self, "mats", tuple(frozen))

    @property
    def g(self) -> int:
        return len(self.mats)

    @property
    def n(self) -> int:
        return self.mats[0].shape[0]

    @classmethod
    def zeros(cls, g: int, n: int) -> "MatrixTuple":
        return cls(tuple(np.zeros((n, n)) for _ in range(g)))


@dataclass(frozen=True)
class Pencil:
    """A defining tuple A of g coefficient matrices, each d x d."""

    A: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.A) == 0:
            raise ValueError("pencil needs at least one coefficient")
        frozen = []
        d = None
        for i, M in enumerate(self.A):
            M = as_matrix(M, f"A[{i}]")
            if M.shape[0] != M.shape[1]:
                raise DimensionMismatchError(f"A[{i}] is not square: {M.shape}")
            if d is None:
                d = M.shape[0]
            elif M.shape[0] != d:
                raise DimensionMismatchError(
                    f"A[{i}] has size {M.shape[0]}, expected {d}"
                )
            frozen.append(_freeze(M))
        object.__setattr__(self, "A", tuple(frozen))

    @property
    def d(self) -> int:
        return self.A[0].shape[0]

    @property
    def g(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class ETuple:
    """A pair (C1, C2) with ||Cj|| = 1, C1 of shape k x m, C2 of shape m x n."""

    C1: np.ndarray
    C2: np.ndarray

    def __post_init__(self):
        C1 = as_matrix(self.C1, "C1")
        C2 = as_matrix(self.C2, "C2")
        if C1.shape[1] != C2.shape[0]:
            raise DimensionMismatchError(
                f"C1 columns ({C1.shape[1]}) must match C2 rows ({C2.shape[0]})"
            )
        for name, C in (("C1", C1), ("C2", C2)):
            nrm = operator_norm(C)
            if abs(nrm - 1.0) > 1e-9:
                raise NormNotOneError(f"||{name}|| = {nrm:.12g}, must equal 1")
        object.__setattr__(self, "C1", _freeze(C1))
        object.__setattr__(self, "C2", _freeze(C2))

    @classmethod
    def normalized(cls, C1, C2) -> "ETuple":
        """Rescale both matrices to operator norm one and build the tuple."""
        C1 = as_matrix(C1, "C1")
        C2 = as_matrix(C2, "C2")
        n1, n2 = operator_norm(C1), operator_norm(C2)
        if n1 == 0.0 or n2 == 0.0:
            raise NormNotOneError("cannot normalize a zero matrix")
        return cls(C1 / n1, C2 / n2)

    @property
    def k(self) -> int:
        return self.C1.shape[0]

    @property
    def m(self) -> int:
        return self.C1.shape[1]

    @property
    def n(self) -> int:
        return self.C2.shape[1]

    @property
    def d(self) -> int:
        return self.k + self.m + self.n


class Region(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class MembershipVerdict:
    """Classification of a point against a closed matrix solution set.

    margin > tol is interior, |margin| <= tol is the boundary band, and
    margin < -tol is outside.
    """

    region: Region
    margin: float
    tol: float


def _verdict(margin: float, tol: float) -> MembershipVerdict:
    if margin > tol:
        region = Region.INTERIOR
    elif margin < -tol:
        region = Region.OUTSIDE
    else:
        region = Region.BOUNDARY
    return MembershipVerdict(region=region, margin=float(margin), tol=float(tol))


def eval_lambda(P: Pencil, X: MatrixTuple) -> np.ndarray:
    """The homogeneous part sum_j kron(A_j, X_j), of shape dn x dn."""
    if P.g != X.g:
        raise DimensionMismatchError(f"pencil has g={P.g}, tuple has g={X.g}")
    out = np.zeros((P.d * X.n, P.d * X.n), dtype=np.complex128)
    for A_j, X_j in zip(P.A, X.mats):
        out += np.kron(A_j, X_j)
    return out


def eval_pencil(P: Pencil, X: MatrixTuple) -> np.ndarray:
    """The Hermitian evaluation I - Lambda - Lambda*."""
    lam = eval_lambda(P, X)
    return np.eye(lam.shape[0], dtype=np.complex128) - lam - lam.conj().T


def membership(P: Pencil, X: MatrixTuple, tol: float | None = None) -> MembershipVerdict:
    """Membership of X in the pencil's solution set; margin is the least
    eigenvalue of the evaluation."""
    H = eval_pencil(P, X)
    if tol is None:
        tol = default_tol(H)
    margin = float(herm_eigs(H)[0])
    return _verdict(margin, tol)


def spectraball_pencil(E: Sequence[np.ndarray]) -> Pencil:
    """Embed k x l matrices E_j as the block pencil A_j = [[0, E_j], [0, 0]]."""
    mats = [as_matrix(M, f"E[{i}]") for i, M in enumerate(E)]
    k, l = mats[0].shape
    for i, M in enumerate(mats):
        if M.shape != (k, l):
            raise DimensionMismatchError(f"E[{i}] has shape {M.shape}, expected {(k, l)}")
    A = []
    for M in mats:
        block = np.zeros((k + l, k + l), dtype=np.complex128)
        block[:k, k:] = M
        A.append(block)
    return Pencil(tuple(A))


def spectraball_membership(
    E: Sequence[np.ndarray], X: MatrixTuple, tol: float | None = None
) -> MembershipVerdict:
    """Spectraball membership: margin is 1 - ||sum_j kron(E_j, X_j)||."""
    mats = [as_matrix(M, f"E[{i}]") for i, M in enumerate(E)]
    if len(mats) != X.g:
        raise DimensionMismatchError(f"{len(mats)} coefficients vs tuple with g={X.g}")
    k, l = mats[0].shape
    lam = np.zeros((k * X.n, l * X.n), dtype=np.complex128)
    for E_j, X_j in zip(mats, X.mats):
        if E_j.shape != (k, l):
            raise DimensionMismatchError("spectraball coefficients must share a shape")
        lam += np.kron(E_j, X_j)
    s = operator_norm(lam)
    if tol is None:
        tol = 1e-9 * (1.0 + s)
    return _verdict(1.0 - s, tol)


def build_E_pencil(C1, C2, tol: float = 1e-9) -> tuple[ETuple, Pencil]:
    """Assemble the two-step block pencil carrying C1 in block (1,2) and C2
    in block (2,3) of a (k+m+n) x (k+m+n) matrix."""
    C1 = as_matrix(C1, "C1")
    C2 = as_matrix(C2, "C2")
    for name, C in (("C1", C1), ("C2", C2)):
        nrm = operator_norm(C)
        if abs(nrm - 1.0) > tol:
            raise NormNotOneError(f"||{name}|| = {nrm:.12g}; rescale before building")
    et = ETuple(C1, C2)
    k, m, n = et.k, et.m, et.n
    d = et.d
    E1 = np.zeros((d, d), dtype=np.complex128)
    E2 = np.zeros((d, d), dtype=np.complex128)
    E1[:k, k:k + m] = et.C1
    E2[k:k + m, k + m:] = et.C2
    return et, Pencil((E1, E2))


def e_membership(
    E: ETuple, X1, X2, tol: float | None = None
) -> MembershipVerdict:
    """Membership for the two-step pencil via its Schur-complement form.

    Classifies S = kron(X1* X1, C1* C1) + kron(X2 X2*, C2 C2*) against the
    identity; margin is 1 - max eigenvalue of S.
    """
    X1 = as_matrix(X1, "X1")
    X2 = as_matrix(X2, "X2")
    if X1.shape != X2.shape or X1.shape[0] != X1.shape[1]:
        raise DimensionMismatchError("X1 and X2 must be square of equal size")
    S = np.kron(X1.conj().T @ X1, E.C1.conj().T @ E.C1) + np.kron(
        X2 @ X2.conj().T, E.C2 @ E.C2.conj().T
    )
    top = float(herm_eigs(S)[-1])
    if tol is None:
        tol = 1e-9 * (1.0 + top)
    return _verdict(1.0 - top, tol)


def coefficient_sum_lambda_max(E: ETuple) -> float:
    """Largest eigenvalue of C1* C1 + C2 C2* (both are m x m)."""
    S = E.C1.conj().T @ E.C1 + E.C2 @ E.C2.conj().T
    return float(herm_eigs(S)[-1])


def is_free_bidisk(E: ETuple, tol: float = 1e-9) -> bool:
    """True when C1* C1 + C2 C2* is dominated by the identity, in which
    case the interior of the two-step domain is exactly the free bidisk."""
    return coefficient_sum_lambda_max(E) <= 1.0 + tol


def sum_not_strictly_dominated(E: ETuple, tol: float = 1e-9) -> bool:
    """True when C1* C1 + C2 C2* is not strictly below the identity.

    This holds for every valid tuple (the top eigenvalue is at least
    ||C1||^2 = 1); it is exposed as a sanity predicate distinct from the
    rigid-case gate, which is ``not is_free_bidisk(E)``.
    """
    return coefficient_sum_lambda_max(E) >= 1.0 - tol


def direct_sum(X: MatrixTuple, Y: MatrixTuple) -> MatrixTuple:
    """Coordinatewise block-diagonal direct sum of two tuples."""
    if X.g != Y.g:
        raise DimensionMismatchError(f"tuples have g={X.g} and g={Y.g}")
    mats = []
    for Xj, Yj in zip(X.mats, Y.mats):
        M = np.zeros((X.n + Y.n, X.n + Y.n), dtype=np.complex128)
        M[:X.n, :X.n] = Xj
        M[X.n:, X.n:] = Yj
        mats.append(M)
    return MatrixTuple(tuple(mats))


def torus_scale(angles: Sequence[float], X: MatrixTuple) -> MatrixTuple:
    """Scale each coordinate by the unimodular exp(i * angle_j)."""
    angles = np.asarray(angles, dtype=np.float64)
    if angles.shape != (X.g,):
        raise DimensionMismatchError(f"need {X.g} angles, got shape {angles.shape}")
    return MatrixTuple(tuple(np.exp(1j * a) * M for a, M in zip(angles, X.mats)))
