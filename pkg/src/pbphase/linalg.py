"""Dense complex linear algebra helpers.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``.
The predicates here all reduce to a max-abs-entry comparison, which is the
single metric used by every check in the package.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = [
    "DEFAULT_TOL",
    "QUADRATURE_TOL",
    "ShapeError",
    "as_matrix",
    "frozen",
    "adjoint",
    "matmul",
    "commutator",
    "max_abs_diff",
    "unitarity_defect",
    "hermiticity_defect",
    "is_unitary",
    "is_hermitian",
]

DEFAULT_TOL = 1e-12
QUADRATURE_TOL = 1e-9

ComplexMatrix = NDArray[np.complex128]


class ShapeError(ValueError):
    """Operand shapes are incompatible for the requested operation."""


def as_matrix(a: ArrayLike) -> ComplexMatrix:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def frozen(a: np.ndarray) -> np.ndarray:
    """Mark an array read-only and return it."""
    a.flags.writeable = False
    return a


def _square(m: ComplexMatrix, name: str) -> None:
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {m.shape}")


def adjoint(a: ArrayLike) -> ComplexMatrix:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def matmul(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def commutator(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    """Return ``AB - BA`` for square matrices of equal size."""
    a, b = as_matrix(a), as_matrix(b)
    _square(a, "A")
    _square(b, "B")
    if a.shape != b.shape:
        raise ShapeError(f"commutator of {a.shape} and {b.shape}")
    return a @ b - b @ a


def max_abs_diff(a: ArrayLike, b: ArrayLike) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def unitarity_defect(a: ArrayLike) -> float:
    """Max-abs entry of ``A^dagger A - I``."""
    a = as_matrix(a)
    _square(a, "A")
    return max_abs_diff(a.conj().T @ a, np.eye(a.shape[0]))


def hermiticity_defect(a: ArrayLike) -> float:
    a = as_matrix(a)
    _square(a, "A")
    return max_abs_diff(a, a.conj().T)


def is_unitary(a: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_defect(a) <= tol


def is_hermitian(a: ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    return hermiticity_defect(a) <= tol
