"""Dense complex linear algebra: the substrate every other module builds on.

All objects are plain ``numpy`` arrays of ``complex128``.  Spaces in decision
problems are tiny (dimension at most a few dozen), so double precision leaves
orders of magnitude of headroom over the tolerances used here:

* ``STRUCTURAL_TOL`` (1e-9) for structural checks: hermiticity, unitarity,
  unit trace, orthonormality.
* ``ALGEBRAIC_TOL`` (1e-12) for algebraic identities on small matrices.

No NaN or infinity is admitted into any public operation.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DimensionError, HermiticityError, InvariantError, UnitarityError

__all__ = [
    "STRUCTURAL_TOL",
    "ALGEBRAIC_TOL",
    "as_complex_matrix",
    "as_complex_vector",
    "matmul",
    "adjoint",
    "trace",
    "kron",
    "unitary_from_hamiltonian",
    "random_unitary",
    "hermiticity_defect",
    "unitarity_defect",
    "is_hermitian",
    "is_unitary",
]

STRUCTURAL_TOL = 1e-9
ALGEBRAIC_TOL = 1e-12


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a 2-d complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be two-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise InvariantError(f"{name} contains non-finite entries")
    return m


def as_complex_vector(v, name: str = "vector") -> np.ndarray:
    """Coerce ``v`` to a 1-d complex128 array, rejecting non-finite entries."""
    w = np.asarray(v, dtype=np.complex128)
    if w.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {w.shape}")
    if not np.all(np.isfinite(w.real)) or not np.all(np.isfinite(w.imag)):
        raise InvariantError(f"{name} contains non-finite entries")
    return w


def require_square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit conformability check."""
    a = as_complex_matrix(a, "left operand")
    b = as_complex_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex_matrix(a).conj().T


def trace(a) -> complex:
    """Trace of a square matrix."""
    m = require_square(as_complex_matrix(a))
    return complex(np.trace(m))


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result equals ``a[i, j] * b``."""
    return np.kron(as_complex_matrix(a, "left operand"), as_complex_matrix(b, "right operand"))


def hermiticity_defect(a: np.ndarray) -> float:
    """Max-norm of ``a - a†``."""
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def unitarity_defect(u: np.ndarray) -> float:
    """Max-norm of ``u†u - I``."""
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def is_hermitian(a: np.ndarray, tol: float = STRUCTURAL_TOL) -> bool:
    return a.shape[0] == a.shape[1] and hermiticity_defect(a) <= tol


def is_unitary(u: np.ndarray, tol: float = STRUCTURAL_TOL) -> bool:
    return u.shape[0] == u.shape[1] and unitarity_defect(u) <= tol


def unitary_from_hamiltonian(h, t: float, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """Evolution operator ``exp(-i h t)`` for a Hermitian generator ``h``.

    The generator must be Hermitian within ``tol``; the result is unitary to
    machine precision.
    """
    m = require_square(as_complex_matrix(h, "hamiltonian"), "hamiltonian")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise HermiticityError(
            f"hamiltonian is not Hermitian: max|h - h^dagger| = {defect:.3g} > {tol:.3g}"
        )
    if not np.isfinite(t):
        raise InvariantError("evolution time must be finite")
    return scipy.linalg.expm(-1j * m * float(t))


def random_unitary(dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary, deterministic under a fixed seed.

    Orthonormalizes a matrix of independent standard complex Gaussians by QR
    and fixes the phases of the diagonal of R so the distribution is Haar.
    """
    if dim < 1:
        raise DimensionError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
