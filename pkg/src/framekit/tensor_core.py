"""Fixed-size 3-vector / 3x3-matrix arithmetic and component transforms.

Two orthonormal frames are related by the direction-cosine matrix
``alpha`` with ``alpha[i, j] = e_i . e'_j`` (0-based storage; all public
index arguments are 1-based).  Columns of ``alpha`` are the unprimed
components of the primed basis vectors, so component transforms read

    x' = alpha.T @ x          (vector, to primed components)
    x  = alpha   @ x'         (vector, back)
    T' = alpha.T @ T @ alpha  (second-order tensor)

Gradient-like matrices everywhere in this package store the derivative
direction on the row: ``J[k, i] = d v_i / d x_k``.
"""

from __future__ import annotations

import numpy as np

from .errors import InvariantViolationError, UsageError

# Residual below which a matrix is accepted as orthogonal outright.
ORTH_TOL = 1e-9
# Residual up to which a drifted rotation is re-orthonormalized; above it
# the matrix is rejected as not a rotation at all.
ORTH_REPAIR_LIMIT = 1e-6

_I3 = np.eye(3)


def vec3(components) -> np.ndarray:
    """Validate and return a finite 3-component float vector."""
    x = np.asarray(components, dtype=float)
    if x.shape != (3,):
        raise UsageError(f"expected 3 components, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise UsageError(f"non-finite vector components: {x}")
    return x


def mat3(entries) -> np.ndarray:
    """Validate and return a finite 3x3 float matrix."""
    a = np.asarray(entries, dtype=float)
    if a.shape != (3, 3):
        raise UsageError(f"expected a 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise UsageError("non-finite matrix entries")
    return a


def levi_civita(i: int, j: int, k: int) -> float:
    """Permutation symbol for 1-based indices in {1, 2, 3}."""
    for idx in (i, j, k):
        if idx not in (1, 2, 3):
            raise UsageError(f"levi_civita index out of range: {idx}")
    if (i - j) * (i - k) * (j - k) == 0:
        return 0.0
    if (i, j, k) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        return 1.0
    return -1.0


def kronecker(i: int, j: int) -> float:
    """Kronecker delta for 1-based indices in {1, 2, 3}."""
    for idx in (i, j):
        if idx not in (1, 2, 3):
            raise UsageError(f"kronecker index out of range: {idx}")
    return 1.0 if i == j else 0.0


# Dense permutation symbol, 0-based, for vectorized contractions.
EPSILON = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPSILON[_i, _j, _k] = 1.0
    EPSILON[_i, _k, _j] = -1.0


def check_orthogonality(alpha) -> float:
    """Max deviation of alpha.T@alpha and alpha@alpha.T from the identity."""
    a = mat3(alpha)
    r1 = np.max(np.abs(a.T @ a - _I3))
    r2 = np.max(np.abs(a @ a.T - _I3))
    return float(max(r1, r2))


def _gram_schmidt_columns(a: np.ndarray) -> np.ndarray:
    """Re-orthonormalize the columns of a nearly-orthogonal matrix."""
    q = a.copy()
    for j in range(3):
        for k in range(j):
            q[:, j] -= (q[:, k] @ q[:, j]) * q[:, k]
        norm = np.linalg.norm(q[:, j])
        if norm == 0.0:
            raise InvariantViolationError("degenerate column in rotation repair")
        q[:, j] /= norm
    return q


def orthonormalized(alpha, tol: float = ORTH_TOL) -> np.ndarray:
    """Return a validated proper rotation, repairing small orthogonality drift.

    Residual <= tol: accepted as-is.  Residual in (tol, ORTH_REPAIR_LIMIT]:
    repaired by modified Gram-Schmidt on the columns.  Larger residuals and
    reflections (det <= 0) are rejected.
    """
    a = mat3(alpha)
    residual = check_orthogonality(a)
    if residual > ORTH_REPAIR_LIMIT:
        raise InvariantViolationError(
            f"matrix is not orthogonal (residual {residual:.3e})")
    if np.linalg.det(a) <= 0.0:
        raise InvariantViolationError("improper rotation (det <= 0) rejected")
    if residual > tol:
        a = _gram_schmidt_columns(a)
    return a


def require_rotation(alpha) -> np.ndarray:
    """Validate alpha as a proper rotation for use in a transform."""
    a = mat3(alpha)
    residual = check_orthogonality(a)
    if residual > ORTH_REPAIR_LIMIT:
        raise InvariantViolationError(
            f"transform requires an orthogonal matrix (residual {residual:.3e})")
    if np.linalg.det(a) <= 0.0:
        raise InvariantViolationError("improper rotation (det <= 0) rejected")
    return a


def to_prime_components(x_in_s, alpha) -> np.ndarray:
    """Components of the same vector in the primed frame: x'_j = x_i a_ij."""
    a = require_rotation(alpha)
    return a.T @ vec3(x_in_s)


def from_prime_components(x_in_sprime, alpha) -> np.ndarray:
    """Inverse of to_prime_components: x_i = x'_j a_ij."""
    a = require_rotation(alpha)
    return a @ vec3(x_in_sprime)


def transform_tensor2(t_in_s, alpha) -> np.ndarray:
    """Primed components of a second-order tensor: T' = alpha.T @ T @ alpha."""
    a = require_rotation(alpha)
    return a.T @ mat3(t_in_s) @ a


def untransform_tensor2(t_in_sprime, alpha) -> np.ndarray:
    """Unprimed components from primed ones: T = alpha @ T' @ alpha.T."""
    a = require_rotation(alpha)
    return a @ mat3(t_in_sprime) @ a.T


def cross(a, b) -> np.ndarray:
    """3-vector cross product (thin wrapper, keeps call sites uniform)."""
    return np.cross(vec3(a), vec3(b))


def skew(w) -> np.ndarray:
    """Matrix [w]x with skew(w) @ x == cross(w, x)."""
    w = vec3(w)
    return np.array([[0.0, -w[2], w[1]],
                     [w[2], 0.0, -w[0]],
                     [-w[1], w[0], 0.0]])


def axial(m) -> np.ndarray:
    """Axial vector of the antisymmetric part of m (inverse of skew)."""
    a = mat3(m)
    return 0.5 * np.array([a[2, 1] - a[1, 2],
                           a[0, 2] - a[2, 0],
                           a[1, 0] - a[0, 1]])
