"""Dense real-matrix kernels used by the rest of the package.

All matrices are plain 2-D ``numpy.float64`` arrays; :func:`as_matrix` is
the validating constructor (rejects ragged input and non-finite entries).
Everything here is a pure function, so the module is safe to use from
multiple threads.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "NonFiniteError",
    "ShapeMismatchError",
    "SingularMatrixError",
    "as_matrix",
    "as_vector",
    "expm",
    "is_positive_definite",
    "matmul",
    "rank",
    "solve",
    "transpose",
]

EPS = float(np.finfo(float).eps)


class ShapeMismatchError(ValueError):
    """Operands have incompatible or invalid shapes."""


class NonFiniteError(ValueError):
    """Input contains NaN or infinite entries."""


class SingularMatrixError(ValueError):
    """Matrix is numerically singular at the working tolerance."""

    def __init__(self, message: str, condition: float = float("inf"),
                 min_singular_value: float = 0.0):
        super().__init__(message)
        self.condition = condition
        self.min_singular_value = min_singular_value


def as_matrix(values, name: str = "matrix") -> np.ndarray:
    """Copy ``values`` into a validated 2-D float array."""
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ShapeMismatchError(f"{name} is ragged or non-numeric: {exc}") from None
    if arr.ndim != 2:
        raise ShapeMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size and not np.isfinite(arr).all():
        raise NonFiniteError(f"{name} contains non-finite entries")
    return arr


def as_vector(values, name: str = "vector") -> np.ndarray:
    """Copy ``values`` into a validated 1-D float array."""
    try:
        arr = np.array(values, dtype=float).ravel()
    except (TypeError, ValueError) as exc:
        raise ShapeMismatchError(f"{name} is ragged or non-numeric: {exc}") from None
    if arr.size and not np.isfinite(arr).all():
        raise NonFiniteError(f"{name} contains non-finite entries")
    return arr


def transpose(m) -> np.ndarray:
    """Transpose; with real entries this is also the conjugate transpose."""
    return as_matrix(m).T


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit conformability check."""
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatchError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return a @ b


# Degree-6 diagonal Pade coefficients for exp(x), scaled to integers.
_PADE6 = (479001600.0, 239500800.0, 54432000.0, 7257600.0,
          604800.0, 30240.0, 720.0)


def expm(a, t: float = 1.0) -> np.ndarray:
    """Matrix exponential ``exp(a*t)`` by scaling-and-squaring.

    The argument is scaled so its 1-norm is at most 0.5, where the degree-6
    Pade approximant is accurate to rounding level, then the scaling is
    undone by repeated squaring.  The result is always nonsingular since
    det(exp(At)) = exp(t*trace(A)) > 0.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"matrix exponential needs a square matrix, got {a.shape}")
    t = float(t)
    if not np.isfinite(t):
        raise NonFiniteError("time must be finite")
    x = a * t
    norm = np.linalg.norm(x, 1) if x.size else 0.0
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
        x = x / 2.0 ** squarings
    eye = np.eye(x.shape[0])
    c = _PADE6
    x2 = x @ x
    x4 = x2 @ x2
    even = c[0] * eye + c[2] * x2 + c[4] * x4 + c[6] * (x2 @ x4)
    odd = x @ (c[1] * eye + c[3] * x2 + c[5] * x4)
    f = np.linalg.solve(even - odd, even + odd)
    for _ in range(squarings):
        f = f @ f
    return f


def rank(m, rel_tol: float | None = None) -> int:
    """Numerical rank: singular values above ``rel_tol`` times the largest.

    The default tolerance is machine epsilon times the larger dimension.
    """
    m = as_matrix(m)
    if rel_tol is None:
        rel_tol = EPS * max(m.shape)
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def is_positive_definite(m, tol: float = 1e-10) -> bool:
    """Whether the symmetrized input is positive definite.

    The input is symmetrized as (m + m.T)/2 first, since matrices that are
    symmetric only to rounding are the common case.  True iff the smallest
    eigenvalue exceeds ``tol`` times the largest diagonal magnitude.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatchError(f"definiteness test needs a square matrix, got {m.shape}")
    if m.size == 0:
        return False
    sym = 0.5 * (m + m.T)
    smallest = float(np.linalg.eigvalsh(sym)[0])
    scale = float(np.max(np.abs(np.diag(sym))))
    return smallest > tol * scale


def solve(m, rhs, rel_tol: float | None = None) -> np.ndarray:
    """Solve ``m @ x = rhs`` after checking numerical nonsingularity.

    Raises :class:`SingularMatrixError` (carrying a condition estimate)
    when the smallest singular value falls below ``rel_tol`` times the
    largest; default tolerance as in :func:`rank`.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatchError(f"solve needs a square matrix, got {m.shape}")
    rhs_arr = np.array(rhs, dtype=float)
    if rhs_arr.ndim not in (1, 2):
        raise ShapeMismatchError(f"right-hand side must be 1-D or 2-D, got shape {rhs_arr.shape}")
    if rhs_arr.shape[0] != m.shape[0]:
        raise ShapeMismatchError(
            f"right-hand side has {rhs_arr.shape[0]} rows, matrix is {m.shape[0]}x{m.shape[1]}")
    if rhs_arr.size and not np.isfinite(rhs_arr).all():
        raise NonFiniteError("right-hand side contains non-finite entries")
    if rel_tol is None:
        rel_tol = EPS * max(m.shape)
    s = np.linalg.svd(m, compute_uv=False) if m.size else np.zeros(0)
    smax = float(s[0]) if s.size else 0.0
    smin = float(s[-1]) if s.size else 0.0
    if smax == 0.0 or smin <= rel_tol * smax:
        cond = float("inf") if smin == 0.0 else smax / smin
        raise SingularMatrixError(
            f"matrix is singular at relative tolerance {rel_tol:.3e} "
            f"(condition estimate {cond:.3e}, smallest singular value {smin:.3e})",
            condition=cond, min_singular_value=smin)
    return np.linalg.solve(m, rhs_arr)
