"""Small dense complex linear algebra.

Everything here works on plain ``numpy`` arrays. A *subspace basis* is a
``(d, k)`` array whose columns are orthonormal; ``k`` may be zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractViolation, NotInSpanError, NumericFailure

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_matrix",
    "numeric_rank",
    "kernel_basis",
    "orthonormalize",
    "hermitian_eigenvalues",
    "solve_in_span",
    "univariate_roots",
    "poly_eval",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used throughout the package.

    Attributes:
        rank_rel: singular values at or below ``rank_rel * sigma_max`` count as zero.
        psd_abs: eigenvalue floor for positive semidefiniteness.
        residual_abs: residual under which a vector counts as a solution or member.
        dedupe_fid: two vectors are projectively equal when their fidelity
            exceeds ``1 - dedupe_fid``.
    """

    rank_rel: float = 1e-9
    psd_abs: float = 1e-10
    residual_abs: float = 1e-8
    dedupe_fid: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel", "psd_abs", "residual_abs", "dedupe_fid"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-2):
                raise ContractViolation(f"tolerance {name}={value!r} must lie in (0, 1e-2)")


DEFAULT_TOL = Tolerance()


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ContractViolation(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ContractViolation("matrix has non-finite entries")
    return a


def _svd(a: np.ndarray, full_matrices: bool = False):
    try:
        return np.linalg.svd(a, full_matrices=full_matrices)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericFailure(f"SVD did not converge: {exc}") from exc


def _rank_from_singular_values(s: np.ndarray, tol: Tolerance) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * s[0]))


def numeric_rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol.rank_rel`` times the largest one."""
    a = as_matrix(m)
    if a.size == 0:
        raise ContractViolation("numeric_rank of an empty matrix")
    return _rank_from_singular_values(_svd(a, full_matrices=False)[1], tol)


def kernel_basis(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the null space of ``m``, as columns of a ``(cols, k)`` array."""
    a = as_matrix(m)
    if a.size == 0:
        raise ContractViolation("kernel_basis of an empty matrix")
    _, s, vh = _svd(a, full_matrices=True)
    r = _rank_from_singular_values(s, tol)
    return vh[r:].conj().T.copy()


def _stack_columns(vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        return as_matrix(vectors)
    cols = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    if not cols:
        raise ContractViolation("no vectors given")
    length = cols[0].size
    if any(c.size != length for c in cols):
        raise ContractViolation("vectors have different lengths")
    return as_matrix(np.column_stack(cols))


def orthonormalize(vectors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the span of ``vectors``.

    ``vectors`` is either a sequence of 1-D vectors or a 2-D array whose
    columns are the vectors. The number of returned columns equals the
    numeric rank of the input.
    """
    a = _stack_columns(vectors)
    u, s, _ = _svd(a, full_matrices=False)
    r = _rank_from_singular_values(s, tol)
    return u[:, :r].copy()


def hermitian_eigenvalues(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Real spectrum of a Hermitian matrix in ascending order."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ContractViolation(f"matrix is not square: {a.shape}")
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol.residual_abs:
        raise ContractViolation(f"matrix is not Hermitian (max deviation {dev:.3e})")
    try:
        return np.linalg.eigvalsh((a + a.conj().T) / 2)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericFailure(f"eigvalsh did not converge: {exc}") from exc


def solve_in_span(basis_vectors, target, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Coefficients ``c`` with ``sum_i c_i * basis_vectors[i] == target``.

    Raises:
        ContractViolation: the basis vectors are linearly dependent.
        NotInSpanError: the least-squares residual exceeds
            ``tol.residual_abs * max(1, |target|)``.
    """
    b = _stack_columns(basis_vectors)
    t = np.asarray(target, dtype=complex).ravel()
    if t.size != b.shape[0]:
        raise ContractViolation("target length does not match basis vectors")
    if numeric_rank(b, tol) != b.shape[1]:
        raise ContractViolation("basis vectors are linearly dependent")
    coeffs, *_ = np.linalg.lstsq(b, t, rcond=None)
    residual = np.linalg.norm(b @ coeffs - t)
    if residual > tol.residual_abs * max(1.0, np.linalg.norm(t)):
        raise NotInSpanError(f"target is not in the span (residual {residual:.3e})")
    return coeffs


def poly_eval(coeffs: np.ndarray, x):
    """Evaluate a polynomial given by ascending coefficients (Horner)."""
    acc = np.zeros_like(np.asarray(x, dtype=complex))
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def _poly_scale(coeffs: np.ndarray, x: complex) -> float:
    return float(np.sum(np.abs(coeffs) * np.abs(x) ** np.arange(coeffs.size)))


def univariate_roots(coeffs: Sequence[complex], trim: float = 1e-14, max_iter: int = 50):
    """All complex roots of ``sum_k coeffs[k] * x**k``.

    Roots are eigenvalues of the companion matrix, each polished by Newton
    steps until the relative backward error ``|p(r)| / sum_k |c_k| |r|^k``
    drops below ``1e-12`` or stops improving. Leading coefficients below
    ``trim * max|c|`` are dropped (their roots lie near infinity).

    Returns ``None`` for the identically-zero polynomial.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0 or not np.all(np.isfinite(c)):
        raise ContractViolation("coefficients must be a non-empty finite list")
    cmax = np.max(np.abs(c))
    if cmax == 0.0:
        return None
    keep = np.nonzero(np.abs(c) > trim * cmax)[0]
    c = c[: keep[-1] + 1]
    degree = c.size - 1
    if degree == 0:
        return np.zeros(0, dtype=complex)
    companion = np.zeros((degree, degree), dtype=complex)
    companion[1:, :-1] = np.eye(degree - 1)
    companion[:, -1] = -c[:-1] / c[-1]
    try:
        roots = np.linalg.eigvals(companion)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericFailure(f"companion eigenvalues did not converge: {exc}") from exc

    dc = c[1:] * np.arange(1, c.size)
    polished = []
    for r in roots:
        val = poly_eval(c, r)
        for _ in range(max_iter):
            if abs(val) <= 1e-12 * _poly_scale(c, r):
                break
            d = poly_eval(dc, r)
            if d == 0:
                break
            r_new = r - val / d
            val_new = poly_eval(c, r_new)
            if not abs(val_new) < abs(val):
                break
            r, val = r_new, val_new
        polished.append(r)
    return np.asarray(polished, dtype=complex)
