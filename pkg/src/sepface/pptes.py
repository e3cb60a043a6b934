"""Rank-four three-qubit PPT entangled states from six product vectors.

Six unit product vectors ``z_0..z_5`` spanning a five-dimensional space
satisfy one linear relation ``z_6 = sum_i a_i z_i`` (the distinguished
vector written in terms of the other five). For weights ``p_i > 0`` summing
to one, the line

    rho_t = (1 - t) |z_6><z_6| + t sum_i p_i |z_i><z_i|

stays PPT up to ``t = lambda = S / (S - 1)`` with ``S = sum_i |a_i|^2 / p_i``,
where it reaches a PPT entangled edge state of rank four, provided each
family of partial conjugates of the six vectors also spans five dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .enumeration import enumerate_in_subspace
from .errors import (
    ContractViolation,
    DegenerateGammaSpanError,
    NoPptBoundaryError,
    NumericFailure,
)
from .linalg import DEFAULT_TOL, Tolerance, hermitian_eigenvalues, numeric_rank, solve_in_span
from .tensor import HermitianOperator, PartyShape, ProductVector, partial_conjugate, partial_transpose, projectively_equal

__all__ = [
    "SixTuple",
    "BoundaryData",
    "PptesReport",
    "PPT_SUBSETS",
    "expansion_coefficients",
    "boundary_lambda",
    "boundary_data",
    "gamma_span_dims",
    "rho_on_line",
    "build_rho",
    "verify_pptes",
    "lambda_bisection_check",
    "uniform_weights",
]

THREE_QUBITS = PartyShape((2, 2, 2))
# T(S) and T(S^c) have the same spectrum, so these four cover all eight subsets.
PPT_SUBSETS: tuple[frozenset[int], ...] = (frozenset(), frozenset({0}), frozenset({1}), frozenset({2}))

_FORMULA_AGREEMENT = 1e-12
_AUDIT_AGREEMENT = 1e-6


@dataclass(frozen=True)
class SixTuple:
    """Six unit product vectors over three qubits spanning a five-dimensional space."""

    vectors: tuple[ProductVector, ...]
    distinguished: int = 5

    def __post_init__(self):
        _validate_six(self.vectors, self.distinguished, DEFAULT_TOL)

    @classmethod
    def from_vectors(cls, vectors: Sequence[ProductVector], distinguished: int = 5,
                     tol: Tolerance = DEFAULT_TOL) -> "SixTuple":
        """Normalize ``vectors`` and validate them with ``tol``."""
        vs = tuple(v.normalized() for v in vectors)
        _validate_six(vs, distinguished, tol)
        return cls(vs, distinguished)

    @property
    def target(self) -> ProductVector:
        return self.vectors[self.distinguished]

    @property
    def others(self) -> tuple[ProductVector, ...]:
        return tuple(v for i, v in enumerate(self.vectors) if i != self.distinguished)


def _validate_six(vs, distinguished: int, tol: Tolerance) -> None:
    if len(vs) != 6:
        raise ContractViolation(f"need exactly six product vectors, got {len(vs)}")
    if not 0 <= distinguished < 6:
        raise ContractViolation("distinguished index must be in 0..5")
    if any(v.shape != THREE_QUBITS for v in vs):
        raise ContractViolation("all vectors must live in 2x2x2")
    if any(abs(v.norm - 1.0) > tol.residual_abs for v in vs):
        raise ContractViolation("vectors must be normalized")
    for i, j in itertools.combinations(range(6), 2):
        if projectively_equal(vs[i], vs[j], tol):
            raise ContractViolation(f"vectors {i} and {j} are parallel")
    flats = np.column_stack([v.flat for v in vs])
    if numeric_rank(flats, tol) != 5:
        raise ContractViolation("the six vectors must span a five-dimensional space")
    for idx in itertools.combinations(range(6), 5):
        if numeric_rank(flats[:, idx], tol) != 5:
            raise ContractViolation(f"vectors {idx} are linearly dependent")


@dataclass(frozen=True)
class BoundaryData:
    a: np.ndarray
    p: np.ndarray
    S: float
    lambda_: float


@dataclass(frozen=True)
class PptesReport:
    ranks: tuple[int, ...]
    """Ranks of ``rho^T(S)`` for S = {}, {0}, {1}, {2}."""
    min_eigs: tuple[float, ...]
    range_products: int | None
    """Product vectors in the range (``None``: infinitely many)."""
    kernel_products: int | None
    gamma_span_dims: tuple[int, ...] | None
    verdict: str
    notes: tuple[str, ...] = ()

    @property
    def is_ppt(self) -> bool:
        return self.verdict == "pptes-edge-rank4" or "PPT" in self.notes

    def as_dict(self) -> dict:
        return {
            "ranks": list(self.ranks),
            "min_eigs": list(self.min_eigs),
            "range_products": self.range_products,
            "kernel_products": self.kernel_products,
            "gamma_span_dims": None if self.gamma_span_dims is None else list(self.gamma_span_dims),
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def uniform_weights() -> np.ndarray:
    return np.full(5, 0.2)


def _check_weights(p, tol: Tolerance) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if p.size != 5:
        raise ContractViolation(f"need five weights, got {p.size}")
    if np.any(p <= 0):
        raise ContractViolation("weights must be positive")
    if abs(p.sum() - 1.0) > tol.residual_abs:
        raise ContractViolation(f"weights sum to {p.sum():.15g}, not 1")
    return p


def expansion_coefficients(six: SixTuple, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Coefficients of the distinguished vector in terms of the other five."""
    return solve_in_span([v.flat for v in six.others], six.target.flat, tol)


def boundary_lambda(a, p, tol: Tolerance = DEFAULT_TOL) -> float:
    """``S / (S - 1)`` with ``S = sum |a_i|^2 / p_i``; root of ``(1 - t) S + t = 0``."""
    a = np.asarray(a, dtype=complex).ravel()
    p = _check_weights(p, tol)
    if a.size != 5:
        raise ContractViolation("need five coefficients")
    s = float(np.sum(np.abs(a) ** 2 / p))
    if s <= 1.0 + tol.residual_abs:
        raise NoPptBoundaryError(f"sum |a_i|^2/p_i = {s:.12g} does not exceed 1")
    return s / (s - 1.0)


def boundary_data(six: SixTuple, p=None, tol: Tolerance = DEFAULT_TOL) -> BoundaryData:
    p = uniform_weights() if p is None else _check_weights(p, tol)
    a = expansion_coefficients(six, tol)
    lam = boundary_lambda(a, p, tol)
    return BoundaryData(a, p, float(np.sum(np.abs(a) ** 2 / p)), lam)


def gamma_span_dims(six: SixTuple, tol: Tolerance = DEFAULT_TOL) -> tuple[int, int, int]:
    """Span dimension of the six vectors after conjugating party ``j``, for ``j = 0, 1, 2``."""
    return tuple(
        numeric_rank(np.column_stack([partial_conjugate(v, {j}).flat for v in six.vectors]), tol)
        for j in range(3)
    )


def _projector(v: ProductVector) -> np.ndarray:
    return np.outer(v.flat, v.flat.conj())


def rho_on_line(six: SixTuple, p, t: float) -> np.ndarray:
    """``(1 - t)|z_6><z_6| + t sum_i p_i |z_i><z_i|`` as a matrix."""
    mixed = sum(pi * _projector(v) for pi, v in zip(p, six.others))
    return (1.0 - t) * _projector(six.target) + t * mixed


def _min_pt_eig(m: np.ndarray, tol: Tolerance) -> float:
    return min(float(hermitian_eigenvalues(partial_transpose(m, s, THREE_QUBITS), tol)[0]) for s in PPT_SUBSETS)


def lambda_bisection_check(six: SixTuple, p=None, tol: Tolerance = DEFAULT_TOL, width: float = 1e-10) -> float:
    """Largest ``t`` keeping ``rho_t`` PPT, located by bisection (an audit of the closed form)."""
    p = uniform_weights() if p is None else _check_weights(p, tol)

    def ppt(t: float) -> bool:
        return _min_pt_eig(rho_on_line(six, p, t), tol) >= -tol.psd_abs

    if not ppt(1.0):
        raise ContractViolation("rho_1 is not PPT")
    lo, hi = 1.0, 2.0
    while ppt(hi):
        lo, hi = hi, 2.0 * hi
        if hi > 1e12:
            raise NumericFailure("PPT region is unbounded along the line")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if ppt(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def build_rho(six: SixTuple, p=None, tol: Tolerance = DEFAULT_TOL, audit: bool = True) -> HermitianOperator:
    """The PPT entangled state at the end of the line, ``rho_lambda``.

    Raises:
        DegenerateGammaSpanError: some partial conjugates span six dimensions.
        NoPptBoundaryError: ``S <= 1``.
        NumericFailure: the two closed forms disagree, or bisection disagrees
            with the analytic ``lambda`` by more than ``1e-6``.
    """
    dims = gamma_span_dims(six, tol)
    if any(d != 5 for d in dims):
        raise DegenerateGammaSpanError(
            f"partial conjugates span {max(dims)} dimensions (per party: {dims}); "
            "the boundary construction needs 5"
        )
    data = boundary_data(six, p, tol)
    rho = rho_on_line(six, data.p, data.lambda_)
    alpha = data.S
    mixed = sum(pi * _projector(v) for pi, v in zip(data.p, six.others))
    other = (alpha * mixed - _projector(six.target)) / (alpha - 1.0)
    dev = float(np.max(np.abs(rho - other)))
    if dev > _FORMULA_AGREEMENT:
        raise NumericFailure(f"closed forms disagree by {dev:.3e}")
    if audit:
        numeric = lambda_bisection_check(six, data.p, tol)
        if abs(numeric - data.lambda_) > _AUDIT_AGREEMENT:
            raise NumericFailure(
                f"bisection boundary {numeric:.12g} differs from analytic {data.lambda_:.12g}"
            )
    return HermitianOperator(THREE_QUBITS, rho)


def _as_state(rho, tol: Tolerance) -> HermitianOperator:
    if not isinstance(rho, HermitianOperator):
        rho = HermitianOperator(THREE_QUBITS, np.asarray(rho, dtype=complex))
    if rho.shape != THREE_QUBITS:
        raise ContractViolation(f"verification needs a 2x2x2 state, got {rho.shape}")
    if abs(rho.trace - 1.0) > tol.residual_abs:
        raise ContractViolation(f"trace is {rho.trace:.12g}, not 1")
    return rho


def _count(basis: np.ndarray, tol: Tolerance):
    if basis.shape[1] == 0:
        return 0, ()
    result = enumerate_in_subspace(basis, THREE_QUBITS, tol)
    return result.count, result.vectors


def verify_pptes(rho, six: SixTuple | None = None, tol: Tolerance = DEFAULT_TOL) -> PptesReport:
    """Ranks and spectra of the partial transposes, product vectors in range and kernel, and a verdict.

    ``pptes-edge-rank4``: all four partial transposes PSD of rank four and a
    product-free range. ``separable``: rank four, PPT, and a product vector in
    the range. Anything else is ``inconclusive`` and explained in ``notes``.
    """
    rho = _as_state(rho, tol)
    m = rho.matrix
    ranks, mins = [], []
    for s in PPT_SUBSETS:
        pt = partial_transpose(m, s, THREE_QUBITS)
        ranks.append(numeric_rank(pt, tol))
        mins.append(float(hermitian_eigenvalues(pt, tol)[0]))
    ppt = all(e >= -tol.psd_abs for e in mins)

    evals, evecs = np.linalg.eigh(m)
    r = ranks[0]
    order = np.argsort(evals)[::-1]
    rng_basis = evecs[:, order[:r]]
    ker_basis = evecs[:, order[r:]]
    range_count, range_vectors = _count(rng_basis, tol)
    kernel_count, _ = _count(ker_basis, tol)

    notes = ["PPT" if ppt else "not PPT: some partial transpose has a negative eigenvalue (entangled)"]
    if ppt and all(k == 4 for k in ranks) and range_count == 0:
        verdict = "pptes-edge-rank4"
    elif ppt and r == 4 and range_count != 0:
        verdict = "separable"
    else:
        verdict = "inconclusive"
        if r != 4:
            notes.append(f"rank {r}: the rank-four criterion does not apply")
        if range_count:
            notes.append(f"range contains {range_count} product vector(s)")
        elif range_count is None:
            notes.append("range contains infinitely many product vectors")
        if ppt and range_vectors and _decomposes(m, range_vectors, tol):
            notes.append("separable: explicit nonnegative decomposition over the range's product vectors")
    gdims = gamma_span_dims(six, tol) if six is not None else None
    return PptesReport(tuple(ranks), tuple(mins), range_count, kernel_count, gdims, verdict, tuple(notes))


def _decomposes(m: np.ndarray, vectors, tol: Tolerance) -> bool:
    states = np.column_stack([_projector(v.normalized()).ravel() for v in vectors])
    coeffs, *_ = np.linalg.lstsq(states, m.ravel(), rcond=None)
    residual = np.linalg.norm(states @ coeffs - m.ravel())
    return bool(residual <= tol.residual_abs and np.all(np.abs(coeffs.imag) <= tol.residual_abs)
                and np.all(coeffs.real >= -tol.residual_abs))
