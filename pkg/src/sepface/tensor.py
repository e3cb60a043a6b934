"""Multipartite vectors and operators.

Composite spaces use lexicographic (mixed-radix) basis order with party 0
as the most significant digit, so for three qubits the basis runs
``|000>, |001>, |010>, ..., |111>``. Parties are indexed from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation
from .linalg import DEFAULT_TOL, Tolerance, hermitian_eigenvalues

__all__ = [
    "PartyShape",
    "ProductVector",
    "HermitianOperator",
    "flatten",
    "pure_state",
    "mix",
    "partial_transpose",
    "partial_conjugate",
    "regroup",
    "canonical_phase",
    "fidelity",
    "projectively_equal",
    "complement_parties",
]


@dataclass(frozen=True)
class PartyShape:
    """Local dimensions ``(d_0, ..., d_{n-1})`` of a composite system."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 2:
            raise ContractViolation("need at least two parties")
        if any(d < 2 for d in dims):
            raise ContractViolation(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    @property
    def is_qubits(self) -> bool:
        return all(d == 2 for d in self.dims)

    def __iter__(self):
        return iter(self.dims)

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


def _as_shape(shape) -> PartyShape:
    return shape if isinstance(shape, PartyShape) else PartyShape(tuple(shape))


def _kron_all(locals_: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, locals_)


@dataclass(frozen=True, eq=False)
class ProductVector:
    """A product vector, stored both as its local factors and as its flat tensor."""

    shape: PartyShape
    locals: tuple[np.ndarray, ...]
    flat: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.locals) != self.shape.n:
            raise ContractViolation("number of local vectors does not match the shape")
        for j, (x, d) in enumerate(zip(self.locals, self.shape.dims)):
            if x.shape != (d,):
                raise ContractViolation(f"local vector {j} has length {x.size}, expected {d}")
            if not np.any(x):
                raise ContractViolation(f"local vector {j} is zero")
        expected = _kron_all(self.locals)
        if self.flat.shape != expected.shape:
            raise ContractViolation("flat vector has the wrong length")
        scale = max(1.0, float(np.linalg.norm(expected)))
        if np.linalg.norm(self.flat - expected) > DEFAULT_TOL.residual_abs * scale:
            raise ContractViolation("flat vector is not the tensor product of the locals")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.flat))

    def normalized(self) -> "ProductVector":
        return flatten([x / np.linalg.norm(x) for x in self.locals], self.shape)

    def canonical(self) -> "ProductVector":
        """Unit-norm representative with every local's first nonzero entry real positive."""
        return flatten([canonical_phase(x / np.linalg.norm(x)) for x in self.locals], self.shape)

    def __len__(self) -> int:
        return self.shape.n

    def __repr__(self) -> str:
        locs = ", ".join(np.array2string(x, precision=4, suppress_small=True) for x in self.locals)
        return f"ProductVector({self.shape}: {locs})"


def flatten(locals_: Iterable, shape=None) -> ProductVector:
    """Build a :class:`ProductVector` from its local factors.

    >>> flatten([[1, 0], [0, 1], [1, 1]]).flat.real
    array([0., 0., 1., 1., 0., 0., 0., 0.])
    """
    locs = tuple(np.asarray(x, dtype=complex).ravel().copy() for x in locals_)
    if shape is None:
        shape = PartyShape(tuple(x.size for x in locs))
    shape = _as_shape(shape)
    if len(locs) != shape.n or any(x.size != d for x, d in zip(locs, shape.dims)):
        raise ContractViolation(f"local lengths {[x.size for x in locs]} do not match shape {shape.dims}")
    for j, x in enumerate(locs):
        if not np.all(np.isfinite(x)):
            raise ContractViolation(f"local vector {j} has non-finite entries")
        if not np.any(x):
            raise ContractViolation(f"local vector {j} is zero")
    for x in locs:
        x.setflags(write=False)
    flat = _kron_all(locs)
    flat.setflags(write=False)
    return ProductVector(shape, locs, flat)


def canonical_phase(v: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    """Rotate ``v`` by a global phase so its first non-negligible entry is real positive."""
    v = np.asarray(v, dtype=complex)
    mags = np.abs(v)
    if mags.max() == 0:
        return v.copy()
    idx = int(np.argmax(mags > eps * mags.max()))
    return v * (np.conj(v[idx]) / mags[idx])


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """``|<a|b>|^2 / (|a|^2 |b|^2)``."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    den = np.vdot(a, a).real * np.vdot(b, b).real
    if den == 0:
        return 0.0
    return float(abs(np.vdot(a, b)) ** 2 / den)


def projectively_equal(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when ``a`` and ``b`` agree up to a nonzero scalar (flat or :class:`ProductVector`)."""
    a = a.flat if isinstance(a, ProductVector) else a
    b = b.flat if isinstance(b, ProductVector) else b
    return fidelity(a, b) >= 1.0 - tol.dedupe_fid


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """A Hermitian ``d x d`` matrix on a composite space."""

    shape: PartyShape
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.shape.total
        if m.shape != (d, d):
            raise ContractViolation(f"matrix shape {m.shape} does not match {d}x{d}")
        if not np.all(np.isfinite(m)):
            raise ContractViolation("matrix has non-finite entries")
        dev = np.max(np.abs(m - m.conj().T))
        if dev > DEFAULT_TOL.residual_abs:
            raise ContractViolation(f"matrix is not Hermitian (max deviation {dev:.3e})")
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigenvalues(self, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix, tol)


def pure_state(z: ProductVector, tol: Tolerance = DEFAULT_TOL) -> HermitianOperator:
    """The rank-one projector ``|z><z|`` for a unit product vector."""
    if abs(z.norm - 1.0) > tol.residual_abs:
        raise ContractViolation(f"product vector is not normalized (norm {z.norm:.12g})")
    return HermitianOperator(z.shape, np.outer(z.flat, z.flat.conj()))


def mix(states: Sequence[HermitianOperator], weights, tol: Tolerance = DEFAULT_TOL) -> HermitianOperator:
    """Convex combination ``sum_i w_i rho_i``."""
    states = list(states)
    w = np.asarray(weights, dtype=float).ravel()
    if not states or len(states) != w.size:
        raise ContractViolation("need one positive weight per state")
    shape = states[0].shape
    if any(s.shape != shape for s in states):
        raise ContractViolation("states have different shapes")
    if np.any(w <= 0):
        raise ContractViolation("weights must be positive")
    if abs(w.sum() - 1.0) > tol.residual_abs:
        raise ContractViolation(f"weights sum to {w.sum():.12g}, not 1")
    return HermitianOperator(shape, sum(wi * s.matrix for wi, s in zip(w, states)))


def _party_set(subset, n: int) -> frozenset[int]:
    members = frozenset(int(j) for j in subset)
    if any(j < 0 or j >= n for j in members):
        raise ContractViolation(f"party subset {sorted(members)} not within 0..{n - 1}")
    return members


def complement_parties(subset, n: int) -> frozenset[int]:
    return frozenset(range(n)) - _party_set(subset, n)


def partial_transpose(rho, subset, shape=None) -> HermitianOperator | np.ndarray:
    """Transpose the tensor factors listed in ``subset``.

    Accepts a :class:`HermitianOperator` (returns one) or a raw square
    matrix together with ``shape`` (returns an array).
    """
    if isinstance(rho, HermitianOperator):
        return HermitianOperator(rho.shape, partial_transpose(rho.matrix, subset, rho.shape))
    shape = _as_shape(shape)
    m = np.asarray(rho, dtype=complex)
    d, n = shape.total, shape.n
    if m.shape != (d, d):
        raise ContractViolation(f"matrix shape {m.shape} does not match {d}x{d}")
    members = _party_set(subset, n)
    t = m.reshape(shape.dims + shape.dims)
    axes = list(range(2 * n))
    for j in members:
        axes[j], axes[n + j] = axes[n + j], axes[j]
    return t.transpose(axes).reshape(d, d)


def partial_conjugate(z: ProductVector, subset) -> ProductVector:
    """Complex-conjugate the local factors listed in ``subset``."""
    members = _party_set(subset, z.shape.n)
    return flatten([x.conj() if j in members else x for j, x in enumerate(z.locals)], z.shape)


def regroup(z: ProductVector, merge: tuple[int, int]) -> ProductVector:
    """Merge two adjacent parties ``(j, j+1)`` into one; the flat vector is unchanged."""
    n = z.shape.n
    if n < 3:
        raise ContractViolation("regroup needs at least three parties")
    i, j = (int(k) for k in merge)
    if not (0 <= i < n and j == i + 1 and j < n):
        raise ContractViolation(f"merge must name adjacent parties (j, j+1), got {merge}")
    locs = list(z.locals[:i]) + [np.kron(z.locals[i], z.locals[j])] + list(z.locals[j + 1:])
    dims = z.shape.dims[:i] + (z.shape.dims[i] * z.shape.dims[j],) + z.shape.dims[j + 1:]
    return flatten(locs, PartyShape(dims))
