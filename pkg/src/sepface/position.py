"""Decision procedures for finite sets of product vectors.

General position, generalized unextendible product bases (by partition
scan and by searching the orthogonal complement), linear independence of
product vectors and of the pure product states, the four-vector
classification in three qubits, and simplicial-face certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .enumeration import EnumerationResult, complement_of, enumerate_in_subspace, span_of
from .errors import ContractViolation, UnsupportedShapeError
from .linalg import DEFAULT_TOL, Tolerance, kernel_basis, numeric_rank
from .tensor import PartyShape, ProductVector, flatten, fidelity, projectively_equal

__all__ = [
    "GpReport",
    "GupbReport",
    "FaceCertificate",
    "FourClassification",
    "check_general_position",
    "check_gupb_partition",
    "check_gupb_complement",
    "product_vectors_independent",
    "product_states_independent",
    "classify_four_gp",
    "certify_simplicial_face",
    "five_subset_independence",
    "states_span_dim",
    "gupb_minimum_size",
]


@dataclass(frozen=True)
class GpReport:
    is_gp: bool
    witness: tuple[int, tuple[int, ...]] | None = None
    """``(party, indices)`` of a dependent family of local vectors."""


@dataclass(frozen=True)
class GupbReport:
    is_gupb: bool
    bad_partition: tuple[tuple[int, ...], ...] | None = None
    """Blocks ``I_0, ..., I_{n-1}``; block ``j`` collects vectors whose ``j``-th local is orthogonal to the witness."""
    witness_vector: ProductVector | None = None
    method: str = "partition"


@dataclass(frozen=True)
class FaceCertificate:
    k: int
    states_independent: bool
    enumeration: EnumerationResult
    verdict: str
    """One of ``simplicial-face``, ``not-simplicial-face``, ``infinite-family``."""

    @property
    def extra_product_vectors(self) -> int | None:
        """Product vectors in the span beyond the inputs (``None`` for an infinite family)."""
        if not self.enumeration.is_finite:
            return None
        return len(self.enumeration.vectors) - self.k


@dataclass(frozen=True)
class FourClassification:
    kind: str
    """``finite-face`` or ``infinite-family``."""
    ranks: tuple[int, int, int]
    """Ranks of the two-party products for the pairings (0, 1), (1, 2), (2, 0)."""


def _common_shape(vs: Sequence[ProductVector]) -> PartyShape:
    if not vs:
        raise ContractViolation("empty set of product vectors")
    shape = vs[0].shape
    if any(v.shape != shape for v in vs):
        raise ContractViolation("product vectors have different shapes")
    return shape


def gupb_minimum_size(shape) -> int:
    """``sum_j (d_j - 1) + 1``, the smallest possible GUPB."""
    dims = shape.dims if isinstance(shape, PartyShape) else tuple(shape)
    return sum(d - 1 for d in dims) + 1


def _locals_dependent(xs: list[np.ndarray], tol: Tolerance) -> bool:
    if len(xs) == 2:
        return fidelity(xs[0], xs[1]) >= 1.0 - tol.dedupe_fid
    return numeric_rank(np.column_stack(xs), tol) < len(xs)


def check_general_position(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> GpReport:
    """Every ``<= d_j`` of the ``j``-th local vectors must be linearly independent.

    Pairs are compared projectively (``|<a|b>|^2 >= (1 - dedupe_fid)|a|^2|b|^2``
    means parallel); larger families by numeric rank. The witness is the
    first violating ``(party, indices)`` in party-then-lexicographic order.
    """
    shape = _common_shape(vs)
    for j, d in enumerate(shape.dims):
        for size in range(2, min(d, len(vs)) + 1):
            for idx in itertools.combinations(range(len(vs)), size):
                if _locals_dependent([vs[i].locals[j] for i in idx], tol):
                    return GpReport(False, (j, idx))
    return GpReport(True)


def _orthogonal_local(xs: list[np.ndarray], d: int, tol: Tolerance) -> np.ndarray:
    if not xs:
        out = np.zeros(d, dtype=complex)
        out[0] = 1.0
        return out
    ker = kernel_basis(np.conj(np.column_stack(xs)).T, tol)
    return ker[:, 0]


def check_gupb_partition(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> GupbReport:
    """GUPB test by scanning every assignment of vectors to parties.

    The set is a GUPB iff for every labelled partition ``I_0 u ... u I_{n-1}``
    (empty blocks allowed) some block's local vectors span their party's
    space. All ``n**k`` assignments are visited in lexicographic order; the
    first failing one is reported together with the product vector
    orthogonal to every input that it induces.
    """
    shape = _common_shape(vs)
    k, n = len(vs), shape.n
    spans: dict[tuple[int, int], bool] = {}

    def block_spans(j: int, mask: int) -> bool:
        key = (j, mask)
        if key not in spans:
            members = [vs[i].locals[j] for i in range(k) if mask >> i & 1]
            d = shape.dims[j]
            spans[key] = len(members) >= d and numeric_rank(np.column_stack(members), tol) == d
        return spans[key]

    for labels in itertools.product(range(n), repeat=k):
        masks = [0] * n
        for i, j in enumerate(labels):
            masks[j] |= 1 << i
        if any(block_spans(j, masks[j]) for j in range(n)):
            continue
        blocks = tuple(tuple(i for i in range(k) if labels[i] == j) for j in range(n))
        ys = [_orthogonal_local([vs[i].locals[j] for i in blocks[j]], shape.dims[j], tol) for j in range(n)]
        return GupbReport(False, blocks, flatten(ys, shape), "partition")
    return GupbReport(True, method="partition")


def check_gupb_complement(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> GupbReport:
    """GUPB test by enumerating product vectors in the orthogonal complement.

    Only for ``2x2`` and ``2x2x2``. A witness found this way is turned into
    the partition it induces (each vector goes to the first party whose
    local factor is orthogonal to the witness's).
    """
    shape = _common_shape(vs)
    if shape.dims not in {(2, 2), (2, 2, 2)}:
        raise UnsupportedShapeError(f"complement-based GUPB check needs 2x2 or 2x2x2, got {shape}")
    comp = complement_of(vs, tol)
    if comp.shape[1] == 0:
        return GupbReport(True, method="complement")
    result = enumerate_in_subspace(comp, shape, tol)
    found = result.vectors if result.is_finite else result.samples
    if not found:
        return GupbReport(True, method="complement")
    y = found[0]
    labels = []
    for v in vs:
        overlaps = [abs(np.vdot(y.locals[j], v.locals[j])) / (np.linalg.norm(y.locals[j]) * np.linalg.norm(v.locals[j]))
                    for j in range(shape.n)]
        labels.append(int(np.argmin(overlaps)))
    blocks = tuple(tuple(i for i, lab in enumerate(labels) if lab == j) for j in range(shape.n))
    return GupbReport(False, blocks, y, "complement")


def product_vectors_independent(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> bool:
    _common_shape(vs)
    return numeric_rank(np.column_stack([v.flat for v in vs]), tol) == len(vs)


def _state_matrix(vs: Sequence[ProductVector]) -> np.ndarray:
    cols = []
    for v in vs:
        u = v.flat / np.linalg.norm(v.flat)
        cols.append(np.outer(u, u.conj()).ravel())
    return np.column_stack(cols)


def product_states_independent(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Linear independence of the pure states ``|z_i><z_i|`` (as ``d**2``-component vectors)."""
    _common_shape(vs)
    return numeric_rank(_state_matrix(vs), tol) == len(vs)


def states_span_dim(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> int:
    _common_shape(vs)
    return numeric_rank(_state_matrix(vs), tol)


_PAIRINGS = ((0, 1), (1, 2), (2, 0))


def classify_four_gp(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> FourClassification:
    """Four three-qubit product vectors in general position: finite face or infinite family.

    Some pairing of parties giving four independent two-qubit products means
    the span holds only the four inputs; all pairings of rank three means the
    span holds infinitely many product vectors.
    """
    shape = _common_shape(vs)
    if shape.dims != (2, 2, 2) or len(vs) != 4:
        raise ContractViolation("classify_four_gp needs exactly four 2x2x2 product vectors")
    if not check_general_position(vs, tol).is_gp:
        raise ContractViolation("vectors are not in general position")
    ranks = tuple(
        numeric_rank(np.column_stack([np.kron(v.locals[a], v.locals[b]) for v in vs]), tol)
        for a, b in _PAIRINGS
    )
    if any(r == 4 for r in ranks):
        return FourClassification("finite-face", ranks)
    if all(r == 3 for r in ranks):
        return FourClassification("infinite-family", ranks)
    raise ContractViolation(f"pairing ranks {ranks} impossible for vectors in general position")


def certify_simplicial_face(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> FaceCertificate:
    """Certify that the states ``|z_i><z_i|`` span a simplicial face.

    Requires independent product states and a span containing no product
    vectors other than the inputs (up to scalars).
    """
    shape = _common_shape(vs)
    if shape.dims not in {(2, 2), (2, 2, 2)}:
        raise UnsupportedShapeError(f"face certification needs 2x2 or 2x2x2, got {shape}")
    if len(vs) > 6:
        raise ContractViolation("face certification handles at most six vectors")
    independent = product_states_independent(vs, tol)
    result = enumerate_in_subspace(span_of(vs, tol), shape, tol)
    if not result.is_finite:
        verdict = "infinite-family"
    else:
        exact = len(result.vectors) == len(vs) and all(
            any(projectively_equal(v, w, tol) for w in result.vectors) for v in vs
        )
        verdict = "simplicial-face" if (independent and exact) else "not-simplicial-face"
    return FaceCertificate(len(vs), independent, result, verdict)


def five_subset_independence(vs: Sequence[ProductVector], tol: Tolerance = DEFAULT_TOL) -> bool:
    """Every five of six product vectors are linearly independent."""
    if len(vs) != 6:
        raise ContractViolation("five_subset_independence needs exactly six vectors")
    _common_shape(vs)
    return all(product_vectors_independent([vs[i] for i in idx], tol)
               for idx in itertools.combinations(range(6), 5))
