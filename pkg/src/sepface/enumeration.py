"""Product vectors inside subspaces of two- and three-qubit spaces.

The exact engine (:func:`enumerate_in_subspace`) writes a product vector as
``x (x) Y`` with ``x`` the first party's local vector and ``Y`` a vector on
the remaining parties. With ``C`` the rows of the orthogonal complement,
membership becomes ``A(x) Y = 0`` where ``A(x) = x_0 C_0 + x_1 C_1`` is a
linear pencil. Each of the two affine charts ``x = (1, s)`` and
``x = (s, 1)`` with ``|s| <= 1`` is handled by one univariate polynomial
in ``s``:

* the remaining space is one qubit: ``det(A(s))`` (after a fixed random
  row compression when ``A`` has more rows than columns);
* the remaining space is two qubits and ``A(s)`` generically has a
  one-dimensional kernel spanned by the cofactor vector ``Y(s)``: the
  product condition ``Y_00 Y_11 - Y_01 Y_10`` (degree 6);
* otherwise the kernel is generically trivial and ``det`` is used again.

Polynomial coefficients are recovered exactly by sampling on roots of
unity. At each root (and each root of a derivative, which pins down
multiple roots) the full kernel of ``A(s)`` is searched for product
vectors, every candidate is Newton-polished on the complete constraint
system and rejected unless it satisfies all constraints. Positive
dimensional solution sets are reported as ``infinite`` only after three
independent sample points have been verified.

:func:`oracle_grid_search` is an independent check: it seeds batched
Newton iterations on the multilinear chart equations from a grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, NumericFailure, UnsupportedShapeError
from .linalg import DEFAULT_TOL, Tolerance, kernel_basis, numeric_rank, univariate_roots
from .tensor import PartyShape, ProductVector, flatten, projectively_equal

__all__ = [
    "EnumerationResult",
    "MultilinearPoly",
    "enumerate_in_subspace",
    "oracle_grid_search",
    "membership_residual",
    "complement_of",
    "span_of",
    "same_projective_set",
]


_SEED = 0x5EED
_N_SAMPLES = 16
_CHART_SLACK = 1e-6
_CLUSTER = 1e-6
_KERNEL_SV = 1e-7
_RANK1_SV = 1e-5
_ZERO_POLY = 1e-10
_NEWTON_ITERS = 100
_NEWTON_TARGET = 1e-12


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of a product-vector search.

    ``vectors`` is the canonical, deduplicated list for a finite result and
    empty for an infinite one; ``samples`` then holds the verified members
    of the positive-dimensional family.
    """

    kind: str
    vectors: tuple[ProductVector, ...]
    charts_visited: int
    residual_max: float
    samples: tuple[ProductVector, ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def count(self) -> int | None:
        return len(self.vectors) if self.is_finite else None

    def summary(self) -> str:
        if self.is_finite:
            return f"finite: {len(self.vectors)} product vector(s)"
        return "infinite family"


_SUPPORTED = {(2, 2), (2, 2, 2)}


def _check_shape(shape) -> PartyShape:
    shape = shape if isinstance(shape, PartyShape) else PartyShape(tuple(shape))
    if shape.dims not in _SUPPORTED:
        raise UnsupportedShapeError(f"product-vector enumeration supports 2x2 and 2x2x2 only, got {shape}")
    return shape


def _check_basis(basis, shape: PartyShape) -> np.ndarray:
    b = np.asarray(basis, dtype=complex)
    if b.ndim == 1:
        b = b[:, None]
    if b.ndim != 2 or b.shape[0] != shape.total:
        raise ContractViolation(f"basis must be a ({shape.total}, k) array, got shape {b.shape}")
    if b.shape[1] == 0:
        raise ContractViolation("basis of the zero subspace")
    gram = b.conj().T @ b
    if np.max(np.abs(gram - np.eye(b.shape[1]))) > 1e-8:
        raise ContractViolation("basis columns are not orthonormal")
    return b


def span_of(vectors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the span of product vectors or flat vectors."""
    from .linalg import orthonormalize

    return orthonormalize([v.flat if isinstance(v, ProductVector) else v for v in vectors], tol)


def complement_of(vectors_or_basis, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of a span."""
    if isinstance(vectors_or_basis, np.ndarray) and vectors_or_basis.ndim == 2:
        cols = vectors_or_basis
    else:
        cols = np.column_stack([v.flat if isinstance(v, ProductVector) else np.asarray(v, dtype=complex)
                                for v in vectors_or_basis])
    return kernel_basis(cols.conj().T, tol)


def membership_residual(z, basis) -> float:
    """Relative distance ``|z - P z| / |z|`` from ``z`` to the subspace spanned by ``basis``."""
    v = z.flat if isinstance(z, ProductVector) else np.asarray(z, dtype=complex)
    b = np.asarray(basis, dtype=complex)
    if b.ndim == 1:
        b = b[:, None]
    if b.shape[0] != v.size:
        raise ContractViolation("vector and basis have different lengths")
    nv = np.linalg.norm(v)
    if nv == 0:
        raise ContractViolation("zero vector")
    return float(np.linalg.norm(v - b @ (b.conj().T @ v)) / nv)


def same_projective_set(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when two lists of vectors agree as sets of projective points."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    unmatched = list(range(len(b)))
    for x in a:
        hit = next((j for j in unmatched if projectively_equal(x, b[j], tol)), None)
        if hit is None:
            return False
        unmatched.remove(hit)
    return True


# --------------------------------------------------------------------------
# helpers shared by the exact engine


def _det2(v: np.ndarray):
    """Determinant of a length-4 vector read as a 2x2 matrix (works on stacks)."""
    return v[..., 0] * v[..., 3] - v[..., 1] * v[..., 2]


def _constraint_residual(cons: np.ndarray, flat: np.ndarray) -> float:
    return float(np.linalg.norm(cons @ flat) / np.linalg.norm(flat))


def _newton_polish(cons: np.ndarray, locals_: list[np.ndarray], dims: tuple[int, ...]):
    """Complex Newton (least squares) on ``cons @ kron(locals) = 0``; qubit parties only.

    Each local is pinned to 1 at its largest entry; the other entry is the
    unknown. Returns the polished locals and the final relative residual.
    """
    locs = [np.asarray(x, dtype=complex).copy() for x in locals_]
    n = len(locs)

    def pin(xs):
        out = []
        for x in xs:
            p = int(np.argmax(np.abs(x)))
            out.append(x / x[p])
        return out

    locs = pin(locs)
    flat = flatten(locs, dims).flat
    res = _constraint_residual(cons, flat)
    for _ in range(_NEWTON_ITERS):
        if res <= _NEWTON_TARGET * 1e-1:
            break
        f = cons @ flat
        jac = np.empty((cons.shape[0], n), dtype=complex)
        for j in range(n):
            p = int(np.argmax(np.abs(locs[j])))
            e = np.zeros(2, dtype=complex)
            e[1 - p] = 1.0
            parts = locs[:j] + [e] + locs[j + 1:]
            g = parts[0]
            for x in parts[1:]:
                g = np.kron(g, x)
            jac[:, j] = cons @ g
        step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        trial = []
        for j in range(n):
            p = int(np.argmax(np.abs(locs[j])))
            x = locs[j].copy()
            x[1 - p] += step[j]
            trial.append(x)
        if not all(np.all(np.isfinite(x)) for x in trial):
            break
        trial = pin(trial)
        tflat = flatten(trial, dims).flat
        tres = _constraint_residual(cons, tflat)
        if not tres < res:
            break
        locs, flat, res = trial, tflat, tres
    return locs, res


def _products_in_rest(kernel: np.ndarray, rest: tuple[int, ...]):
    """Candidate product vectors in ``span(kernel)`` over the remaining parties.

    Returns ``(candidates, infinite)``; each candidate is a list of local vectors.
    """
    k = kernel.shape[1]
    if k == 0:
        return [], False
    if rest == (2,):
        return ([[kernel[:, 0]]], False) if k == 1 else ([], True)
    if k >= 3:
        return [], True
    if k == 1:
        u, s, vh = np.linalg.svd(kernel[:, 0].reshape(2, 2))
        if s[1] > _RANK1_SV * s[0]:
            return [], False
        return [[u[:, 0] * s[0], vh[0]]], False
    k0, k1 = kernel[:, 0], kernel[:, 1]
    a, c = _det2(k0), _det2(k1)
    b = _det2(k0 + k1) - a - c
    if max(abs(a), abs(b), abs(c)) <= _ZERO_POLY:
        return [], True
    roots = univariate_roots([c, b, a], trim=1e-12)
    vecs = [t * k0 + k1 for t in roots]
    vecs += [k0] * (2 - len(roots))
    out = []
    for v in vecs:
        u, s, vh = np.linalg.svd(v.reshape(2, 2))
        out.append([u[:, 0] * s[0], vh[0]])
    return out, False


def _sample_products_in_rest(kernel: np.ndarray, rest: tuple[int, ...], rng) -> list[np.ndarray] | None:
    """One product vector from a kernel known (or suspected) to contain a family of them."""
    k = kernel.shape[1]
    if k == 0:
        return None
    mix = rng.normal(size=(k, min(k, 2))) + 1j * rng.normal(size=(k, min(k, 2)))
    sub = np.linalg.qr(kernel @ mix)[0]
    if rest == (2,):
        return [sub[:, 0]]
    if sub.shape[1] == 1:
        cands, _ = _products_in_rest(sub, rest)
        return cands[0] if cands else None
    cands, infinite = _products_in_rest(sub, rest)
    if infinite:
        u, s, vh = np.linalg.svd(sub[:, 0].reshape(2, 2))
        return [u[:, 0] * s[0], vh[0]]
    return cands[int(rng.integers(len(cands)))] if cands else None


class _Engine:
    def __init__(self, basis: np.ndarray, shape: PartyShape, tol: Tolerance):
        self.shape = shape
        self.tol = tol
        self.basis = basis
        self.rest = shape.dims[1:]
        self.rest_dim = int(np.prod(self.rest))
        comp = kernel_basis(basis.conj().T, tol)
        self.cons = comp.conj().T  # rows: <w_k|
        c = self.cons.shape[0]
        blocks = self.cons.reshape(c, 2, self.rest_dim)
        self.c0, self.c1 = blocks[:, 0, :], blocks[:, 1, :]
        self.rng = np.random.default_rng(_SEED)
        self.found: list[tuple[ProductVector, float]] = []
        self.samples: list[ProductVector] = []

    def pencil(self, chart: int, s):
        s = np.asarray(s, dtype=complex)[..., None, None]
        return self.c0 + s * self.c1 if chart == 0 else s * self.c0 + self.c1

    def x_of(self, chart: int, s: complex) -> np.ndarray:
        return np.array([1.0, s]) if chart == 0 else np.array([s, 1.0])

    def accept(self, locs, chart) -> ProductVector | None:
        """Polish a candidate and keep it if it satisfies every constraint."""
        start = flatten(locs, self.shape.dims).flat
        res0 = _constraint_residual(self.cons, start)
        locs, res = _newton_polish(self.cons, locs, self.shape.dims)
        if res > self.tol.residual_abs:
            return None
        if res > _NEWTON_TARGET and res0 <= self.tol.residual_abs:
            raise NumericFailure(f"Newton refinement stalled at residual {res:.2e} in chart {chart}")
        return flatten(locs, self.shape).canonical()

    def add(self, z: ProductVector):
        res = _constraint_residual(self.cons, z.flat)
        for i, (w, wres) in enumerate(self.found):
            if projectively_equal(w, z, self.tol):
                if res < wres:
                    self.found[i] = (z, res)
                return
        self.found.append((z, res))

    def generic_rank(self) -> int:
        pts = np.exp(2j * np.pi * self.rng.random(3))
        return max(numeric_rank(self.pencil(0, s), self.tol) for s in pts)

    # -- infinite-family certification

    def certify_generic(self) -> bool:
        """Three random chart points whose kernels contain verified product vectors."""
        return self._certify(lambda: np.exp(2j * np.pi * self.rng.random()), None)

    def certify_at(self, chart: int, s0: complex, kernel_dim: int) -> bool:
        return self._certify(lambda: s0, (chart, kernel_dim))

    def _certify(self, draw_s, fixed) -> bool:
        got: list[ProductVector] = []
        for _ in range(12):
            s = draw_s()
            chart = 0 if fixed is None else fixed[0]
            a = self.pencil(chart, s)
            _, sv, vh = np.linalg.svd(a, full_matrices=True)
            if fixed is None:
                r = int(np.count_nonzero(sv > _KERNEL_SV))
            else:
                r = self.rest_dim - fixed[1]
            kern = vh[r:].conj().T
            rest = _sample_products_in_rest(kern, self.rest, self.rng)
            if rest is None:
                continue
            z = self.accept([self.x_of(chart, s)] + list(rest), chart)
            if z is None or any(projectively_equal(z, g, self.tol) for g in got):
                continue
            got.append(z)
            if len(got) == 3:
                self.samples = got
                return True
        return False

    # -- finite path

    def chart_polynomial(self, chart: int, mode: str, mix: np.ndarray | None) -> np.ndarray:
        pts = np.exp(2j * np.pi * np.arange(_N_SAMPLES) / _N_SAMPLES)
        a = self.pencil(chart, pts)
        b = a if mix is None else mix @ a
        if mode == "det":
            vals = np.linalg.det(b)
            degree = b.shape[-1]
            scale = 1.0
        else:
            cof = np.stack(
                [(-1) ** i * np.linalg.det(np.delete(b, i, axis=-1)) for i in range(4)], axis=-1
            )
            vals = _det2(cof)
            degree = 6
            scale = float(np.max(np.sum(np.abs(cof) ** 2, axis=-1)))
        coeffs = np.fft.fft(vals) / _N_SAMPLES
        return coeffs[: degree + 1], scale

    def run(self) -> EnumerationResult:
        c = self.cons.shape[0]
        if c == 0:
            if not self.certify_generic():
                raise NumericFailure("could not sample the full space")
            return self.result("infinite")
        r = self.generic_rank()
        k = self.rest_dim - r
        if (self.rest == (2,) and k >= 1) or k >= 2:
            return self.infinite_or_fail("kernel of generic dimension %d" % k)

        if k == 1:
            mode, rows = "cofactor", 3
        else:
            mode, rows = "det", self.rest_dim
        mix = None
        if c != rows:
            mix = self.rng.normal(size=(rows, c)) + 1j * self.rng.normal(size=(rows, c))
            mix /= np.linalg.norm(mix, axis=1, keepdims=True)

        for chart in (0, 1):
            coeffs, scale = self.chart_polynomial(chart, mode, mix)
            if np.max(np.abs(coeffs)) <= _ZERO_POLY * max(scale, 1e-300):
                if mode == "cofactor":
                    return self.infinite_or_fail("identically zero eliminant")
                raise NumericFailure(f"determinant vanished identically in chart {chart}")
            roots = _candidate_points(coeffs)
            for s0 in _cluster(roots):
                a = self.pencil(chart, s0)
                _, sv, vh = np.linalg.svd(a, full_matrices=True)
                rank = int(np.count_nonzero(sv > _KERNEL_SV))
                kern = vh[rank:].conj().T
                cands, infinite = _products_in_rest(kern, self.rest)
                if infinite:
                    if self.certify_at(chart, s0, kern.shape[1]):
                        return self.result("infinite")
                    raise NumericFailure(f"unverified positive-dimensional component in chart {chart}")
                for rest_locs in cands:
                    z = self.accept([self.x_of(chart, s0)] + list(rest_locs), chart)
                    if z is not None:
                        self.add(z)
        return self.result("finite")

    def infinite_or_fail(self, why: str) -> EnumerationResult:
        if self.certify_generic():
            return self.result("infinite")
        raise NumericFailure(f"{why}, but no product vectors could be sampled")

    def result(self, kind: str) -> EnumerationResult:
        if kind == "infinite":
            res = max((_constraint_residual(self.cons, z.flat) for z in self.samples), default=0.0)
            return EnumerationResult("infinite", (), 2, res, tuple(self.samples))
        vecs = sorted((z for z, _ in self.found), key=_sort_key)
        res = max((r for _, r in self.found), default=0.0)
        return EnumerationResult("finite", tuple(vecs), 2, res)


def _candidate_points(coeffs: np.ndarray) -> np.ndarray:
    """Roots of the eliminant and of all its derivatives, inside the chart.

    A root of multiplicity ``m`` splits numerically into ``m`` points about
    ``eps**(1/m)`` apart, but it is a simple root of the ``(m-1)``-th
    derivative, where it is computed to full precision. Spurious points cost
    one kernel test each and are discarded by the constraint check.
    """
    found = []
    c = np.asarray(coeffs, dtype=complex)
    while c.size > 1:
        roots = univariate_roots(c)
        if roots is None:
            break
        found.append(roots)
        c = np.polynomial.polynomial.polyder(c)
    roots = np.concatenate(found) if found else np.zeros(0, dtype=complex)
    return roots[np.abs(roots) <= 1.0 + _CHART_SLACK]


def _cluster(roots: np.ndarray) -> list[complex]:
    roots = sorted(roots, key=lambda r: (r.real, r.imag))
    groups: list[list[complex]] = []
    for r in roots:
        for g in groups:
            if abs(np.mean(g) - r) <= _CLUSTER * max(1.0, abs(r)):
                g.append(r)
                break
        else:
            groups.append([r])
    return [complex(np.mean(g)) for g in groups]


def _sort_key(z: ProductVector):
    return tuple(
        (round(float(v.real), 9), round(float(v.imag), 9)) for v in z.flat
    )


def enumerate_in_subspace(basis, shape, tol: Tolerance = DEFAULT_TOL) -> EnumerationResult:
    """All product vectors (up to scalars) in the subspace spanned by ``basis``.

    Args:
        basis: ``(d, k)`` array with orthonormal columns, ``k >= 1``.
        shape: ``(2, 2)`` or ``(2, 2, 2)``.

    Raises:
        UnsupportedShapeError: any other shape.
        NumericFailure: Newton refinement stalled or an infinite family could
            not be certified.
    """
    shape = _check_shape(shape)
    b = _check_basis(basis, shape)
    return _Engine(b, shape, tol).run()


# --------------------------------------------------------------------------
# grid + Newton oracle


@dataclass(frozen=True)
class MultilinearPoly:
    """Polynomial of degree at most one in each of ``m`` variables.

    ``coeffs[e_0, ..., e_{m-1}]`` multiplies ``prod_j x_j ** e_j``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2,) * c.ndim:
            raise ContractViolation(f"coefficient tensor must have shape (2,)*m, got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    @property
    def nvars(self) -> int:
        return self.coeffs.ndim

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Evaluate at points ``x`` of shape ``(..., m)``."""
        return _contract(self.coeffs, x, None)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return np.stack([_contract(self.coeffs, x, j) for j in range(self.nvars)], axis=-1)


def _contract(coeffs: np.ndarray, x: np.ndarray, skip: int | None) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    batch = x.shape[:-1]
    acc = np.broadcast_to(coeffs, batch + coeffs.shape)
    for j in range(coeffs.ndim - 1, -1, -1):
        if j == skip:
            acc = acc[..., 1]
        else:
            xj = x[..., j].reshape(batch + (1,) * j)
            acc = acc[..., 0] + acc[..., 1] * xj
    return acc


def _batch_kron(vecs: list[np.ndarray]) -> np.ndarray:
    """Row-wise Kronecker product of ``(B, 2)`` arrays."""
    out = vecs[0]
    for v in vecs[1:]:
        out = (out[:, :, None] * v[:, None, :]).reshape(len(out), out.shape[1] * v.shape[1])
    return out


def _chart_polys(cons: np.ndarray, shape: PartyShape, chart: tuple[int, ...]) -> list[MultilinearPoly]:
    """Constraints ``<w_k| z(x)>`` with local ``j`` equal to ``(1, x_j)`` or ``(x_j, 1)``."""
    n = shape.n
    polys = []
    for row in cons:
        t = row.reshape((2,) * n)
        for j, kind in enumerate(chart):
            if kind == 1:
                t = np.flip(t, axis=j)
        polys.append(MultilinearPoly(t))
    return polys


def oracle_grid_search(basis, shape, grid_density: int = 4, tol: Tolerance = DEFAULT_TOL,
                       iterations: int = 30) -> list[ProductVector]:
    """Best-effort product-vector search by Newton iteration from grid seeds.

    Every party gets two charts, ``(1, x)`` and ``(x, 1)``; in each of the
    ``2**n`` chart combinations the unknowns are seeded on a
    ``grid_density x grid_density`` grid over ``[-1, 1]^2`` per complex
    variable, and all seeds are iterated together (Gauss-Newton). Converged
    points inside their chart's unit polydisc whose chart polynomials vanish
    are returned canonically and deduplicated. Meant as a cross-check, not
    as a decision procedure.
    """
    shape = _check_shape(shape)
    b = _check_basis(basis, shape)
    cons = kernel_basis(b.conj().T, tol).conj().T
    n = shape.n
    if cons.shape[0] == 0:
        return []
    axis = np.linspace(-1.0, 1.0, grid_density)
    pts = (axis[:, None] + 1j * axis[None, :]).ravel()
    grid = np.array(list(itertools.product(pts, repeat=n)), dtype=complex)
    charts = np.array(list(itertools.product((0, 1), repeat=n)))
    x = np.tile(grid, (len(charts), 1))
    kind = np.repeat(charts, len(grid), axis=0).astype(bool)  # True: local is (x, 1)
    ones = np.ones(len(x), dtype=complex)
    d_first = np.where(kind, 1.0, 0.0).astype(complex)
    d_second = 1.0 - d_first

    def chart_locals(x):
        return [np.stack([np.where(kind[:, j], x[:, j], ones), np.where(kind[:, j], ones, x[:, j])], axis=-1)
                for j in range(n)]

    for _ in range(iterations):
        locs = chart_locals(x)
        f = _batch_kron(locs) @ cons.T
        cols = []
        for j in range(n):
            ops = list(locs)
            ops[j] = np.stack([d_first[:, j], d_second[:, j]], axis=-1)
            cols.append(_batch_kron(ops) @ cons.T)
        jac = np.stack(cols, axis=-1)
        jh = np.conj(np.swapaxes(jac, -1, -2))
        normal = jh @ jac
        normal += (1e-14 * np.trace(normal, axis1=-2, axis2=-1).real + 1e-300)[:, None, None] * np.eye(n)
        with np.errstate(all="ignore"):
            x = x + np.linalg.solve(normal, -(jh @ f[..., None]))[..., 0]
        x[~np.all(np.isfinite(x), axis=-1)] = 0.0

    inside = np.all(np.abs(x) <= 1.0 + _CHART_SLACK, axis=-1)
    found: list[ProductVector] = []
    for ci, chart in enumerate(charts):
        sel = inside & np.all(kind == chart.astype(bool), axis=1)
        xs = x[sel]
        if not len(xs):
            continue
        polys = _chart_polys(cons, shape, tuple(chart))
        locs = [np.stack([np.ones(len(xs)), xs[:, j]] if k == 0 else [xs[:, j], np.ones(len(xs))], axis=-1)
                for j, k in enumerate(chart)]
        norms = np.linalg.norm(_batch_kron(locs), axis=1)
        vals = np.stack([p(xs) for p in polys], axis=-1)
        ok = np.linalg.norm(vals, axis=1) / norms <= tol.residual_abs
        if not np.any(ok):
            continue
        locs = [loc[ok] for loc in locs]
        flats = _batch_kron(locs)
        flats /= np.linalg.norm(flats, axis=1, keepdims=True)
        while len(flats):
            z = flatten([loc[0] for loc in locs], shape).canonical()
            if not any(projectively_equal(z, w, tol) for w in found):
                found.append(z)
            keep = np.abs(flats @ flats[0].conj()) ** 2 < 1.0 - tol.dedupe_fid
            flats = flats[keep]
            locs = [loc[keep] for loc in locs]
    return sorted(found, key=_sort_key)
