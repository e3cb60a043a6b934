"""JSON vector and state files.

Complex numbers are ``[re, im]`` pairs (a bare real number is also
accepted on input). Flat vectors and matrices use lexicographic basis order,
party 0 most significant. A vector file looks like::

    {
      "shape": [2, 2, 2],
      "product_vectors": [{"locals": [[[1, 0], [0, 0]], ...]}, ...],
      "vectors": [[[0, 0], [0, 0], [1, 0], ...]],
      "subspace": {"mode": "complement"}
    }

``vectors`` (arbitrary flat vectors) and ``subspace`` are optional. Unknown
keys are ignored, so enumeration reports double as vector files. Floats are
written with ``repr`` precision, so every file re-parses to identical values.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ContractViolation
from .linalg import DEFAULT_TOL
from .tensor import HermitianOperator, PartyShape, ProductVector, flatten

__all__ = [
    "FileFormatError",
    "VectorFile",
    "read_json",
    "parse_vector_file",
    "parse_state_file",
    "load_vector_file",
    "load_state_file",
    "vector_file_dict",
    "state_file_dict",
    "complex_to_json",
    "vector_to_json",
]

SUBSPACE_MODES = ("span", "complement")


class FileFormatError(ContractViolation):
    """Malformed input file; the message names the offending line or field."""


@dataclass
class VectorFile:
    shape: PartyShape
    product_vectors: list[ProductVector] = field(default_factory=list)
    vectors: list[np.ndarray] = field(default_factory=list)
    mode: str | None = None

    def basis_vectors(self) -> list[np.ndarray]:
        return [z.flat for z in self.product_vectors] + list(self.vectors)


def complex_to_json(x: complex) -> list[float]:
    x = complex(x)
    return [float(x.real), float(x.imag)]


def vector_to_json(v) -> list[list[float]]:
    return [complex_to_json(x) for x in np.asarray(v).ravel()]


def _complex(x: Any, where: str) -> complex:
    if isinstance(x, bool):
        raise FileFormatError(f"{where}: expected a number or [re, im], got {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in x):
        return complex(x[0], x[1])
    raise FileFormatError(f"{where}: expected a number or [re, im], got {x!r}")


def _vector(x: Any, length: int, where: str) -> np.ndarray:
    if not isinstance(x, list):
        raise FileFormatError(f"{where}: expected a list of {length} complex entries")
    if len(x) != length:
        raise FileFormatError(f"{where}: expected {length} entries, got {len(x)}")
    out = np.array([_complex(e, f"{where}[{i}]") for i, e in enumerate(x)], dtype=complex)
    if not np.all(np.isfinite(out)):
        raise FileFormatError(f"{where}: non-finite entry")
    return out


def read_json(path) -> Any:
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def _shape(doc: Any) -> PartyShape:
    if not isinstance(doc, dict):
        raise FileFormatError("top level: expected a JSON object")
    dims = doc.get("shape")
    if not isinstance(dims, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims):
        raise FileFormatError("shape: expected a list of integers")
    try:
        return PartyShape(tuple(dims))
    except ContractViolation as e:
        raise FileFormatError(f"shape: {e}") from None


def parse_vector_file(doc: Any) -> VectorFile:
    shape = _shape(doc)
    pvs = doc.get("product_vectors", [])
    if not isinstance(pvs, list):
        raise FileFormatError("product_vectors: expected a list")
    products = []
    for i, entry in enumerate(pvs):
        where = f"product_vectors[{i}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("locals"), list):
            raise FileFormatError(f"{where}: expected an object with a 'locals' list")
        locs = entry["locals"]
        if len(locs) != shape.n:
            raise FileFormatError(f"{where}.locals: expected {shape.n} local vectors, got {len(locs)}")
        xs = [_vector(x, d, f"{where}.locals[{j}]") for j, (x, d) in enumerate(zip(locs, shape.dims))]
        for j, x in enumerate(xs):
            if not np.any(x):
                raise FileFormatError(f"{where}.locals[{j}]: zero vector")
        products.append(flatten(xs, shape))
    flats = doc.get("vectors", [])
    if not isinstance(flats, list):
        raise FileFormatError("vectors: expected a list")
    vectors = [_vector(v, shape.total, f"vectors[{i}]") for i, v in enumerate(flats)]
    mode = None
    if "subspace" in doc:
        sub = doc["subspace"]
        mode = sub.get("mode") if isinstance(sub, dict) else None
        if mode not in SUBSPACE_MODES:
            raise FileFormatError(f"subspace.mode: expected one of {SUBSPACE_MODES}")
    return VectorFile(shape, products, vectors, mode)


def parse_state_file(doc: Any) -> HermitianOperator:
    shape = _shape(doc)
    rows = doc.get("matrix")
    d = shape.total
    if not isinstance(rows, list) or len(rows) != d:
        raise FileFormatError(f"matrix: expected {d} rows")
    m = np.array([_vector(r, d, f"matrix[{i}]") for i, r in enumerate(rows)])
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > DEFAULT_TOL.residual_abs:
        raise FileFormatError(f"matrix: not Hermitian (max deviation {dev:.3e})")
    return HermitianOperator(shape, m)


def load_vector_file(path) -> VectorFile:
    return parse_vector_file(read_json(path))


def load_state_file(path) -> HermitianOperator:
    return parse_state_file(read_json(path))


def _product_json(z: ProductVector) -> dict:
    return {"locals": [vector_to_json(x) for x in z.locals], "flat": vector_to_json(z.flat)}


def vector_file_dict(shape: PartyShape, product_vectors=(), vectors=(), mode: str | None = None) -> dict:
    doc: dict[str, Any] = {"shape": list(shape.dims), "product_vectors": [_product_json(z) for z in product_vectors]}
    if len(vectors):
        doc["vectors"] = [vector_to_json(v) for v in vectors]
    if mode is not None:
        doc["subspace"] = {"mode": mode}
    return doc


def state_file_dict(rho: HermitianOperator) -> dict:
    return {"shape": list(rho.shape.dims), "matrix": [vector_to_json(r) for r in rho.matrix]}
