"""Command-line front end.

Exit codes: 0 the property holds (or the command succeeded), 1 it fails,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .enumeration import complement_of, enumerate_in_subspace, span_of
from .errors import (
    ContractViolation,
    DegenerateGammaSpanError,
    NoPptBoundaryError,
    NumericFailure,
)
from .files import (
    FileFormatError,
    VectorFile,
    complex_to_json,
    load_state_file,
    load_vector_file,
    state_file_dict,
    vector_file_dict,
    vector_to_json,
)
from .linalg import DEFAULT_TOL, Tolerance
from .position import (
    certify_simplicial_face,
    check_general_position,
    check_gupb_complement,
    check_gupb_partition,
    product_states_independent,
    product_vectors_independent,
)
from .pptes import SixTuple, boundary_data, build_rho, gamma_span_dims, verify_pptes
from .registry import EXAMPLE_NAMES, load_example

OK, FAIL, USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _tolerance(args) -> Tolerance:
    return Tolerance(
        rank_rel=args.tol_rank if args.tol_rank is not None else DEFAULT_TOL.rank_rel,
        psd_abs=args.tol_psd if args.tol_psd is not None else DEFAULT_TOL.psd_abs,
        residual_abs=args.tol_residual if args.tol_residual is not None else DEFAULT_TOL.residual_abs,
        dedupe_fid=DEFAULT_TOL.dedupe_fid,
    )


def _tol_dict(tol: Tolerance) -> dict:
    return {"rank_rel": tol.rank_rel, "psd_abs": tol.psd_abs, "residual_abs": tol.residual_abs,
            "dedupe_fid": tol.dedupe_fid}


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for line in lines:
            print(line)
        t = report["tolerances"]
        print(f"tolerances: rank_rel={t['rank_rel']:g} psd_abs={t['psd_abs']:g} "
              f"residual_abs={t['residual_abs']:g} dedupe_fid={t['dedupe_fid']:g}")


def _fmt(v) -> str:
    return np.array2string(np.asarray(v), precision=6, suppress_small=True, max_line_width=200)


def _products(vf: VectorFile):
    if not vf.product_vectors:
        raise _Usage("the file lists no product vectors")
    return vf.product_vectors


def cmd_check(args, tol: Tolerance) -> int:
    vf = load_vector_file(args.file)
    vs = _products(vf)
    report: dict = {"command": "check", "kind": args.kind, "n_vectors": len(vs), "shape": list(vf.shape.dims),
                    "tolerances": _tol_dict(tol)}
    if args.kind == "gp":
        r = check_general_position(vs, tol)
        holds = r.is_gp
        if r.witness is not None:
            party, idx = r.witness
            report["witness"] = {"party": party, "indices": list(idx)}
            detail = f"local vectors {list(idx)} of party {party} are dependent"
        else:
            detail = "every family of at most d_j local vectors is independent"
    elif args.kind == "gupb":
        r = check_gupb_complement(vs, tol) if args.method == "complement" else check_gupb_partition(vs, tol)
        holds = r.is_gupb
        report["method"] = r.method
        if r.bad_partition is not None:
            report["witness"] = {"partition": [list(b) for b in r.bad_partition],
                                 "orthogonal_product_vector": vector_to_json(r.witness_vector.flat)}
            detail = (f"partition {[list(b) for b in r.bad_partition]} leaves the product vector "
                      f"{_fmt(r.witness_vector.flat)} orthogonal to every input")
        else:
            detail = "no product vector is orthogonal to all inputs"
    elif args.kind == "independence":
        holds = product_vectors_independent(vs, tol)
        detail = "product vectors are " + ("linearly independent" if holds else "linearly dependent")
    else:
        holds = product_states_independent(vs, tol)
        detail = "pure product states are " + ("linearly independent" if holds else "linearly dependent")
    report["holds"] = holds
    _emit(args, report, [f"{args.kind}: {'yes' if holds else 'no'}", detail])
    return OK if holds else FAIL


def cmd_enumerate(args, tol: Tolerance) -> int:
    vf = load_vector_file(args.file)
    vectors = vf.basis_vectors()
    if not vectors:
        raise _Usage("the file lists no vectors")
    complement = args.complement or vf.mode == "complement"
    basis = complement_of(vectors, tol) if complement else span_of(vectors, tol)
    if basis.shape[1] == 0:
        raise _Usage("the subspace is zero")
    result = enumerate_in_subspace(basis, vf.shape, tol)
    found = result.vectors if result.is_finite else result.samples
    report = vector_file_dict(vf.shape, found)
    report.update({
        "command": "enumerate",
        "source_subspace": "complement" if complement else "span",
        "subspace_dim": int(basis.shape[1]),
        "kind": result.kind,
        "count": result.count,
        "residual_max": result.residual_max,
        "charts_visited": result.charts_visited,
        "tolerances": _tol_dict(tol),
    })
    lines = [f"{'complement' if complement else 'span'} of dimension {basis.shape[1]}: {result.summary()}",
             f"max residual {result.residual_max:.3e}"]
    label = "vector" if result.is_finite else "sample"
    for i, z in enumerate(found):
        lines.append(f"{label} {i}: locals {' x '.join(_fmt(x) for x in z.locals)}")
        lines.append(f"          flat {_fmt(z.flat)}")
    _emit(args, report, lines)
    if args.out:
        Path(args.out).write_text(json.dumps(vector_file_dict(vf.shape, found), indent=2))
    return OK


def cmd_face(args, tol: Tolerance) -> int:
    vf = load_vector_file(args.file)
    vs = _products(vf)
    cert = certify_simplicial_face(vs, tol)
    report = {"command": "face", "k": cert.k, "states_independent": cert.states_independent,
              "span_product_vectors": cert.enumeration.count, "verdict": cert.verdict,
              "tolerances": _tol_dict(tol)}
    lines = [f"verdict: {cert.verdict}", f"states independent: {cert.states_independent}",
             f"product vectors in span: {cert.enumeration.summary()}"]
    if cert.verdict == "simplicial-face":
        lines.append(f"face is a simplex with {cert.k} vertices (dimension {cert.k - 1})")
    _emit(args, report, lines)
    return OK if cert.verdict == "simplicial-face" else FAIL


def _weights(text: str | None):
    if text is None:
        return None
    try:
        p = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise _Usage(f"--weights: cannot parse {text!r}") from None
    if p.size != 5 or np.any(~np.isfinite(p)) or np.any(p <= 0):
        raise _Usage("--weights: need five positive numbers")
    if abs(p.sum() - 1.0) > 1e-12:
        print(f"sepface: warning: weights sum to {p.sum():.15g}; renormalizing", file=sys.stderr)
        p = p / p.sum()
    return p


def cmd_pptes(args, tol: Tolerance) -> int:
    if args.action == "build":
        vf = load_vector_file(args.file)
        six = SixTuple.from_vectors(_products(vf), args.distinguished, tol)
        p = _weights(args.weights)
        report: dict = {"command": "pptes build", "distinguished": args.distinguished,
                        "gamma_span_dims": list(gamma_span_dims(six, tol)), "tolerances": _tol_dict(tol)}
        try:
            rho = build_rho(six, p, tol)
        except (DegenerateGammaSpanError, NoPptBoundaryError) as e:
            report.update({"verdict": "refused", "reason": str(e)})
            _emit(args, report, [f"refused: {e}"])
            return FAIL
        data = boundary_data(six, p, tol)
        verdict = verify_pptes(rho, six, tol)
        report.update({
            "p": data.p.tolist(),
            "a": [complex_to_json(x) for x in data.a],
            "S": data.S,
            "alpha": data.S,
            "lambda": data.lambda_,
            "verification": verdict.as_dict(),
            "verdict": verdict.verdict,
        })
        if args.out:
            Path(args.out).write_text(json.dumps(state_file_dict(rho), indent=2))
            report["state_file"] = str(args.out)
        lines = [f"a = {_fmt(data.a)}", f"S = alpha = {data.S:.15g}", f"lambda = {data.lambda_:.15g}",
                 f"gamma span dims {tuple(report['gamma_span_dims'])}",
                 f"ranks of partial transposes {verdict.ranks}", f"verdict: {verdict.verdict}"]
        if args.out:
            lines.append(f"state written to {args.out}")
        _emit(args, report, lines)
        return OK if verdict.verdict == "pptes-edge-rank4" else FAIL

    rho = load_state_file(args.file)
    rep = verify_pptes(rho, None, tol)
    report = {"command": "pptes verify", **rep.as_dict(), "tolerances": _tol_dict(tol)}
    lines = [f"verdict: {rep.verdict}", f"ranks of partial transposes {rep.ranks}",
             f"min eigenvalues {_fmt(rep.min_eigs)}",
             f"product vectors in range: {'infinite' if rep.range_products is None else rep.range_products}",
             f"product vectors in kernel: {'infinite' if rep.kernel_products is None else rep.kernel_products}"]
    lines += [f"note: {n}" for n in rep.notes]
    _emit(args, report, lines)
    return OK if rep.verdict == "pptes-edge-rank4" else FAIL


def cmd_example(args, tol: Tolerance) -> int:
    if args.action == "list":
        if args.json:
            print(json.dumps(list(EXAMPLE_NAMES)))
        else:
            for name in EXAMPLE_NAMES:
                print(f"{name}: {load_example(name).description}")
        return OK
    if args.name is None:
        raise _Usage("example show needs a name")
    params = {}
    if args.ts is not None and args.name == "zt-family":
        params["ts"] = tuple(float(t) for t in args.ts.split(","))
    ex = load_example(args.name, **params)
    if args.aux:
        if not ex.auxiliary_vectors:
            raise _Usage(f"{args.name} has no auxiliary vectors")
        pool = ex.auxiliary()
    else:
        pool = ex.vectors()
    if args.select is not None:
        try:
            idx = [int(i) for i in args.select.split(",")]
            pool = [pool[i] for i in idx]
        except (ValueError, IndexError):
            raise _Usage(f"--select: bad index list {args.select!r}") from None
    if args.aux:
        doc = vector_file_dict(ex.shape, (), pool, "complement" if args.complement else None)
    else:
        doc = vector_file_dict(ex.shape, pool)
    text = json.dumps(doc, indent=2)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sepface", description="Product vectors, GUPBs and three-qubit PPT entangled edge states.")
    parser.add_argument("--tol-rank", type=float, help="relative singular-value cutoff for ranks")
    parser.add_argument("--tol-psd", type=float, help="absolute slack for positive semidefiniteness")
    parser.add_argument("--tol-residual", type=float, help="absolute residual for solves and memberships")
    parser.add_argument("--json", action="store_true", help="machine-readable JSON report")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="test a property of a set of product vectors")
    p.add_argument("kind", choices=["gp", "gupb", "independence", "state-independence"])
    p.add_argument("file")
    p.add_argument("--method", choices=["partition", "complement"], default="partition",
                   help="GUPB decision procedure")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="all product vectors in a span or its complement")
    p.add_argument("file")
    p.add_argument("--complement", action="store_true", help="use the orthogonal complement of the vectors")
    p.add_argument("--out", help="write the product vectors found as a vector file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("face", help="certify that the pure product states span a simplicial face")
    p.add_argument("file")
    p.set_defaults(func=cmd_face)

    p = sub.add_parser("pptes", help="build or verify a rank-four PPT entangled edge state")
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("file")
    p.add_argument("--weights", help="five comma-separated positive weights (default uniform)")
    p.add_argument("--out", help="build: write the state here")
    p.add_argument("--distinguished", type=int, default=5, help="index of the vector written in terms of the rest")
    p.set_defaults(func=cmd_pptes)

    p = sub.add_parser("example", help="built-in example configurations")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--aux", action="store_true", help="emit the auxiliary (non-product) vectors instead")
    p.add_argument("--complement", action="store_true", help="with --aux: mark the file as a complement subspace")
    p.add_argument("--select", help="comma-separated indices to keep")
    p.add_argument("--ts", help="zt-family parameters, comma-separated")
    p.add_argument("--out", help="write the vector file here instead of stdout")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else USAGE
    try:
        tol = _tolerance(args)
        return args.func(args, tol)
    except FileFormatError as e:
        print(f"sepface: input error: {e}", file=sys.stderr)
    except (_Usage, ContractViolation) as e:
        print(f"sepface: error: {e}", file=sys.stderr)
    except OSError as e:
        print(f"sepface: cannot read input: {e}", file=sys.stderr)
    except NumericFailure as e:
        print(f"sepface: numeric failure: {e}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
