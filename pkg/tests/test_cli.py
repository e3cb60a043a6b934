import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from helpers import random_gp_set, random_hermitian
from sepface import HermitianOperator, PartyShape, load_example, mix, pure_state
from sepface.cli import main
from sepface.files import (
    FileFormatError,
    load_state_file,
    load_vector_file,
    parse_vector_file,
    state_file_dict,
    vector_file_dict,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def example_file(capsys, tmp_path, name, *extra):
    path = tmp_path / f"{name}{'-'.join(extra)}.json"
    code, _, _ = run(capsys, "example", "show", name, "--out", str(path), *extra)
    assert code == 0
    return str(path)


def test_example_list(capsys):
    code, out, _ = run(capsys, "--json", "example", "list")
    assert code == 0
    assert json.loads(out) == ["exam-a", "vec-ex", "w-family", "zt-family"]


def test_example_show(capsys):
    code, out, _ = run(capsys, "example", "show", "exam-a")
    assert code == 0
    doc = json.loads(out)
    assert [x[0] for x in doc["product_vectors"][4]["flat"]] == [8, 4, 4, 2, 4, 2, 2, 1]
    assert run(capsys, "example", "show", "nope")[0] == 2


def test_check_gupb_and_gp(capsys, tmp_path):
    f = example_file(capsys, tmp_path, "exam-a")
    assert run(capsys, "check", "gupb", f)[0] == 0
    assert run(capsys, "check", "gupb", "--method", "complement", f)[0] == 0
    code, out, _ = run(capsys, "--json", "check", "gp", f)
    assert code == 1
    w = json.loads(out)["witness"]
    assert len(w["indices"]) == 2


def test_check_gupb_failure_serializes_witness(capsys, tmp_path):
    f = example_file(capsys, tmp_path, "vec-ex")
    code, out, _ = run(capsys, "--json", "check", "gupb", f)
    assert code == 1
    rep = json.loads(out)
    assert rep["witness"]["partition"] and len(rep["witness"]["orthogonal_product_vector"]) == 8


def test_check_independence(capsys, tmp_path):
    f = example_file(capsys, tmp_path, "exam-a")
    assert run(capsys, "check", "independence", f)[0] == 1
    assert run(capsys, "check", "state-independence", f)[0] == 0


def test_check_empty_file(capsys, tmp_path):
    f = tmp_path / "empty.json"
    f.write_text('{"shape": [2, 2, 2], "product_vectors": []}')
    assert run(capsys, "check", "gp", str(f))[0] == 2


def test_malformed_files(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"shape": [2, 2],\n "product_vectors": [}')
    code, _, err = run(capsys, "check", "gp", str(f))
    assert code == 2 and "line 2" in err
    f.write_text('{"shape": [2, 2], "product_vectors": [{"locals": [[1, 0], [[1, 0], "x"]]}]}')
    code, _, err = run(capsys, "check", "gp", str(f))
    assert code == 2 and "product_vectors[0].locals[1][1]" in err
    assert run(capsys, "check", "gp", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "check", "nope", str(f))[0] == 2


def test_enumerate(capsys, tmp_path):
    w = example_file(capsys, tmp_path, "exam-a", "--aux", "--select", "0,1,2")
    code, out, _ = run(capsys, "--json", "enumerate", "--complement", w)
    rep = json.loads(out)
    assert code == 0 and rep["kind"] == "finite" and rep["count"] == 6
    # the report is itself a vector file holding the vectors found
    assert len(parse_vector_file(rep).product_vectors) == 6

    v = example_file(capsys, tmp_path, "vec-ex")
    rep = json.loads(run(capsys, "--json", "enumerate", v)[1])
    assert rep["count"] == 6

    z = example_file(capsys, tmp_path, "zt-family")
    code, out, _ = run(capsys, "enumerate", z)
    assert code == 0 and "infinite" in out


def test_enumerate_marked_complement(capsys, tmp_path):
    w = example_file(capsys, tmp_path, "exam-a", "--aux", "--select", "0,1,2", "--complement")
    rep = json.loads(run(capsys, "--json", "enumerate", w)[1])
    assert rep["count"] == 6


def test_enumerate_unsupported_shape(capsys, tmp_path):
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"shape": [3, 3], "vectors": [[1, 0, 0, 0, 0, 0, 0, 0, 0]]}))
    assert run(capsys, "enumerate", str(f))[0] == 2


def test_face(capsys, tmp_path, rng):
    v = example_file(capsys, tmp_path, "vec-ex")
    code, out, _ = run(capsys, "face", v)
    assert code == 0 and "6 vertices" in out
    f = tmp_path / "three.json"
    f.write_text(json.dumps(vector_file_dict(PartyShape((2, 2)), random_gp_set(rng, (2, 2), 3))))
    code, out, _ = run(capsys, "face", str(f))
    assert code == 1 and "infinite-family" in out
    f.write_text(json.dumps(vector_file_dict(PartyShape((2, 2)), random_gp_set(rng, (2, 2), 2))))
    assert run(capsys, "face", str(f))[0] == 0


def test_pptes_build_and_verify(capsys, tmp_path):
    f = example_file(capsys, tmp_path, "exam-a")
    out_state = tmp_path / "rho.json"
    code, out, _ = run(capsys, "--json", "pptes", "build", f, "--weights", "0.2,0.2,0.2,0.2,0.2",
                       "--out", str(out_state))
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "pptes-edge-rank4"
    assert abs(rep["alpha"] - 935 / 81) <= 1e-10
    assert rep["lambda"] == pytest.approx(float(Fraction(935, 854)), rel=1e-12)
    assert rep["gamma_span_dims"] == [5, 5, 5]
    code, out, _ = run(capsys, "pptes", "verify", str(out_state))
    assert code == 0 and "pptes-edge-rank4" in out


def test_pptes_build_w_family(capsys, tmp_path):
    f = example_file(capsys, tmp_path, "w-family")
    code, out, _ = run(capsys, "pptes", "build", f)
    assert code == 1 and "partial conjugates span 6 dimensions" in out


def test_pptes_weights_renormalized(capsys, tmp_path):
    f = example_file(capsys, tmp_path, "vec-ex")
    code, out, err = run(capsys, "--json", "pptes", "build", f, "--weights", "1,1,1,1,1")
    assert code == 0 and "renormalizing" in err
    assert json.loads(out)["lambda"] == pytest.approx(10 / 9, rel=1e-12)
    assert run(capsys, "pptes", "build", f, "--weights", "1,1,1,1,-1")[0] == 2
    assert run(capsys, "pptes", "build", f, "--weights", "1,1")[0] == 2


def test_pptes_verify_separable_mixture(capsys, tmp_path):
    z = load_example("exam-a").vectors(normalize=True)
    rho = mix([pure_state(v) for v in z], [1 / 6] * 6)
    f = tmp_path / "sep.json"
    f.write_text(json.dumps(state_file_dict(rho)))
    code, out, _ = run(capsys, "pptes", "verify", str(f))
    assert code == 1 and "separable" in out


def test_tolerance_flags_are_echoed(capsys, tmp_path):
    f = example_file(capsys, tmp_path, "exam-a")
    code, out, _ = run(capsys, "--tol-rank", "1e-8", "--tol-psd", "1e-9", "--json", "check", "gupb", f)
    t = json.loads(out)["tolerances"]
    assert t["rank_rel"] == 1e-8 and t["psd_abs"] == 1e-9 and t["residual_abs"] == 1e-8
    assert run(capsys, "--tol-rank", "0.5", "check", "gupb", f)[0] == 2


def test_vector_file_round_trip(tmp_path, rng):
    vs = random_gp_set(rng, (2, 2, 2), 5)
    extra = [rng.normal(size=8) + 1j * rng.normal(size=8)]
    path = tmp_path / "v.json"
    path.write_text(json.dumps(vector_file_dict(PartyShape((2, 2, 2)), vs, extra, "span")))
    back = load_vector_file(path)
    assert back.mode == "span"
    assert all(np.array_equal(a.flat, b.flat) for a, b in zip(vs, back.product_vectors))
    assert np.array_equal(back.vectors[0], extra[0])
    again = json.dumps(vector_file_dict(back.shape, back.product_vectors, back.vectors, back.mode))
    assert again == path.read_text()


def test_state_file_round_trip(tmp_path, rng):
    rho = HermitianOperator(PartyShape((2, 2, 2)), random_hermitian(rng, 8))
    path = tmp_path / "s.json"
    path.write_text(json.dumps(state_file_dict(rho)))
    back = load_state_file(path)
    assert np.array_equal(back.matrix, rho.matrix)


def test_state_file_must_be_hermitian(tmp_path):
    m = np.zeros((4, 4))
    m[0, 1] = 1
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"shape": [2, 2], "matrix": m.tolist()}))
    with pytest.raises(FileFormatError):
        load_state_file(path)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sepface", "example", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "vec-ex" in proc.stdout
