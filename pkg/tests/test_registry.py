import numpy as np
import pytest

from sepface import ContractViolation, list_examples, load_example, numeric_rank


def test_names():
    assert list_examples() == ("exam-a", "vec-ex", "w-family", "zt-family")


def test_unknown_name():
    with pytest.raises(ContractViolation):
        load_example("nope")


def test_exam_a_data():
    ex = load_example("exam-a")
    flat = ex.vectors()[4].flat
    assert np.array_equal(flat.real, [8, 4, 4, 2, 4, 2, 2, 1]) and not np.any(flat.imag)
    z = np.column_stack([v.flat for v in ex.vectors()])
    w = np.column_stack(ex.auxiliary())
    assert numeric_rank(z) == ex.expected["span_dim"]
    # w1..w4 are orthogonal to the UPB z1..z4 and w1..w3 to all six
    assert np.max(np.abs(w.conj().T @ z[:, :4])) == 0
    assert np.max(np.abs(w[:, :3].conj().T @ z)) == 0


def test_vec_ex_dependency():
    ex = load_example("vec-ex")
    z = np.column_stack([v.flat for v in ex.vectors()])
    assert np.max(np.abs(z @ np.array(ex.expected["dependency"]))) == 0


def test_w_family_span():
    ex = load_example("w-family")
    assert numeric_rank(np.column_stack([v.flat for v in ex.vectors()])) == 5


def test_zt_family_parameters():
    ex = load_example("zt-family", ts=(0, 1, 2), n=4)
    assert ex.shape.dims == (2, 2, 2, 2)
    assert len(ex.vectors()) == 3
    with pytest.raises(ContractViolation):
        load_example("zt-family", ts=())


def test_vectors_are_not_normalized_unless_asked():
    ex = load_example("exam-a")
    assert ex.vectors()[4].norm ** 2 == pytest.approx(125.0)
    assert all(v.norm == pytest.approx(1.0) for v in ex.vectors(normalize=True))
