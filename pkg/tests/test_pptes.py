from fractions import Fraction

import numpy as np
import pytest

from helpers import random_product
from sepface import (
    ContractViolation,
    DegenerateGammaSpanError,
    NoPptBoundaryError,
    SixTuple,
    boundary_lambda,
    build_rho,
    complement_of,
    enumerate_in_subspace,
    expansion_coefficients,
    flatten,
    gamma_span_dims,
    kernel_basis,
    lambda_bisection_check,
    load_example,
    mix,
    numeric_rank,
    partial_transpose,
    pure_state,
    span_of,
    verify_pptes,
)
from sepface.enumeration import same_projective_set
from sepface.pptes import PPT_SUBSETS, THREE_QUBITS, boundary_data, rho_on_line


def six(name):
    return SixTuple.from_vectors(load_example(name).vectors())


def exact_s(name, p):
    """Closed form of sum |a_i|^2 / p_i from the normalized exact coefficients."""
    weights = load_example(name).expected["a_abs2_normalized"]
    return sum(Fraction(w) / Fraction(pi) for w, pi in zip(weights, p))


def test_normalized_coefficient_moduli_are_exact():
    for name in ("exam-a", "vec-ex"):
        a = expansion_coefficients(six(name))
        expected = [float(f) for f in load_example(name).expected["a_abs2_normalized"]]
        assert np.max(np.abs(np.abs(a) ** 2 - expected)) <= 1e-12


def test_a_abs2_follows_from_exact_coefficients():
    # |a_i|^2 = |c_i|^2 |z_i|^2 / |z_6|^2 with c the unnormalized coefficients
    for name in ("exam-a", "vec-ex"):
        ex = load_example(name)
        norms2 = [Fraction(int(round(z.norm ** 2))) for z in ex.vectors()]
        got = tuple(c * c * n / norms2[5] for c, n in zip(ex.expected["coefficients"], norms2[:5]))
        assert got == ex.expected["a_abs2_normalized"]


@pytest.mark.parametrize("name,lam", [("exam-a", Fraction(935, 854)), ("vec-ex", Fraction(10, 9))])
def test_uniform_lambda(name, lam):
    p = [Fraction(1, 5)] * 5
    s = exact_s(name, p)
    assert s / (s - 1) == lam
    data = boundary_data(six(name))
    assert data.lambda_ == pytest.approx(float(lam), rel=1e-12)
    assert data.S == pytest.approx(float(s), rel=1e-12)


def test_boundary_lambda_errors():
    with pytest.raises(NoPptBoundaryError):
        boundary_lambda([0.1] * 5, [0.2] * 5)
    with pytest.raises(ContractViolation):
        boundary_lambda([1] * 5, [0.5] * 5)
    with pytest.raises(ContractViolation):
        boundary_lambda([1] * 5, [0.5, 0.5, 0.0, 0.0, 0.0])


@pytest.mark.parametrize("name", ["exam-a", "vec-ex"])
def test_build_rho_is_rank_four_ppt_edge_state(name):
    t = six(name)
    rho = build_rho(t)
    assert abs(rho.trace - 1) <= 1e-12
    rep = verify_pptes(rho, t)
    assert rep.verdict == "pptes-edge-rank4"
    assert rep.ranks == (4, 4, 4, 4)
    assert min(rep.min_eigs) >= -1e-10
    assert rep.range_products == 0
    assert rep.gamma_span_dims == (5, 5, 5)


def test_two_closed_forms_agree():
    t = six("exam-a")
    data = boundary_data(t)
    rho = rho_on_line(t, data.p, data.lambda_)
    proj = [np.outer(v.flat, v.flat.conj()) for v in t.vectors]
    other = (data.S * sum(pi * q for pi, q in zip(data.p, proj[:5])) - proj[5]) / (data.S - 1)
    assert np.max(np.abs(rho - other)) <= 1e-12


def test_bisection_matches_closed_form(rng):
    t = six("vec-ex")
    for _ in range(3):
        p = rng.dirichlet(np.ones(5))
        lam = boundary_data(t, p).lambda_
        assert abs(lambda_bisection_check(t, p) - lam) <= 1e-8


def test_distinguished_index():
    vs = load_example("vec-ex").vectors()
    t = SixTuple.from_vectors(vs, distinguished=0)
    # the relation is symmetric up to sign, so every a_i has modulus |z_i| / |z_0|
    a = expansion_coefficients(t)
    norms = np.array([z.norm for z in vs])
    assert np.allclose(np.abs(a), norms[1:] / norms[0])
    assert verify_pptes(build_rho(t), t).verdict == "pptes-edge-rank4"


def test_w_family_refused():
    t = six("w-family")
    assert max(gamma_span_dims(t)) >= load_example("w-family").expected["max_gamma_span_dim_at_least"]
    with pytest.raises(DegenerateGammaSpanError, match="span 6 dimensions"):
        build_rho(t)


def test_six_tuple_validation():
    z = load_example("exam-a").vectors()
    with pytest.raises(ContractViolation):
        SixTuple.from_vectors(z[:5])
    with pytest.raises(ContractViolation):
        SixTuple.from_vectors(z[:5] + [z[0]])
    with pytest.raises(ContractViolation):
        SixTuple.from_vectors(z, distinguished=6)
    with pytest.raises(ContractViolation):
        SixTuple(tuple(z))  # not normalized
    zt = load_example("zt-family", ts=range(6)).vectors()
    with pytest.raises(ContractViolation):
        SixTuple.from_vectors(zt)  # span dimension 4


def test_separable_mixture_is_flagged():
    z = load_example("exam-a").vectors(normalize=True)
    rho = mix([pure_state(v) for v in z], [1 / 6] * 6)
    rep = verify_pptes(rho)
    assert rep.verdict == "inconclusive"
    assert any(n.startswith("separable") for n in rep.notes)


def test_pure_product_state_is_separable():
    z = load_example("vec-ex").vectors(normalize=True)
    rep = verify_pptes(pure_state(z[0]))
    assert rep.verdict == "inconclusive" and rep.range_products == 1


def test_rank_four_separable_state():
    z = load_example("vec-ex").vectors(normalize=True)
    rho = mix([pure_state(v) for v in z[:4]], [0.25] * 4)
    assert verify_pptes(rho).verdict == "separable"


def test_entangled_state_is_not_ppt():
    ghz = np.zeros(8)
    ghz[[0, 7]] = 1 / np.sqrt(2)
    rep = verify_pptes(np.outer(ghz, ghz))
    assert min(rep.min_eigs) < -0.1
    assert rep.verdict == "inconclusive"


def test_verify_rejects_bad_input():
    with pytest.raises(ContractViolation):
        verify_pptes(np.eye(8))
    with pytest.raises(ContractViolation):
        verify_pptes(np.eye(4) / 4)


def test_single_term_lambda():
    assert boundary_lambda([1, 0, 0, 0, 0], [0.5, 0.125, 0.125, 0.125, 0.125]) == pytest.approx(2.0)


def test_lambda_is_permutation_invariant(rng):
    for _ in range(50):
        a = rng.normal(size=5) + 1j * rng.normal(size=5)
        p = rng.dirichlet(np.ones(5))
        perm = rng.permutation(5)
        assert boundary_lambda(a[perm], p[perm]) == pytest.approx(boundary_lambda(a, p), rel=1e-13)


def _random_six(rng, real=False):
    """Five random product vectors plus the sixth product vector their span always contains."""
    while True:
        if real:
            five = [flatten([rng.normal(size=2) for _ in range(3)]) for _ in range(5)]
        else:
            five = [random_product(rng, (2, 2, 2)) for _ in range(5)]
        res = enumerate_in_subspace(span_of(five), (2, 2, 2))
        extra = [z for z in res.vectors if not any(same_projective_set([z], [v]) for v in five)]
        if res.count == 6 and len(extra) == 1:
            return SixTuple.from_vectors(five + extra)


def test_closed_forms_agree_on_random_six_tuples(rng):
    for _ in range(100):
        t = _random_six(rng)
        p = rng.dirichlet(np.ones(5))
        data = boundary_data(t, p)
        rho = rho_on_line(t, p, data.lambda_)
        proj = [np.outer(v.flat, v.flat.conj()) for v in t.vectors]
        other = (data.S * sum(pi * q for pi, q in zip(p, proj[:5])) - proj[5]) / (data.S - 1)
        assert np.max(np.abs(rho - other)) <= 1e-12


def test_real_six_tuples_drop_rank_simultaneously(rng):
    for _ in range(20):
        t = _random_six(rng, real=True)
        assert all(abs(v.flat.imag).max() < 1e-12 for v in t.vectors)
        assert gamma_span_dims(t) == (5, 5, 5)
        p = rng.dirichlet(np.ones(5))
        rho = build_rho(t, p)
        ranks = [numeric_rank(partial_transpose(rho.matrix, s, THREE_QUBITS)) for s in PPT_SUBSETS]
        assert ranks == [4, 4, 4, 4]


def test_interior_of_the_line_is_rank_five_and_ppt():
    for name in ("exam-a", "vec-ex"):
        t = six(name)
        for s in (0.5, 1.0):
            m = rho_on_line(t, np.full(5, 0.2), s)
            assert numeric_rank(m) == 5
            for sub in PPT_SUBSETS:
                assert np.linalg.eigvalsh(partial_transpose(m, sub, THREE_QUBITS))[0] >= -1e-10


def test_kernel_vector_in_d_has_overlaps_proportional_to_a_over_p(rng):
    for name in ("exam-a", "vec-ex"):
        t = six(name)
        for p in (np.full(5, 0.2), rng.dirichlet(np.ones(5))):
            data = boundary_data(t, p)
            rho = build_rho(t, p)
            d = span_of(t.vectors)
            # ker(rho) = D-perp plus one more direction xi inside D
            ker = kernel_basis(rho.matrix)
            inside = kernel_basis(np.hstack([ker, -d]))
            assert inside.shape[1] == 1
            xi = d @ inside[ker.shape[1]:, 0]
            overlaps = np.array([np.vdot(z.flat, xi) for z in t.others])
            ratio = data.a / data.p
            scale = np.vdot(ratio, overlaps) / np.vdot(ratio, ratio)
            assert np.max(np.abs(overlaps - scale * ratio)) <= 1e-8 * np.max(np.abs(overlaps))
            # and a/p is the null vector of (1 - lambda)|a><a| + lambda diag(p)
            m = (1 - data.lambda_) * np.outer(data.a, data.a.conj()) + data.lambda_ * np.diag(data.p)
            assert np.max(np.abs(m @ ratio)) <= 1e-10 * np.max(np.abs(ratio))
            assert complement_of(t.vectors).shape[1] == 3


def test_vec_ex_kernel_always_holds_e111(rng):
    # D-perp lies in the kernel of every rho_p and contains e1 (x) e1 (x) e1
    t = six("vec-ex")
    e111 = flatten([[1, 0]] * 3).flat
    assert max(abs(np.vdot(z.flat, e111)) for z in t.vectors) < 1e-15
    for p in [np.full(5, 0.2), np.array([0.3, 0.2, 0.2, 0.2, 0.1])] + list(rng.dirichlet(np.ones(5), size=5)):
        rho = build_rho(t, p, audit=False)
        assert np.linalg.norm(rho.matrix @ e111) < 1e-14
        rep = verify_pptes(rho)
        assert rep.verdict == "pptes-edge-rank4" and rep.kernel_products == 1


def test_exam_a_kernel_products_over_weight_space():
    rng = np.random.default_rng(7)
    t = six("exam-a")
    counts = {}
    for p in rng.dirichlet(np.ones(5), size=1000):
        rho = build_rho(t, p, audit=False)
        res = enumerate_in_subspace(kernel_basis(rho.matrix), (2, 2, 2))
        counts[res.count] = counts.get(res.count, 0) + 1
    print("kernel product-vector counts over 1000 weight draws:", counts)
    assert None not in counts
    assert counts.get(0, 0) >= 900
