"""Substrate tests: realizations agree with dense oracles, norms behave."""

import numpy as np
import pytest

from ccrlab import linalg
from ccrlab.linalg import (
    BandedOperator,
    ConvergenceError,
    DenseOperator,
    DimensionMismatchError,
    LinCombOperator,
    PauliString,
    PauliSumOperator,
    PermutationPhaseOperator,
    ResourceLimitError,
    StateVector,
    anticommutator_apply,
    commutator_apply,
    hs_norm,
    identity,
    kron,
    normalized_trace,
    operator_norm,
    random_state,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def sigma_op(mat):
    return DenseOperator(mat)


def pauli_decompose_2site(mat):
    """Expand a 4x4 matrix over two-site Pauli strings via trace inner products.

    Oracle-side decomposition: matches the little-endian site order used by
    PauliString (site 1 fastest), so np.kron(B_site2, A_site1).
    """
    labels = ["I", "X", "Y", "Z"]
    strings = []
    for l1 in labels:
        for l2 in labels:
            basis_mat = np.kron(linalg.SINGLE_SITE[l2], linalg.SINGLE_SITE[l1])
            coeff = np.trace(basis_mat.conj().T @ mat) / 4.0
            if abs(coeff) < 1e-15:
                continue
            sites = [(1, l1)] if l1 != "I" else []
            if l2 != "I":
                sites.append((2, l2))
            strings.append(PauliString(coeff, sites, 2))
    return PauliSumOperator(strings, 2)


# ---------------------------------------------------------------------------
# StateVector


def test_state_vector_invariants():
    v = StateVector(3, np.array([1.0, 2.0, 2.0]))
    assert v.norm() == 3.0
    with pytest.raises(ValueError):
        StateVector(3, np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        StateVector(2, np.array([np.inf, 0.0]))
    with pytest.raises(ValueError):
        StateVector.basis(4, 4)


def test_state_vector_inner_and_tensor():
    rng = np.random.default_rng(3)
    a, b = random_state(4, rng), random_state(4, rng)
    assert abs(a.inner(b) - np.vdot(a.components, b.components)) < 1e-15
    with pytest.raises(DimensionMismatchError):
        a.inner(random_state(5, rng))
    tensored = a.tensor(b)
    assert tensored.dim == 16
    np.testing.assert_allclose(
        tensored.components, np.kron(a.components, b.components)
    )


def test_state_vector_is_immutable():
    v = StateVector.basis(4, 0)
    with pytest.raises(ValueError):
        v.components[0] = 2.0


# ---------------------------------------------------------------------------
# apply across realizations


def test_identity_applies_as_identity():
    rng = np.random.default_rng(0)
    for dim in (1, 2, 7, 64):
        xi = random_state(dim, rng)
        assert (identity(dim).apply(xi) - xi).norm() == 0.0


def test_pauli_z_on_site_one():
    xi = StateVector(2, np.array([2.0, 3.0]))
    z = PauliSumOperator([PauliString(1.0, [(1, "Z")], 1)])
    np.testing.assert_allclose(z.apply(xi).components, [2.0, -3.0])


def test_dense_vs_pauli_decomposition_on_random_vectors():
    rng = np.random.default_rng(42)
    mat = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    dense = DenseOperator(mat)
    pauli = pauli_decompose_2site(mat)
    for _ in range(10):
        xi = random_state(4, rng)
        diff = dense.apply(xi) - pauli.apply(xi)
        assert np.max(np.abs(diff.components)) <= 1e-12


@pytest.mark.parametrize("label", linalg.PAULI_LABELS)
def test_single_site_strings_match_their_dense_matrices(label):
    rng = np.random.default_rng(7)
    op = PauliString(1.3 - 0.2j, [(2, label)], 3)
    xi = random_state(8, rng)
    np.testing.assert_allclose(
        op.apply_to(xi.components), op.dense_matrix() @ xi.components, atol=1e-14
    )


def test_random_pauli_strings_match_dense_kron_oracle():
    rng = np.random.default_rng(11)
    for _ in range(50):
        m = int(rng.integers(1, 6))
        n_factors = int(rng.integers(0, m + 1))
        ks = rng.choice(np.arange(1, m + 1), size=n_factors, replace=False)
        sites = [
            (int(k), linalg.PAULI_LABELS[int(i)])
            for k, i in zip(ks, rng.integers(0, 6, size=n_factors))
        ]
        s = PauliString(complex(rng.standard_normal(), rng.standard_normal()), sites, m)
        x = rng.standard_normal(1 << m) + 1j * rng.standard_normal(1 << m)
        np.testing.assert_allclose(s.apply_to(x), s.dense_matrix() @ x, atol=1e-12)


def test_pauli_string_validation():
    with pytest.raises(ValueError):
        PauliString(1.0, [(1, "Q")], 2)
    with pytest.raises(ValueError):
        PauliString(1.0, [(3, "X")], 2)
    with pytest.raises(ValueError):
        PauliString(1.0, [(1, "X"), (1, "Z")], 2)


def test_apply_is_linear_for_every_realization():
    rng = np.random.default_rng(5)
    dim = 8
    ops = [
        DenseOperator(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))),
        BandedOperator(dim, [(0, rng.standard_normal(dim)), (2, rng.standard_normal(dim - 2))]),
        PauliSumOperator(
            [PauliString(0.7j, [(1, "X"), (3, "Z")], 3), PauliString(1.1, [(2, "-")], 3)]
        ),
        PermutationPhaseOperator(
            dim, np.roll(np.arange(dim), 3), np.exp(1j * rng.standard_normal(dim))
        ),
    ]
    for op in ops:
        a, b = random_state(dim, rng), random_state(dim, rng)
        alpha, beta = 0.3 - 1j, 2.2 + 0.1j
        combined = op.apply(StateVector(dim, alpha * a.components + beta * b.components))
        separate = alpha * op.apply(a) + beta * op.apply(b)
        assert (combined - separate).norm() < 1e-12


def test_dimension_mismatch_raises():
    op = identity(4)
    with pytest.raises(DimensionMismatchError):
        op.apply(StateVector.basis(5, 0))


def test_adjoint_pairing_identity():
    # <eta | A xi> == <A^dag eta | xi> for every realization
    rng = np.random.default_rng(29)
    dim = 8
    ops = [
        DenseOperator(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))),
        BandedOperator(dim, [(1, rng.standard_normal(7) + 1j * rng.standard_normal(7))]),
        PauliSumOperator(
            [PauliString(1.7 - 0.4j, [(1, "+"), (2, "Y"), (3, "N")], 3),
             PauliString(0.9j, [(2, "-")], 3)]
        ),
        PermutationPhaseOperator(
            dim, np.roll(np.arange(dim), 2), np.exp(1j * rng.standard_normal(dim))
        ),
        LinCombOperator([(0.5j, identity(dim)), (2.0, BandedOperator(dim, [(0, rng.standard_normal(dim))]))]),
    ]
    for op in ops:
        adj = op.adjoint()
        for _ in range(3):
            xi, eta = random_state(dim, rng), random_state(dim, rng)
            lhs = eta.inner(op.apply(xi))
            rhs = adj.apply(eta).inner(xi)
            assert abs(lhs - rhs) <= 1e-12


def test_adjoint_matches_dense_conjugate_transpose():
    rng = np.random.default_rng(9)
    dim = 8
    ops = [
        DenseOperator(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))),
        BandedOperator(
            dim,
            [(1, rng.standard_normal(dim - 1) + 1j * rng.standard_normal(dim - 1)),
             (-2, rng.standard_normal(dim - 2))],
        ),
        PauliSumOperator(
            [PauliString(0.3 + 1j, [(1, "+"), (2, "Y")], 3), PauliString(-2.0, [(3, "N")], 3)]
        ),
        PermutationPhaseOperator(
            dim, np.roll(np.arange(dim), 5), np.exp(1j * rng.standard_normal(dim))
        ),
        LinCombOperator([(1.5j, identity(dim)), (1.0, BandedOperator(dim, [(3, np.ones(dim - 3))]))]),
    ]
    for op in ops:
        np.testing.assert_allclose(
            op.adjoint().dense(), op.dense().conj().T, atol=1e-14
        )


# ---------------------------------------------------------------------------
# commutator / anticommutator


def test_self_commutator_vanishes():
    rng = np.random.default_rng(1)
    mat = rng.standard_normal((6, 6))
    op = DenseOperator(mat)
    xi = random_state(6, rng)
    assert commutator_apply(op, op, xi).norm() == 0.0


def test_pauli_commutator_value():
    xi = StateVector(2, np.array([1.0, 0.0]))
    out = commutator_apply(sigma_op(SX), sigma_op(SY), xi)
    np.testing.assert_allclose(out.components, [2j, 0.0])


def test_commutator_matches_dense_product_oracle():
    rng = np.random.default_rng(12)
    a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    b = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    xi = random_state(8, rng)
    out = commutator_apply(DenseOperator(a), DenseOperator(b), xi)
    oracle = (a @ b - b @ a) @ xi.components
    assert np.max(np.abs(out.components - oracle)) <= 1e-12


def test_anticommutator_cases():
    rng = np.random.default_rng(13)
    xi = random_state(2, rng)
    doubled = anticommutator_apply(sigma_op(SX), sigma_op(SX), xi)
    assert (doubled - 2.0 * xi).norm() < 1e-14
    assert anticommutator_apply(sigma_op(SX), sigma_op(SY), xi).norm() < 1e-14
    a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    b = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    xi = random_state(8, rng)
    out = anticommutator_apply(DenseOperator(a), DenseOperator(b), xi)
    oracle = (a @ b + b @ a) @ xi.components
    assert np.max(np.abs(out.components - oracle)) <= 1e-12


# ---------------------------------------------------------------------------
# kron


def test_kron_identity():
    out = kron(DenseOperator(np.eye(2)), DenseOperator(np.eye(2)))
    np.testing.assert_allclose(out.dense(), np.eye(4))


def test_kron_sigma3_with_identity():
    out = kron(DenseOperator(SZ), DenseOperator(np.eye(2)))
    np.testing.assert_allclose(out.dense(), np.diag([1.0, 1.0, -1.0, -1.0]))
    # same operator through the string route: slow factor acts on site 2
    string_route = kron(
        PauliSumOperator([PauliString(1.0, [(1, "Z")], 1)]),
        PauliSumOperator([PauliString(1.0, [], 1)]),
    )
    np.testing.assert_allclose(string_route.dense(), np.diag([1.0, 1.0, -1.0, -1.0]))


def test_kron_sigma1_pair_maps_first_to_last():
    out = kron(DenseOperator(SX), DenseOperator(SX))
    e0 = StateVector.basis(4, 0)
    np.testing.assert_allclose(out.apply(e0).components, StateVector.basis(4, 3).components)


def test_kron_respects_product_states():
    rng = np.random.default_rng(21)
    a = DenseOperator(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    b = DenseOperator(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    xi, eta = random_state(2, rng), random_state(4, rng)
    lhs = kron(a, b).apply(xi.tensor(eta))
    rhs = a.apply(xi).tensor(b.apply(eta))
    assert (lhs - rhs).norm() < 1e-12


def test_kron_associativity():
    rng = np.random.default_rng(22)
    mats = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(3)]
    a, b, c = (DenseOperator(m) for m in mats)
    xi = random_state(8, rng)
    left = kron(kron(a, b), c).apply(xi)
    right = kron(a, kron(b, c)).apply(xi)
    assert (left - right).norm() <= 1e-12


def test_kron_string_route_matches_dense_route():
    s1 = PauliSumOperator(
        [PauliString(0.5, [(1, "X")], 2), PauliString(1j, [(2, "Y")], 2)]
    )
    s2 = PauliSumOperator([PauliString(1.0, [(1, "Z")], 1)])
    np.testing.assert_allclose(
        kron(s1, s2).dense(), np.kron(s1.dense(), s2.dense()), atol=1e-14
    )


def test_kron_rejects_mixed_realizations():
    with pytest.raises(TypeError):
        kron(DenseOperator(np.eye(2)), identity(2))


# ---------------------------------------------------------------------------
# norms and traces


def test_operator_norm_trivial_cases():
    assert abs(operator_norm(identity(5)) - 1.0) < 1e-12
    diag = BandedOperator(3, [(0, np.array([1.0, 2.0, 3.0]))])
    assert abs(operator_norm(diag) - 3.0) < 1e-12


def test_operator_norm_power_iteration_path():
    # force the iterative path with a small cap; clear spectral gap
    values = np.ones(64)
    values[10] = 3.0
    diag = BandedOperator(64, [(0, values)])
    est = operator_norm(diag, cap=8)
    assert abs(est - 3.0) < 1e-8
    assert abs(operator_norm(identity(64), cap=8) - 1.0) < 1e-10


def test_operator_norm_nonconvergence_raises():
    values = np.array([1.0, 1.0 - 1e-9, 0.5, 0.1])
    diag = BandedOperator(4, [(0, values)])
    with pytest.raises(ConvergenceError):
        operator_norm(diag, cap=2, max_iter=3)


def test_apply_norm_bounded_by_operator_norm():
    rng = np.random.default_rng(31)
    ops = [
        DenseOperator(rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))),
        BandedOperator(8, [(1, rng.standard_normal(7)), (0, rng.standard_normal(8))]),
        PauliSumOperator([PauliString(2.0, [(1, "X")], 3), PauliString(1j, [(2, "N")], 3)]),
    ]
    for op in ops:
        bound = operator_norm(op)
        for _ in range(5):
            xi = random_state(8, rng)
            assert op.apply(xi).norm() <= bound * xi.norm() + 1e-10


def test_normalized_trace_values():
    assert normalized_trace(identity(7)) == 1.0
    z = PauliSumOperator([PauliString(1.0, [(1, "Z")], 1)])
    assert abs(normalized_trace(z)) < 1e-15
    assert abs(hs_norm(z) - 1.0) < 1e-12
    assert abs(hs_norm(identity(9)) - 1.0) < 1e-12
    n_proj = PauliSumOperator([PauliString(2.0, [(1, "N"), (3, "N")], 3)])
    assert abs(normalized_trace(n_proj) - 2.0 * 0.25) < 1e-15


def test_normalized_trace_matches_dense_for_all_realizations():
    rng = np.random.default_rng(17)
    dim = 8
    ops = [
        DenseOperator(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))),
        BandedOperator(dim, [(0, rng.standard_normal(dim)), (-1, rng.standard_normal(dim - 1))]),
        PauliSumOperator(
            [PauliString(1.2, [(1, "N")], 3), PauliString(0.5j, [(2, "Z"), (3, "N")], 3),
             PauliString(0.25, [], 3)]
        ),
        PermutationPhaseOperator(
            dim, np.concatenate([[1, 0], np.arange(2, dim)]), np.exp(1j * rng.standard_normal(dim))
        ),
    ]
    for op in ops:
        assert abs(op.normalized_trace() - np.trace(op.dense()) / dim) < 1e-12


def test_hs_norm_matches_definition():
    rng = np.random.default_rng(18)
    dim = 8
    ops = [
        DenseOperator(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))),
        BandedOperator(dim, [(2, rng.standard_normal(dim - 2) + 1j * rng.standard_normal(dim - 2))]),
        PauliSumOperator(
            [PauliString(1.2, [(1, "+")], 3), PauliString(0.5j, [(2, "Z")], 3),
             PauliString(-0.3, [(1, "+"), (2, "X")], 3)]
        ),
        PermutationPhaseOperator(
            dim, np.roll(np.arange(dim), 1), 2.0 * np.exp(1j * rng.standard_normal(dim))
        ),
    ]
    for op in ops:
        mat = op.dense()
        expected = np.sqrt(np.trace(mat.conj().T @ mat).real / dim)
        assert abs(op.hs_norm() - expected) < 1e-12


def test_normalized_trace_of_commutator_vanishes():
    rng = np.random.default_rng(19)
    for _ in range(5):
        a = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        b = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        comm = DenseOperator(a @ b - b @ a)
        assert abs(normalized_trace(comm)) <= 1e-12 * np.linalg.norm(a) * np.linalg.norm(b)


def test_site_budget_refusal():
    with pytest.raises(ResourceLimitError, match="bytes"):
        linalg.require_sites(23)


def test_permutation_phase_compose_matches_dense():
    rng = np.random.default_rng(23)
    dim = 6
    a = PermutationPhaseOperator(
        dim, rng.permutation(dim), np.exp(1j * rng.standard_normal(dim))
    )
    b = PermutationPhaseOperator(
        dim, rng.permutation(dim), np.exp(1j * rng.standard_normal(dim))
    )
    np.testing.assert_allclose(a.compose(b).dense(), a.dense() @ b.dense(), atol=1e-14)


def test_densification_cap_enforced():
    op = identity(8)
    with pytest.raises(ValueError):
        op.dense(cap=4)
