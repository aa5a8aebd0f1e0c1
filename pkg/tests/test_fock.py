"""Truncated Fock spaces, ladder operators, and partial transpose/trace."""

import math

import numpy as np
import pytest

from fockwitness.fock import (
    DEFAULT_MAX_DIM,
    DensityOperator,
    StateVector,
    adjoint,
    annihilation_op,
    as_density,
    compose,
    creation_op,
    density_from_pure,
    identity_op,
    linear_combine,
    make_space,
    mix,
    number_op,
    partial_trace,
    partial_transpose,
    partial_transpose_op,
    purity,
    quadrature_ops,
    transpose_mode_matrix,
)


def basis_state(space, occ):
    amps = np.zeros(space.dim, dtype=complex)
    amps[space.basis_index(occ)] = 1.0
    return StateVector(space, amps)


# ---------------------------------------------------------------------------
# spaces and indexing


def test_make_space_shape():
    space = make_space(2, (3, 5))
    assert space.modes == 2
    assert space.dim == 15
    assert space.cutoffs == (3, 5)


def test_make_space_rejects_bad_input():
    with pytest.raises(ValueError):
        make_space(2, (3,))
    with pytest.raises(ValueError):
        make_space(1, (0,))
    with pytest.raises(ValueError):
        make_space(0, ())
    # total dimension capped
    with pytest.raises(ValueError):
        make_space(2, (65, 64))
    # exactly at the cap is fine
    make_space(2, (64, 64), max_dim=DEFAULT_MAX_DIM)


def test_indexing_row_major_round_trip():
    space = make_space(3, (2, 3, 4))
    seen = []
    for occ in space.all_occupations():
        idx = space.basis_index(occ)
        assert space.occupations_of(idx) == occ
        seen.append(idx)
    # all_occupations enumerates in index order, last mode fastest
    assert seen == list(range(space.dim))
    assert space.basis_index((0, 0, 1)) == 1
    assert space.basis_index((1, 0, 0)) == 12


def test_basis_index_rejects_out_of_range():
    space = make_space(2, (3, 3))
    with pytest.raises(ValueError):
        space.basis_index((3, 0))
    with pytest.raises(ValueError):
        space.basis_index((0, -1))
    with pytest.raises(ValueError):
        space.basis_index((0,))


# ---------------------------------------------------------------------------
# states


def test_state_vector_requires_normalization():
    space = make_space(1, (4,))
    amps = np.zeros(4, dtype=complex)
    amps[0] = 0.5
    with pytest.raises(ValueError):
        StateVector(space, amps)
    psi = StateVector.normalized(space, amps)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-14


def test_density_operator_validation():
    space = make_space(1, (3,))
    good = np.diag([0.5, 0.5, 0.0]).astype(complex)
    rho = DensityOperator(space, good)
    assert abs(np.trace(rho.matrix) - 1.0) < 1e-14
    with pytest.raises(ValueError):
        DensityOperator(space, np.diag([0.7, 0.7, 0.0]).astype(complex))
    skew = good.copy()
    skew[0, 1] = 0.3  # not Hermitian
    with pytest.raises(ValueError):
        DensityOperator(space, skew)


def test_density_from_pure_and_purity():
    space = make_space(2, (3, 3))
    psi = basis_state(space, (1, 2))
    rho = density_from_pure(psi)
    assert abs(purity(rho) - 1.0) < 1e-14
    rho2 = mix([0.5, 0.5], [rho, density_from_pure(basis_state(space, (0, 0)))])
    assert abs(purity(rho2) - 0.5) < 1e-14


def test_mix_rejects_bad_weights():
    space = make_space(1, (3,))
    rho = density_from_pure(basis_state(space, (0,)))
    with pytest.raises(ValueError):
        mix([0.6, 0.6], [rho, rho])
    with pytest.raises(ValueError):
        mix([-0.1, 1.1], [rho, rho])
    with pytest.raises(ValueError):
        mix([1.0], [rho, rho])


def test_as_density_idempotent():
    space = make_space(1, (3,))
    psi = basis_state(space, (1,))
    rho = as_density(psi)
    assert as_density(rho) is rho
    np.testing.assert_allclose(rho.matrix, np.outer(psi.amplitudes, psi.amplitudes.conj()))


# ---------------------------------------------------------------------------
# ladder operators


def test_annihilation_matrix_elements():
    space = make_space(1, (5,))
    a = annihilation_op(space, 0)
    for n in range(1, 5):
        image = a.apply(basis_state(space, (n,)))
        expected = math.sqrt(n)
        assert abs(image[space.basis_index((n - 1,))] - expected) < 1e-14
        assert abs(np.linalg.norm(image) - expected) < 1e-14
    assert np.linalg.norm(a.apply(basis_state(space, (0,)))) == 0.0


def test_creation_is_adjoint_of_annihilation():
    space = make_space(2, (4, 4))
    for mode in range(2):
        a = annihilation_op(space, mode)
        diff = creation_op(space, mode).matrix - a.dagger().matrix
        assert abs(diff).max() == 0.0
        assert adjoint(a).matrix is not a.matrix


def test_number_operator_diagonal():
    space = make_space(2, (3, 4))
    for mode in range(2):
        n_op = number_op(space, mode)
        for occ in space.all_occupations():
            image = n_op.apply(basis_state(space, occ))
            assert abs(image[space.basis_index(occ)] - occ[mode]) < 1e-14


def test_canonical_commutator_away_from_edge():
    # [a, a^dag] = 1 on every state that cannot reach the truncation row.
    space = make_space(1, (6,))
    a = annihilation_op(space, 0)
    comm = (a @ a.dagger()) - (a.dagger() @ a)
    dense = comm.toarray()
    for n in range(5):
        assert abs(dense[n, n] - 1.0) < 1e-14
    # the top Fock level sees the truncation instead
    assert abs(dense[5, 5] - (-5.0)) < 1e-14


def test_modes_commute():
    space = make_space(2, (4, 4))
    a0 = annihilation_op(space, 0)
    a1 = creation_op(space, 1)
    diff = (a0 @ a1).matrix - (a1 @ a0).matrix
    assert abs(diff).max() == 0.0


def test_quadratures():
    space = make_space(1, (8,))
    x_op, p_op = quadrature_ops(space, 0)
    assert x_op.is_hermitian()
    assert p_op.is_hermitian()
    a = annihilation_op(space, 0)
    recon = linear_combine([1.0 / math.sqrt(2), 1j / math.sqrt(2)], [x_op, p_op])
    assert abs((recon.matrix - a.matrix)).max() < 1e-14


def test_operator_arithmetic():
    space = make_space(1, (4,))
    n_op = number_op(space, 0)
    ident = identity_op(space)
    shifted = n_op + ident * 2.0
    dense = shifted.toarray()
    np.testing.assert_allclose(np.diag(dense).real, [2, 3, 4, 5])
    zero = shifted - shifted
    assert abs(zero.toarray()).max() == 0.0
    sq = compose(n_op, n_op).toarray()
    np.testing.assert_allclose(np.diag(sq).real, [0, 1, 4, 9])


def test_operators_on_wrong_space_rejected():
    sa = make_space(1, (4,))
    sb = make_space(1, (5,))
    with pytest.raises(ValueError):
        annihilation_op(sa, 0) @ annihilation_op(sb, 0)
    with pytest.raises(ValueError):
        annihilation_op(sa, 1)


# ---------------------------------------------------------------------------
# partial transpose / partial trace


def test_transpose_mode_is_involution_bit_exact():
    rng = np.random.default_rng(7)
    space = make_space(2, (3, 4))
    m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    for mode in range(2):
        twice = transpose_mode_matrix(transpose_mode_matrix(m, space, mode), space, mode)
        assert (twice == m).all()


def test_transpose_both_modes_is_full_transpose():
    rng = np.random.default_rng(8)
    space = make_space(2, (3, 3))
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    both = transpose_mode_matrix(transpose_mode_matrix(m, space, 0), space, 1)
    assert (both == m.T).all()


def test_partial_transpose_of_product_state():
    # (rho_a ⊗ rho_b)^{T_b} = rho_a ⊗ rho_b^T, so product states stay positive.
    space = make_space(2, (3, 3))
    rng = np.random.default_rng(9)
    v0 = rng.normal(size=3) + 1j * rng.normal(size=3)
    v1 = rng.normal(size=3) + 1j * rng.normal(size=3)
    amps = np.kron(v0, v1)
    psi = StateVector.normalized(space, amps)
    pt = partial_transpose(density_from_pure(psi), 1)
    eigs = np.linalg.eigvalsh(pt)
    assert eigs.min() > -1e-12


def test_partial_transpose_op_matches_matrix_path():
    space = make_space(2, (3, 3))
    op = compose(creation_op(space, 0), annihilation_op(space, 1))
    direct = partial_transpose_op(op, 1).toarray()
    via_matrix = transpose_mode_matrix(op.toarray(), space, 1)
    assert abs(direct - via_matrix).max() == 0.0


def test_partial_trace_of_product():
    space = make_space(2, (3, 3))
    diag_a = np.diag([0.2, 0.3, 0.5]).astype(complex)
    diag_b = np.diag([0.9, 0.1, 0.0]).astype(complex)
    rho = DensityOperator(space, np.kron(diag_a, diag_b))
    np.testing.assert_allclose(partial_trace(rho, [0]).matrix, diag_a, atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho, [1]).matrix, diag_b, atol=1e-14)


def test_partial_trace_of_entangled_state_is_mixed():
    space = make_space(2, (2, 2))
    amps = np.zeros(4, dtype=complex)
    amps[space.basis_index((0, 1))] = 1 / math.sqrt(2)
    amps[space.basis_index((1, 0))] = 1 / math.sqrt(2)
    rho = density_from_pure(StateVector(space, amps))
    reduced = partial_trace(rho, [0])
    np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-14)
    assert abs(purity(reduced) - 0.5) < 1e-14


def test_partial_trace_keeps_order_in_three_modes():
    space = make_space(3, (2, 2, 2))
    psi = basis_state(space, (1, 0, 1))
    rho = density_from_pure(psi)
    kept = partial_trace(rho, [0, 2])
    pair = make_space(2, (2, 2))
    expected = np.zeros((4, 4), dtype=complex)
    expected[pair.basis_index((1, 1)), pair.basis_index((1, 1))] = 1.0
    np.testing.assert_allclose(kept.matrix, expected, atol=1e-14)
