import numpy as np
import pytest

from drivenjc.operators import (build_operators, build_space, density_matrix,
                                expectation, trace_distance)


def test_space_dimensions():
    assert build_space(1).dim == 4
    assert build_space(14).dim == 30


def test_space_rejects_bad_n_max():
    with pytest.raises(ValueError):
        build_space(0)
    with pytest.raises(ValueError):
        build_space(-3)


def test_ladder_entries_n_max_1():
    ops = build_operators(build_space(1))
    a = ops.a.matrix
    # basis index 2n + s: <0,g|a|1,g> and <0,e|a|1,e> are the only entries
    expected = np.zeros((4, 4))
    expected[0, 2] = 1.0
    expected[1, 3] = 1.0
    assert np.array_equal(a, expected.astype(complex))


def test_ladder_action_general():
    n_max = 5
    ops = build_operators(build_space(n_max))
    a = ops.a.matrix
    for n in range(1, n_max + 1):
        for s in (0, 1):
            ket = np.zeros(ops.space.dim)
            ket[2 * n + s] = 1.0
            out = a @ ket
            expect = np.zeros(ops.space.dim)
            expect[2 * (n - 1) + s] = np.sqrt(n)
            assert np.allclose(out, expect, atol=1e-15)


def test_truncated_commutator_identity():
    n_max = 4
    ops = build_operators(build_space(n_max))
    a = ops.a.matrix
    comm = a @ a.conj().T - a.conj().T @ a
    defect = np.zeros((n_max + 1, n_max + 1))
    defect[n_max, n_max] = 1.0
    expected = np.eye(ops.space.dim) - (n_max + 1) * np.kron(defect, np.eye(2))
    assert np.abs(comm - expected).max() < 1e-13
    # below the truncation block the commutator is 1 up to sqrt rounding
    for n in range(n_max):
        for s in (0, 1):
            i = 2 * n + s
            assert comm[i, i] == pytest.approx(1.0, abs=1e-15)


def test_two_level_algebra():
    ops = build_operators(build_space(3))
    s = ops.sigma.matrix
    sd = ops.sigma_dag.matrix
    assert np.array_equal(sd @ s + s @ sd, np.eye(ops.space.dim).astype(complex))
    assert np.abs(s @ s).max() == 0.0


def test_number_operators_exact_products():
    ops = build_operators(build_space(6))
    assert np.array_equal(ops.n_phot.matrix, ops.a_dag.matrix @ ops.a.matrix)
    assert np.array_equal(ops.n_mol.matrix, ops.sigma_dag.matrix @ ops.sigma.matrix)
    assert np.array_equal(ops.n_tot.matrix, ops.n_phot.matrix + ops.n_mol.matrix)


def test_entrywise_closed_form_small():
    # every matrix element of a and sigma checked against the definition
    for n_max in (1, 2, 3):
        ops = build_operators(build_space(n_max))
        d = ops.space.dim
        for i in range(d):
            for j in range(d):
                ni, si = divmod(i, 2)
                nj, sj = divmod(j, 2)
                a_ij = np.sqrt(nj) if (ni == nj - 1 and si == sj) else 0.0
                s_ij = 1.0 if (ni == nj and si == 0 and sj == 1) else 0.0
                assert ops.a.matrix[i, j] == a_ij
                assert ops.sigma.matrix[i, j] == s_ij


def test_build_operators_deterministic():
    m1 = build_operators(build_space(9))
    m2 = build_operators(build_space(9))
    assert np.array_equal(m1.a.matrix, m2.a.matrix)
    assert np.array_equal(m1.n_tot.matrix, m2.n_tot.matrix)


def test_matrices_are_read_only():
    ops = build_operators(build_space(2))
    with pytest.raises(ValueError):
        ops.a.matrix[0, 0] = 1.0


def test_expectation_identity_and_fock():
    ops = build_operators(build_space(3))
    d = ops.space.dim
    rng = np.random.default_rng(7)
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = m @ m.conj().T
    rho = density_matrix(m / np.trace(m).real, ops.space)
    ident = ops.n_phot  # reuse space
    eye_val = expectation(
        type(ident)(np.eye(d, dtype=complex), ops.space), rho
    )
    assert eye_val == pytest.approx(1.0, abs=1e-12)

    ket = np.zeros(d)
    ket[2 * 1 + 0] = 1.0  # |1, g>
    fock = density_matrix(np.outer(ket, ket).astype(complex), ops.space)
    assert expectation(ops.n_phot, fock).real == pytest.approx(1.0, abs=1e-14)
    assert abs(expectation(ops.n_phot, rho).imag) < 1e-12


def test_expectation_dimension_mismatch():
    small = build_operators(build_space(1))
    big = build_operators(build_space(2))
    ket = np.zeros(big.space.dim)
    ket[0] = 1.0
    rho = density_matrix(np.outer(ket, ket).astype(complex), big.space)
    with pytest.raises(ValueError):
        expectation(small.a, rho)


def test_density_matrix_validation():
    sp = build_space(1)
    bad = np.eye(4, dtype=complex)  # trace 4
    with pytest.raises(ValueError):
        density_matrix(bad, sp)
    nonherm = np.zeros((4, 4), complex)
    nonherm[0, 0] = 1.0
    nonherm[0, 1] = 1e-3
    with pytest.raises(ValueError):
        density_matrix(nonherm, sp)


def test_trace_distance_basics():
    sp = build_space(1)
    k0 = np.zeros(4); k0[0] = 1.0
    k1 = np.zeros(4); k1[2] = 1.0
    r0 = density_matrix(np.outer(k0, k0).astype(complex), sp)
    r1 = density_matrix(np.outer(k1, k1).astype(complex), sp)
    assert trace_distance(r0, r0) == pytest.approx(0.0, abs=1e-15)
    assert trace_distance(r0, r1) == pytest.approx(1.0, abs=1e-12)
