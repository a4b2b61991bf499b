"""Tests for the two-qubit CHSH closed forms."""
from __future__ import annotations

import numpy as np
import pytest

from qmaxent import bell, linalg


def test_chsh_operator_definitions():
    b_op, x_op, z_op = bell.chsh_operators()
    xx = linalg.tensor_product(linalg.pauli("X"), linalg.pauli("X"))
    zz = linalg.tensor_product(linalg.pauli("Z"), linalg.pauli("Z"))
    assert np.allclose(x_op, xx)
    assert np.allclose(z_op, zz)
    assert np.allclose(b_op, 0.5 * (xx + zz))
    # all three commute (they share the Bell eigenbasis)
    assert np.max(np.abs(b_op @ x_op - x_op @ b_op)) < 1e-15
    assert np.max(np.abs(x_op @ z_op - z_op @ x_op)) < 1e-15


def test_operator_eigenvalues_in_bell_order():
    b_op, x_op, z_op = bell.chsh_operators()
    basis = linalg.bell_basis()
    for v, eb, ex, ez in zip(basis, (1, 0, 0, -1), (1, -1, 1, -1), (1, 1, -1, -1)):
        assert np.allclose(b_op @ v, eb * v)
        assert np.allclose(x_op @ v, ex * v)
        assert np.allclose(z_op @ v, ez * v)


def test_state_validation():
    with pytest.raises(ValueError):
        bell.BellDiagonalState((0.5, 0.5))  # wrong length
    with pytest.raises(ValueError):
        bell.BellDiagonalState((0.5, 0.5, 0.25, 0.25))  # sum 1.5
    with pytest.raises(ValueError):
        bell.BellDiagonalState((1.1, -0.1, 0.0, 0.0))  # genuinely negative
    # a sub-float-noise negative is clamped to exactly zero
    state = bell.BellDiagonalState((1.0 + 1e-13, -1e-13, 0.0, 0.0))
    assert state.weights[1] == 0.0


def test_jaynes_b_dyadic_anchor():
    # at b = 0.75 every weight is an exact dyadic rational
    assert bell.jaynes_b(0.75).weights == (0.765625, 0.109375, 0.109375, 0.015625)


def test_jaynes_bx_anchor():
    weights = bell.jaynes_bx(0.75, 0.9).weights
    for got, want in zip(weights, (0.76, 0.04, 0.19, 0.01)):
        assert abs(got - want) < 1e-12


def test_jaynes_bx_reproduces_its_targets():
    b_op, x_op, z_op = bell.chsh_operators()
    rng = np.random.default_rng(21)
    for _ in range(50):
        b = rng.uniform(-1.0, 1.0)
        x = rng.uniform(max(-1.0, 2 * b - 1), min(1.0, 2 * b + 1))
        rho = bell.to_density_matrix(bell.jaynes_bx(b, x))
        assert abs(linalg.expectation(rho, b_op) - b) < 1e-12
        assert abs(linalg.expectation(rho, x_op) - x) < 1e-12
        assert abs(linalg.expectation(rho, z_op) - (2 * b - x)) < 1e-12


def test_jaynes_b_is_the_diagonal_slice():
    # jaynes_bx at x = b must agree with jaynes_b bit for bit
    rng = np.random.default_rng(22)
    for _ in range(100):
        b = rng.uniform(-1.0, 1.0)
        assert bell.jaynes_bx(b, b).weights == bell.jaynes_b(b).weights


def test_weights_normalized_and_admissible():
    rng = np.random.default_rng(23)
    for _ in range(100):
        b = rng.uniform(-1.0, 1.0)
        x = rng.uniform(max(-1.0, 2 * b - 1), min(1.0, 2 * b + 1))
        weights = bell.jaynes_bx(b, x).weights
        assert abs(sum(weights) - 1.0) < 1e-12
        assert min(weights) >= 0.0


def test_admissibility():
    assert bell.admissible(0.5, 0.0)  # boundary x = 2b - 1
    assert bell.admissible(0.5, 1.0)
    assert bell.admissible(0.75, 0.5)
    assert not bell.admissible(0.75, 0.49)  # below 2b - 1
    assert not bell.admissible(-0.2, 0.7)  # above 2b + 1
    assert not bell.admissible(1.2, 0.9)  # |b| > 1
    assert not bell.admissible(0.5, 1.1)  # |x| > 1


def test_inadmissible_pair_is_named():
    with pytest.raises(ValueError, match="x >= 2b - 1"):
        bell.jaynes_bx(0.75, 0.4)
    with pytest.raises(ValueError, match="x <= 2b \\+ 1"):
        bell.jaynes_bx(-0.5, 0.5)
    with pytest.raises(ValueError, match="\\|b\\| <= 1"):
        bell.jaynes_bx(1.5, 1.0)


def test_largest_eigenvalue_formulas():
    assert bell.largest_eigenvalue_j1(0.5) == 0.5625
    rng = np.random.default_rng(24)
    for _ in range(50):
        b = rng.uniform(0.5, 1.0)
        x = rng.uniform(2 * b - 1, 1.0)
        f1 = bell.largest_eigenvalue_j1(b)
        f2 = bell.largest_eigenvalue_j2(b, x)
        assert abs(f1 - max(bell.jaynes_b(b).weights)) < 1e-12
        assert abs(f2 - max(bell.jaynes_bx(b, x).weights)) < 1e-12
        assert f2 <= f1 + 1e-15


def test_eigenvalue_formulas_require_the_b_regime():
    # the formulas only identify the largest weight for b >= 1/2
    with pytest.raises(ValueError):
        bell.largest_eigenvalue_j1(0.4)
    with pytest.raises(ValueError):
        bell.largest_eigenvalue_j2(0.4, 0.5)


def test_variance_and_min_variance_state():
    assert bell.variance_x(1.0) == 0.0
    assert bell.variance_x(0.0) == 1.0
    assert abs(bell.variance_x(0.9) - 0.19) < 1e-15
    state = bell.min_variance_state(0.75)
    assert max(abs(w - e) for w, e in zip(state.weights, (0.75, 0.0, 0.25, 0.0))) < 1e-12
    assert bell.min_variance_state(0.5).weights == bell.jaynes_bx(0.5, 1.0).weights
    with pytest.raises(ValueError):
        bell.min_variance_state(1.1)
    with pytest.raises(ValueError):
        bell.min_variance_state(-0.1)


def test_density_matrix_roundtrip():
    rng = np.random.default_rng(25)
    for _ in range(20):
        weights = tuple(rng.dirichlet(np.ones(4)))
        rho = bell.to_density_matrix(bell.BellDiagonalState(weights))
        assert linalg.check_density_matrix(rho) is not None
        back = bell.bell_weights(rho)
        assert max(abs(a - b) for a, b in zip(back, weights)) < 1e-14
        assert bell.bell_offdiagonal_defect(rho) < 1e-14


def test_offdiagonal_defect_detects_non_bell_states():
    # |up up><up up| is diagonal in the computational basis but not Bell-diagonal
    rho = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    assert bell.bell_offdiagonal_defect(rho) > 0.4
