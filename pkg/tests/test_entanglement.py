"""Tests for the entanglement measures."""
from __future__ import annotations

import math

import numpy as np
import pytest

from qmaxent import bell, entanglement, linalg

LN2 = math.log(2.0)


def random_two_qubit_density(rng):
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def test_binary_entropy_anchors():
    assert entanglement.binary_entropy(0.0) == 0.0
    assert entanglement.binary_entropy(1.0) == 0.0
    assert abs(entanglement.binary_entropy(0.5) - LN2) < 1e-15
    assert abs(entanglement.binary_entropy(0.765625) - 0.5445089017353929) < 1e-12


def test_binary_entropy_symmetry_and_domain():
    rng = np.random.default_rng(31)
    for _ in range(50):
        p = rng.uniform(0.0, 1.0)
        gap = abs(entanglement.binary_entropy(p) - entanglement.binary_entropy(1.0 - p))
        assert gap < 1e-14
    with pytest.raises(ValueError):
        entanglement.binary_entropy(-0.01)
    with pytest.raises(ValueError):
        entanglement.binary_entropy(1.01)
    # float-noise overshoot is clamped, not rejected
    assert entanglement.binary_entropy(1.0 + 1e-13) == 0.0


def test_eof_bell_diagonal():
    # zero on and below the separability threshold
    assert entanglement.eof_bell_diagonal(0.3) == 0.0
    assert entanglement.eof_bell_diagonal(0.5) == 0.0
    assert abs(entanglement.eof_bell_diagonal(1.0) - LN2) < 1e-15
    assert abs(entanglement.eof_bell_diagonal(0.765625) - 0.2698688190900472) < 1e-12
    assert abs(entanglement.eof_bell_diagonal(0.76) - 0.26111945880747158) < 1e-12
    with pytest.raises(ValueError):
        entanglement.eof_bell_diagonal(0.2)
    with pytest.raises(ValueError):
        entanglement.eof_bell_diagonal(1.1)


def test_ree_bell_diagonal():
    assert entanglement.ree_bell_diagonal(0.4) == 0.0
    assert entanglement.ree_bell_diagonal(0.5) == 0.0
    assert abs(entanglement.ree_bell_diagonal(1.0) - LN2) < 1e-15
    assert abs(entanglement.ree_bell_diagonal(0.765625) - 0.14863827882455244) < 1e-12
    assert abs(entanglement.ree_bell_diagonal(0.76) - 0.14206725247297251) < 1e-12
    assert abs(entanglement.ree_bell_diagonal(0.5625) - 0.007832973283487046) < 1e-12


def test_both_measures_increase_in_f():
    rng = np.random.default_rng(32)
    for _ in range(50):
        lo = rng.uniform(0.5, 0.99)
        hi = rng.uniform(lo + 1e-6, 1.0)
        assert entanglement.eof_bell_diagonal(hi) > entanglement.eof_bell_diagonal(lo)
        assert entanglement.ree_bell_diagonal(hi) > entanglement.ree_bell_diagonal(lo)


def test_eof_from_concurrence():
    assert entanglement.eof_from_concurrence(0.0) == 0.0
    assert abs(entanglement.eof_from_concurrence(1.0) - LN2) < 1e-15
    # consistency with the Bell-diagonal form through c = 2f - 1
    rng = np.random.default_rng(33)
    for _ in range(50):
        f = rng.uniform(0.5, 1.0)
        via_f = entanglement.eof_bell_diagonal(f)
        via_c = entanglement.eof_from_concurrence(2.0 * f - 1.0)
        assert abs(via_f - via_c) < 1e-12


def test_concurrence_anchors():
    s = math.sqrt(0.5)
    phi_plus = linalg.projector(np.array([s, 0, 0, s]))
    assert abs(entanglement.concurrence(phi_plus) - 1.0) < 1e-10
    product = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    assert entanglement.concurrence(product) < 1e-10
    mixed = np.eye(4, dtype=complex) / 4
    assert entanglement.concurrence(mixed) == 0.0
    rho = bell.to_density_matrix(bell.jaynes_b(0.75))
    assert abs(entanglement.concurrence(rho) - 0.53125) < 1e-10


def test_concurrence_of_bell_diagonal_states():
    # for Bell-diagonal states the concurrence is max(0, 2 f - 1)
    rng = np.random.default_rng(34)
    for _ in range(100):
        weights = tuple(rng.dirichlet(np.ones(4)))
        rho = bell.to_density_matrix(bell.BellDiagonalState(weights))
        expected = max(0.0, 2.0 * max(weights) - 1.0)
        assert abs(entanglement.concurrence(rho) - expected) < 1e-9


def test_ppt_threshold():
    separable = bell.to_density_matrix(bell.BellDiagonalState((0.5, 0.5, 0.0, 0.0)))
    assert entanglement.is_ppt_separable(separable)
    entangled = bell.to_density_matrix(
        bell.BellDiagonalState((0.502, 0.498, 0.0, 0.0))
    )
    assert not entanglement.is_ppt_separable(entangled)
    assert entanglement.is_ppt_separable(np.eye(4, dtype=complex) / 4)


def test_report_on_bell_diagonal_state():
    rho = bell.to_density_matrix(bell.jaynes_b(0.75))
    outcome = entanglement.report(rho)
    assert outcome.f is not None and abs(outcome.f - 0.765625) < 1e-12
    assert abs(outcome.e1 - entanglement.eof_bell_diagonal(0.765625)) < 1e-12
    assert outcome.e2 is not None
    assert abs(outcome.e2 - entanglement.ree_bell_diagonal(0.765625)) < 1e-12
    assert abs(outcome.concurrence - 0.53125) < 1e-10
    assert not outcome.ppt_separable


def test_report_on_general_state():
    # rotate a Bell-diagonal state by local unitaries: concurrence and e1
    # survive, but the Bell-diagonal shortcut no longer applies
    rng = np.random.default_rng(35)
    rho = bell.to_density_matrix(bell.jaynes_b(0.75))
    u1 = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))[0]
    u2 = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))[0]
    u = linalg.tensor_product(u1, u2)
    rotated = u @ rho @ u.conj().T
    outcome = entanglement.report(rotated)
    assert outcome.f is None
    assert outcome.e2 is None
    assert abs(outcome.concurrence - 0.53125) < 1e-9
    assert abs(outcome.e1 - entanglement.eof_bell_diagonal(0.765625)) < 1e-9
    assert not outcome.ppt_separable


def test_two_qubit_inputs_enforced():
    with pytest.raises(ValueError):
        entanglement.concurrence(np.eye(3, dtype=complex) / 3)
    with pytest.raises(ValueError):
        entanglement.report(np.eye(2, dtype=complex))  # trace 2, not a state
