"""Closed forms for the two-qubit CHSH example.

The commuting operator triple (B, X, Z), the maximum-entropy states inferred
from <B> alone and from the pair (<B>, <X>), their largest eigenvalues, the
admissible parameter region, the variance of X, and the minimum-variance
member of the two-constraint family.  All states here are Bell-diagonal and
carried as four probability weights over the ordered Bell basis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

BELL_LABELS = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")

# Tiny negatives produced by float cancellation at the admissible-region
# boundary are tolerated and clamped to exactly zero.
WEIGHT_FLOOR = -1e-12
_SLACK = 1e-12


@dataclass(frozen=True)
class BellDiagonalState:
    """Probability weights over the ordered Bell basis (Phi+, Phi-, Psi+, Psi-)."""

    weights: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        ws = tuple(float(w) for w in self.weights)
        if len(ws) != 4:
            raise ValueError(f"need exactly four weights, got {len(ws)}")
        if min(ws) < WEIGHT_FLOOR:
            raise ValueError(f"negative weight {min(ws)!r} in {ws}")
        total = sum(ws)
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "weights", tuple(max(w, 0.0) for w in ws))


def chsh_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The commuting triple (B, X, Z).

    X = sigma_x (x) sigma_x and Z = sigma_z (x) sigma_z with party 1 on the
    slow index; B = (X + Z)/2, so that 2*sqrt(2)*B is the familiar CHSH
    combination sqrt(2)*(X + Z).  All three are diagonal in the Bell basis
    with eigenvalue quadruples X -> (1, -1, 1, -1), Z -> (1, 1, -1, -1),
    B -> (1, 0, 0, -1) in the library's Bell order.
    """
    sx = linalg.pauli("X")
    sz = linalg.pauli("Z")
    x = linalg.tensor_product(sx, sx)
    z = linalg.tensor_product(sz, sz)
    return (x + z) / 2.0, x, z


def admissible(b: float, x: float) -> bool:
    """Whether a physical state with <B> = b and <X> = x exists.

    Requires |b| <= 1, |x| <= 1 and 2b - 1 <= x <= 2b + 1 (the latter pair
    is <Z> = 2b - x lying in [-1, 1]); exactly the condition for all four
    closed-form weights to be nonnegative.  Comparisons carry 1e-12 slack.
    """
    return (
        abs(b) <= 1.0 + _SLACK
        and abs(x) <= 1.0 + _SLACK
        and x >= 2.0 * b - 1.0 - _SLACK
        and x <= 2.0 * b + 1.0 + _SLACK
    )


def _check_admissible(b: float, x: float) -> None:
    """Raise a domain error naming the first violated admissibility inequality."""
    if abs(b) > 1.0 + _SLACK:
        raise ValueError(f"|b| <= 1 violated: b = {b!r}")
    if abs(x) > 1.0 + _SLACK:
        raise ValueError(f"|x| <= 1 violated: x = {x!r}")
    if x < 2.0 * b - 1.0 - _SLACK:
        raise ValueError(f"x >= 2b - 1 violated: x = {x!r}, 2b - 1 = {2.0 * b - 1.0!r}")
    if x > 2.0 * b + 1.0 + _SLACK:
        raise ValueError(f"x <= 2b + 1 violated: x = {x!r}, 2b + 1 = {2.0 * b + 1.0!r}")


def _weights_bx(b: float, x: float) -> tuple[float, float, float, float]:
    # Factored forms: each is a product of two factors that are nonnegative
    # on the admissible region, so no cancellation can flip a sign.
    return (
        (1.0 + x) * (1.0 - x + 2.0 * b) / 4.0,
        (1.0 - x) * (1.0 - x + 2.0 * b) / 4.0,
        (1.0 + x) * (1.0 + x - 2.0 * b) / 4.0,
        (1.0 - x) * (1.0 + x - 2.0 * b) / 4.0,
    )


def jaynes_b(b: float) -> BellDiagonalState:
    """Maximum-entropy state with only <B> = b fixed.

    Weights in Bell order: ((1+b)/2)^2, (1-b^2)/4, (1-b^2)/4, ((1-b)/2)^2.
    Evaluated through the same factored path as jaynes_bx at x = b, which
    the weights equal identically.
    """
    if abs(b) > 1.0 + _SLACK:
        raise ValueError(f"|b| <= 1 violated: b = {b!r}")
    return BellDiagonalState(_weights_bx(b, b))


def jaynes_bx(b: float, x: float) -> BellDiagonalState:
    """Maximum-entropy state with <B> = b and <X> = x fixed.

    Weights in Bell order (Phi+, Phi-, Psi+, Psi-):
        (1+x)(1-x+2b)/4, (1-x)(1-x+2b)/4, (1+x)(1+x-2b)/4, (1-x)(1+x-2b)/4.
    Inadmissible (b, x) raises a ValueError naming the violated inequality;
    a clamped state would not satisfy the stated constraints, so nothing is
    silently repaired.
    """
    _check_admissible(b, x)
    return BellDiagonalState(_weights_bx(b, x))


def _check_regime(b: float) -> None:
    if not 0.5 - _SLACK <= b <= 1.0 + _SLACK:
        raise ValueError(
            f"closed-form largest eigenvalue needs b >= 1/2 "
            f"(Phi+ weight dominance), got b = {b!r}"
        )


def largest_eigenvalue_j1(b: float) -> float:
    """f = ((1+b)/2)^2, the largest weight of jaynes_b(b), valid for b >= 1/2.

    Below b = 1/2 the Phi+ weight need not dominate and the closed form is
    rejected; general eigenvalue extraction goes through eig_hermitian.
    """
    _check_regime(b)
    return ((1.0 + b) / 2.0) ** 2


def largest_eigenvalue_j2(b: float, x: float) -> float:
    """f = ((1+b)/2)^2 - ((x-b)/2)^2, the largest weight of jaynes_bx(b, x).

    Valid for b >= 1/2 and admissible (b, x); equals the Phi+ weight.
    """
    _check_regime(b)
    _check_admissible(b, x)
    return ((1.0 + b) / 2.0) ** 2 - ((x - b) / 2.0) ** 2


def variance_x(x: float) -> float:
    """Var(X) = <X^2> - <X>^2 = 1 - x^2, using X^2 = I."""
    if abs(x) > 1.0 + _SLACK:
        raise ValueError(f"|x| <= 1 violated: x = {x!r}")
    return 1.0 - x * x


def min_variance_state(b: float) -> BellDiagonalState:
    """The x = 1 member of the jaynes_bx family: weights (b, 0, 1-b, 0).

    x = 1 is the unique variance minimizer over the admissible x interval,
    and requires 0 <= b <= 1 to be admissible at all.
    """
    if not -_SLACK <= b <= 1.0 + _SLACK:
        raise ValueError(f"min_variance_state needs b in [0, 1], got {b!r}")
    return jaynes_bx(b, 1.0)


def to_density_matrix(state: BellDiagonalState) -> np.ndarray:
    """Sum of weight-scaled Bell projectors, as a 4x4 computational-basis matrix."""
    rho = np.zeros((4, 4), dtype=complex)
    for weight, vector in zip(state.weights, linalg.bell_basis()):
        rho += weight * linalg.projector(vector)
    return rho


def bell_weights(rho: np.ndarray) -> tuple[float, float, float, float]:
    """Diagonal of a 4x4 matrix in the ordered Bell basis."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"need a 4x4 matrix, got {rho.shape}")
    return tuple(
        float(np.real(v.conj() @ rho @ v)) for v in linalg.bell_basis()
    )


def bell_offdiagonal_defect(rho: np.ndarray) -> float:
    """Largest |off-diagonal| entry of ``rho`` expressed in the Bell basis.

    Zero (up to float noise) exactly when the state is Bell-diagonal.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"need a 4x4 matrix, got {rho.shape}")
    frame = np.column_stack(linalg.bell_basis())
    in_bell = frame.conj().T @ rho @ frame
    off = in_bell - np.diag(np.diag(in_bell))
    return float(np.max(np.abs(off)))
