"""Two-qubit entanglement measures and separability tests.

Closed forms for Bell-diagonal states (entanglement of formation and
relative entropy of entanglement as functions of the largest weight f),
the Wootters concurrence for arbitrary two-qubit states, and the
Peres-Horodecki positive-partial-transpose criterion, which is necessary
and sufficient at 2x2.  All entropies are in nats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bell, linalg

# Off-diagonal magnitude (in the Bell basis) below which a state counts as
# Bell-diagonal for reporting purposes.
BELL_DIAGONAL_TOL = 1e-10
# Smallest partial-transpose eigenvalue still counted as nonnegative.
PPT_TOL = 1e-10
_DOMAIN_SLACK = 1e-12

LN2 = math.log(2.0)


def binary_entropy(p: float) -> float:
    """h(p) = -p ln p - (1-p) ln(1-p) with 0 ln 0 = 0, in nats."""
    p = float(p)
    if not -_DOMAIN_SLACK <= p <= 1.0 + _DOMAIN_SLACK:
        raise ValueError(f"binary_entropy needs p in [0, 1], got {p!r}")
    p = min(max(p, 0.0), 1.0)
    if p == 0.0 or p == 1.0:
        return 0.0
    q = 1.0 - p
    return -p * math.log(p) - q * math.log(q)


def eof_bell_diagonal(f: float) -> float:
    """Entanglement of formation of a Bell-diagonal state with largest weight f.

    h(1/2 + sqrt(f(1-f))) for f > 1/2, exactly 0 at or below the
    separability threshold f = 1/2.  Valid for f in [1/4, 1] (the largest
    of four weights is at least 1/4).
    """
    f = _check_f(f)
    if f <= 0.5:
        return 0.0
    return binary_entropy(0.5 + math.sqrt(f * (1.0 - f)))


def ree_bell_diagonal(f: float) -> float:
    """Relative entropy of entanglement of a Bell-diagonal state.

    ln 2 - h(f) for f > 1/2, exactly 0 at or below f = 1/2.  Valid for
    f in [1/4, 1].
    """
    f = _check_f(f)
    if f <= 0.5:
        return 0.0
    return LN2 - binary_entropy(f)


def _check_f(f: float) -> float:
    f = float(f)
    if not 0.25 - _DOMAIN_SLACK <= f <= 1.0 + _DOMAIN_SLACK:
        raise ValueError(f"largest Bell weight must lie in [1/4, 1], got {f!r}")
    return min(max(f, 0.25), 1.0)


def eof_from_concurrence(c: float) -> float:
    """Wootters' two-qubit formula: E = h((1 + sqrt(1 - C^2)) / 2)."""
    c = float(c)
    if not -_DOMAIN_SLACK <= c <= 1.0 + _DOMAIN_SLACK:
        raise ValueError(f"concurrence must lie in [0, 1], got {c!r}")
    c = min(max(c, 0.0), 1.0)
    if c == 0.0:
        return 0.0
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def _check_two_qubit(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"need a 4x4 two-qubit state, got shape {rho.shape}")
    return linalg.check_density_matrix(rho)


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    eigenvalues, vectors = np.linalg.eigh(rho)
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return (vectors * roots) @ vectors.conj().T


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence C = max(0, mu1 - mu2 - mu3 - mu4).

    The mu_i are the descending square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), computed here through the equivalent
    Hermitian form sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho) so the
    whole pipeline stays on the Hermitian eigensolver.  Conjugation is in
    the computational basis.  Negative numerical eigenvalues are clamped
    to zero before the square roots.
    """
    rho = _check_two_qubit(rho)
    flip = linalg.tensor_product(linalg.pauli("Y"), linalg.pauli("Y"))
    tilde = flip @ rho.conj() @ flip
    root = _psd_sqrt(rho)
    core = root @ tilde @ root
    core = 0.5 * (core + core.conj().T)
    mu = np.sqrt(np.clip(np.linalg.eigvalsh(core), 0.0, None))[::-1]
    return max(0.0, float(mu[0] - mu[1] - mu[2] - mu[3]))


def is_ppt_separable(rho: np.ndarray) -> bool:
    """Peres-Horodecki test: separable iff the partial transpose stays PSD.

    True when the smallest eigenvalue of the party-2 partial transpose is
    >= -1e-10.  Necessary and sufficient for two qubits.
    """
    rho = _check_two_qubit(rho)
    pt = linalg.partial_transpose(rho, 2)
    return float(np.linalg.eigvalsh(pt)[0]) >= -PPT_TOL


@dataclass(frozen=True)
class EntanglementReport:
    """Measures for one two-qubit state.

    ``f`` and ``e2`` are populated only for Bell-diagonal states (within
    1e-10 off-diagonal tolerance), where the closed forms apply; otherwise
    they are None and ``e1`` comes from the concurrence route.  e1 vanishes
    exactly when the concurrence does.
    """

    concurrence: float
    e1: float
    ppt_separable: bool
    f: float | None = None
    e2: float | None = None


def report(rho: np.ndarray) -> EntanglementReport:
    """Full entanglement report for a two-qubit density matrix."""
    rho = _check_two_qubit(rho)
    c = concurrence(rho)
    ppt = is_ppt_separable(rho)
    if bell.bell_offdiagonal_defect(rho) < BELL_DIAGONAL_TOL:
        f = min(max(max(bell.bell_weights(rho)), 0.25), 1.0)
        return EntanglementReport(
            concurrence=c,
            e1=eof_bell_diagonal(f),
            ppt_separable=ppt,
            f=f,
            e2=ree_bell_diagonal(f),
        )
    return EntanglementReport(
        concurrence=c, e1=eof_from_concurrence(c), ppt_separable=ppt
    )
