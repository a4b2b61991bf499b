"""Dense Hermitian linear algebra for small Hilbert spaces.

States and observables are plain complex numpy arrays; validation helpers
enforce the structural invariants (Hermiticity, unit trace, positivity) at
the API boundaries where they matter.  Everything here is exact dense
arithmetic — no sparsity, no arbitrary precision — sized for dimensions
where a full eigendecomposition is cheap.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

# Tolerance ladder, one decade apart so failure layers stay distinguishable:
# structural checks on constructed objects, then numerical pipelines,
# then round-trips through exponentials (1e-9, asserted in tests).
STRUCTURAL_TOL = 1e-12
NUMERICAL_TOL = 1e-10

_PAULI = {
    "I": np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def pauli(axis: str) -> np.ndarray:
    """Return the 2x2 Pauli matrix for ``axis`` in {"I", "X", "Y", "Z"}.

    Basis convention: |0> (spin up) is the +1 eigenvector of sigma_z.
    """
    try:
        return _PAULI[axis.upper()].copy()
    except (KeyError, AttributeError):
        raise ValueError(
            f"unknown Pauli axis {axis!r}; expected one of I, X, Y, Z"
        ) from None


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor on the slow index (party 1)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def bell_basis() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four Bell vectors in the fixed library order (Phi+, Phi-, Psi+, Psi-).

    Computational basis order is (up-up, up-down, down-up, down-down) with
    party 1 on the slow index.  This ordering is a library-wide contract:
    every Bell-diagonal weight vector is interpreted against it.
    """
    s = math.sqrt(0.5)
    phi_plus = np.array([s, 0.0, 0.0, s], dtype=complex)
    phi_minus = np.array([s, 0.0, 0.0, -s], dtype=complex)
    psi_plus = np.array([0.0, s, s, 0.0], dtype=complex)
    psi_minus = np.array([0.0, s, -s, 0.0], dtype=complex)
    return phi_plus, phi_minus, psi_plus, psi_minus


def projector(v: np.ndarray) -> np.ndarray:
    """Rank-one projector |v><v| for a (normalized) state vector."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation of ``m`` from its conjugate transpose."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(
    m: np.ndarray, tol: float = STRUCTURAL_TOL, name: str = "matrix"
) -> np.ndarray:
    """Validate squareness and Hermiticity; return the matrix as complex."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if not defect <= tol:
        raise ValueError(
            f"{name} is not Hermitian (deviation {defect:.3e} exceeds {tol:.0e})"
        )
    return m


def check_density_matrix(rho: np.ndarray, name: str = "state") -> np.ndarray:
    """Validate the density-matrix invariants: Hermitian, unit trace, PSD.

    Trace must sit within 1e-10 of one and the smallest (raw, unclamped)
    eigenvalue must not fall below -1e-10.
    """
    rho = check_hermitian(rho, name=name)
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > NUMERICAL_TOL:
        raise ValueError(f"{name} has trace {trace!r}, expected 1")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < -NUMERICAL_TOL:
        raise ValueError(f"{name} has negative eigenvalue {smallest:.3e}")
    return rho


class SpectralDecomposition(NamedTuple):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary; column k pairs with eigenvalues[k]


def eig_hermitian(h: np.ndarray) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Rejects input whose Hermiticity deviation exceeds 1e-12; eigenvalues
    come back real and ascending with orthonormal eigenvector columns.
    """
    h = check_hermitian(h)
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    return SpectralDecomposition(eigenvalues, eigenvectors)


def matrix_function(h: np.ndarray, f: Callable[[float], float]) -> np.ndarray:
    """Apply the scalar function ``f`` to ``h`` through its spectrum.

    ``f`` must be defined and finite on every eigenvalue; otherwise a
    ValueError describes the offending eigenvalue.
    """
    eigenvalues, vectors = eig_hermitian(h)
    values = np.empty_like(eigenvalues)
    for i, ev in enumerate(eigenvalues):
        try:
            values[i] = float(f(ev))
        except (ValueError, OverflowError, ZeroDivisionError) as exc:
            raise ValueError(
                f"scalar function failed on eigenvalue {ev!r}: {exc}"
            ) from exc
        if not math.isfinite(values[i]):
            raise ValueError(f"scalar function not finite on eigenvalue {ev!r}")
    out = (vectors * values) @ vectors.conj().T
    return 0.5 * (out + out.conj().T)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -sum_i e_i ln e_i in nats, with the convention 0 ln 0 = 0.

    Eigenvalues are clamped to [0, 1] before the logarithm so that
    1e-10-scale numerical negatives cannot poison the result; the raw
    values are still what the positivity check sees.
    """
    rho = check_density_matrix(rho)
    eigenvalues = np.clip(np.linalg.eigvalsh(rho), 0.0, 1.0)
    positive = eigenvalues[eigenvalues > 0.0]
    # adding +0.0 turns a negative zero (pure states) into plain zero
    return float(-np.sum(positive * np.log(positive))) + 0.0


def expectation(rho: np.ndarray, obs: np.ndarray) -> float:
    """Tr(rho . obs) as a real number.

    The imaginary part of the trace must be below 1e-10 (it is zero for a
    valid state/observable pair) and is discarded.
    """
    rho = np.asarray(rho, dtype=complex)
    obs = np.asarray(obs, dtype=complex)
    if rho.shape != obs.shape:
        raise ValueError(
            f"dimension mismatch: state {rho.shape} vs observable {obs.shape}"
        )
    value = complex(np.trace(rho @ obs))
    if abs(value.imag) >= NUMERICAL_TOL:
        raise ValueError(
            f"expectation has imaginary part {value.imag:.3e}; "
            "inputs are not a valid state/observable pair"
        )
    return value.real


def partial_transpose(rho: np.ndarray, party: int = 2) -> np.ndarray:
    """Transpose one party's indices of a two-qubit (4x4) matrix.

    Party 1 sits on the slow Kronecker index.  The result of transposing a
    Hermitian input is Hermitian with the same trace but need not be PSD —
    that sign structure is exactly what the separability test reads.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"partial transpose needs a 4x4 matrix, got {rho.shape}")
    if party not in (1, 2):
        raise ValueError(f"party must be 1 or 2, got {party!r}")
    blocks = rho.reshape(2, 2, 2, 2)  # indices (i1, i2, j1, j2)
    axes = (2, 1, 0, 3) if party == 1 else (0, 3, 2, 1)
    return blocks.transpose(axes).reshape(4, 4).copy()


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) sum |eigenvalues of (a - b)| for Hermitian a, b of equal dims."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    diff = check_hermitian(a - b, tol=NUMERICAL_TOL, name="difference")
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))
