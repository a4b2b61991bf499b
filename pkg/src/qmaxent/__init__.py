"""Maximum-entropy inference of quantum states under expectation constraints.

Given Hermitian observables and target expectation values, the solver finds
the density matrix of maximal von Neumann entropy reproducing those values
(a Gibbs state over the constraints), via the convex dual problem.  The
bell module carries the closed forms for the two-qubit CHSH case study,
and the entanglement module the measures used to compare the inferred
states.  ``python -m qmaxent`` (or the ``qmaxent`` script) exposes the
verify / sweep / infer commands.
"""
from __future__ import annotations

from .bell import (
    BELL_LABELS,
    BellDiagonalState,
    admissible,
    bell_weights,
    chsh_operators,
    jaynes_b,
    jaynes_bx,
    largest_eigenvalue_j1,
    largest_eigenvalue_j2,
    min_variance_state,
    to_density_matrix,
    variance_x,
)
from .entanglement import (
    EntanglementReport,
    binary_entropy,
    concurrence,
    eof_bell_diagonal,
    eof_from_concurrence,
    is_ppt_separable,
    ree_bell_diagonal,
)
from .linalg import (
    bell_basis,
    eig_hermitian,
    expectation,
    matrix_function,
    partial_transpose,
    pauli,
    projector,
    tensor_product,
    trace_distance,
    von_neumann_entropy,
)
from .solver import (
    BOUNDARY_LIMIT,
    CONVERGED,
    MAX_ITERATIONS,
    ConstraintSet,
    SolverConfig,
    SolverReport,
    dual_gradient,
    dual_objective,
    gibbs_state,
    solve,
    verify_maximality,
)

__version__ = "0.1.0"

__all__ = [
    "BELL_LABELS",
    "BOUNDARY_LIMIT",
    "BellDiagonalState",
    "CONVERGED",
    "ConstraintSet",
    "EntanglementReport",
    "MAX_ITERATIONS",
    "SolverConfig",
    "SolverReport",
    "admissible",
    "bell_basis",
    "bell_weights",
    "binary_entropy",
    "chsh_operators",
    "concurrence",
    "dual_gradient",
    "dual_objective",
    "eig_hermitian",
    "eof_bell_diagonal",
    "eof_from_concurrence",
    "expectation",
    "gibbs_state",
    "is_ppt_separable",
    "jaynes_b",
    "jaynes_bx",
    "largest_eigenvalue_j1",
    "largest_eigenvalue_j2",
    "matrix_function",
    "min_variance_state",
    "partial_transpose",
    "pauli",
    "projector",
    "ree_bell_diagonal",
    "solve",
    "tensor_product",
    "to_density_matrix",
    "trace_distance",
    "variance_x",
    "verify_maximality",
    "von_neumann_entropy",
]
