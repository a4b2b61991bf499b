"""Numerical maximum-entropy inference.

Maximize the von Neumann entropy S(rho) subject to Tr(rho O_i) = e_i and
Tr rho = 1, through the Gibbs ansatz rho(lam) = exp(sum_i lam_i O_i)/Z and
minimization of the convex dual

    psi(lam) = ln Tr exp(sum_i lam_i O_i) - sum_i lam_i e_i,

whose gradient components are <O_i>_rho(lam) - e_i.  The minimizer is found
by BFGS curvature accumulation with a backtracking line search, starting
from lam = 0 (the maximally mixed state).  No commutativity among the
observables is assumed anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg

CONVERGED = "Converged"
BOUNDARY_LIMIT = "BoundaryLimit"
MAX_ITERATIONS = "MaxIterations"

# Smallest eigenvalue the Hilbert-Schmidt Gram matrix of the observables
# may have before the set is rejected as linearly dependent.
GRAM_FLOOR = 1e-8

_ARMIJO_C1 = 1e-4
_MAX_BACKTRACKS = 60
# Float-noise allowance in the line-search acceptance: near the optimum the
# true decrease per step falls below double-precision resolution of psi, and
# without this slack the search would reject every step and stall.
_NOISE = 1e-14


def _hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt inner product Tr(a^dagger b), real for Hermitian pairs."""
    return float(np.trace(a.conj().T @ b).real)


@dataclass(frozen=True)
class ConstraintSet:
    """Hermitian observables with target expectation values.

    The lists must have equal length (both empty is legal and yields the
    maximally mixed state); each target must lie inside its observable's
    spectrum interval; the observables must be linearly independent as
    vectors in the real space of Hermitian matrices.  ``dim`` is inferred
    from the observables when any are present and must be given explicitly
    for the empty set.
    """

    observables: tuple[np.ndarray, ...]
    targets: tuple[float, ...]
    dim: int | None = None

    def __post_init__(self) -> None:
        obs = tuple(
            linalg.check_hermitian(o, name=f"observable {i}")
            for i, o in enumerate(self.observables)
        )
        targets = tuple(float(t) for t in self.targets)
        if len(obs) != len(targets):
            raise ValueError(
                f"{len(obs)} observables but {len(targets)} targets"
            )
        if obs:
            dim = obs[0].shape[0]
            for i, o in enumerate(obs):
                if o.shape[0] != dim:
                    raise ValueError(
                        f"observable {i} is {o.shape[0]}x{o.shape[0]}, "
                        f"expected {dim}x{dim}"
                    )
            if self.dim is not None and int(self.dim) != dim:
                raise ValueError(
                    f"dim = {self.dim} disagrees with observable size {dim}"
                )
        else:
            if self.dim is None:
                raise ValueError("an empty constraint set needs an explicit dim")
            dim = int(self.dim)
            if dim < 1:
                raise ValueError(f"dim must be >= 1, got {dim}")
        for i, (o, t) in enumerate(zip(obs, targets)):
            spectrum = np.linalg.eigvalsh(o)
            if not spectrum[0] - 1e-12 <= t <= spectrum[-1] + 1e-12:
                raise ValueError(
                    f"target {t!r} for observable {i} lies outside its "
                    f"spectrum interval [{spectrum[0]!r}, {spectrum[-1]!r}]"
                )
        if obs:
            gram = np.array([[_hs_inner(a, b) for b in obs] for a in obs])
            smallest = float(np.linalg.eigvalsh(gram)[0])
            if smallest <= GRAM_FLOOR:
                raise ValueError(
                    "observables are linearly dependent "
                    f"(smallest Gram eigenvalue {smallest:.3e})"
                )
        object.__setattr__(self, "observables", obs)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "dim", dim)

    def __len__(self) -> int:
        return len(self.observables)


@dataclass(frozen=True)
class SolverConfig:
    residual_tolerance: float = 1e-10
    max_iterations: int = 500
    multiplier_cap: float = 50.0

    def __post_init__(self) -> None:
        if not self.residual_tolerance > 0.0:
            raise ValueError("residual_tolerance must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.multiplier_cap > 0.0:
            raise ValueError("multiplier_cap must be > 0")


@dataclass(frozen=True)
class SolverReport:
    """Outcome of a solve: the state, multipliers and iteration diagnostics.

    ``residuals`` holds <O_i>_state - e_i at the returned multipliers.
    ``dual_values`` is the accepted dual objective value per iteration
    (starting point included) — non-increasing up to float noise.
    ``status`` is Converged, BoundaryLimit (some |lambda_i| reached the
    multiplier cap; boundary or jointly infeasible targets) or
    MaxIterations.
    """

    state: np.ndarray
    multipliers: np.ndarray
    residuals: np.ndarray
    iterations: int
    status: str
    dual_values: tuple[float, ...] = field(default=(), repr=False)


def _gibbs_parts(
    observables: tuple[np.ndarray, ...], multipliers: np.ndarray
) -> tuple[np.ndarray, float]:
    """Gibbs state and ln Z for H = sum_i lambda_i O_i (max-shifted exp)."""
    h = np.zeros_like(observables[0])
    for lam, o in zip(multipliers, observables):
        h = h + lam * o
    eigenvalues, vectors = np.linalg.eigh(h)
    shifted = np.exp(eigenvalues - eigenvalues[-1])
    z = float(shifted.sum())
    log_z = float(eigenvalues[-1]) + math.log(z)
    rho = (vectors * (shifted / z)) @ vectors.conj().T
    return 0.5 * (rho + rho.conj().T), log_z


def gibbs_state(
    observables, multipliers, dim: int | None = None
) -> np.ndarray:
    """rho = exp(sum_i lambda_i O_i) / Tr exp(...); strictly positive.

    With no observables the exponent is empty and the maximally mixed state
    of dimension ``dim`` is returned (``dim`` is required in that case).
    """
    obs = tuple(
        linalg.check_hermitian(o, name=f"observable {i}")
        for i, o in enumerate(observables)
    )
    lam = np.asarray(multipliers, dtype=float).reshape(-1)
    if len(obs) != lam.size:
        raise ValueError(f"{len(obs)} observables but {lam.size} multipliers")
    if not obs:
        if dim is None:
            raise ValueError("dim is required when no observables are given")
        return np.eye(dim, dtype=complex) / dim
    rho, _ = _gibbs_parts(obs, lam)
    return rho


def dual_objective(constraints: ConstraintSet, multipliers) -> float:
    """psi(lam) = ln Tr exp(sum lam_i O_i) - sum lam_i e_i; convex in lam."""
    lam = np.asarray(multipliers, dtype=float).reshape(-1)
    if lam.size != len(constraints):
        raise ValueError(f"expected {len(constraints)} multipliers, got {lam.size}")
    if not constraints.observables:
        return math.log(constraints.dim)
    _, log_z = _gibbs_parts(constraints.observables, lam)
    return log_z - float(lam @ np.asarray(constraints.targets))


def dual_gradient(constraints: ConstraintSet, multipliers) -> np.ndarray:
    """Gradient of the dual: component i is <O_i>_rho(lam) - e_i."""
    lam = np.asarray(multipliers, dtype=float).reshape(-1)
    if lam.size != len(constraints):
        raise ValueError(f"expected {len(constraints)} multipliers, got {lam.size}")
    if not constraints.observables:
        return np.zeros(0)
    rho, _ = _gibbs_parts(constraints.observables, lam)
    return _expectations(rho, constraints.observables) - np.asarray(
        constraints.targets
    )


def _expectations(
    rho: np.ndarray, observables: tuple[np.ndarray, ...]
) -> np.ndarray:
    return np.array([float(np.trace(rho @ o).real) for o in observables])


def _spectrum_flags(constraints: ConstraintSet, tol: float = 1e-12) -> tuple[int, ...]:
    """Per constraint: +1/-1 if the target sits at the top/bottom of the
    observable's spectrum interval (within tol), 0 if strictly inside.

    Edge targets have no finite-multiplier Gibbs representation — the dual
    infimum is only approached as that multiplier diverges — so the solver
    pins them at the cap instead of chasing a vanishing gradient.
    """
    flags = []
    for o, t in zip(constraints.observables, constraints.targets):
        spectrum = np.linalg.eigvalsh(o)
        if t >= float(spectrum[-1]) - tol:
            flags.append(1)
        elif t <= float(spectrum[0]) + tol:
            flags.append(-1)
        else:
            flags.append(0)
    return tuple(flags)


def solve(
    constraints: ConstraintSet, config: SolverConfig | None = None
) -> SolverReport:
    """Minimize the dual from lam = 0 by BFGS with backtracking line search.

    Converged means max |<O_i> - e_i| <= residual_tolerance.  A target at
    (or numerically at) the spectrum boundary has no finite-multiplier
    solution; its multiplier is pinned at the cap up front and the result
    is reported as BoundaryLimit with the capped-lambda state.  Jointly
    infeasible target vectors reach the cap during iteration and are
    reported the same way.
    """
    cfg = config if config is not None else SolverConfig()
    targets = np.asarray(constraints.targets, dtype=float)
    k = len(constraints)
    if k == 0:
        state = np.eye(constraints.dim, dtype=complex) / constraints.dim
        return SolverReport(
            state=state,
            multipliers=np.zeros(0),
            residuals=np.zeros(0),
            iterations=0,
            status=CONVERGED,
            dual_values=(math.log(constraints.dim),),
        )

    # Targets at the spectrum edge would send their multipliers to infinity
    # (with the dual gradient vanishing exponentially on the way); pin those
    # at the cap and optimize only the remaining free coordinates.
    flags = _spectrum_flags(constraints)
    free = np.array([f == 0 for f in flags])
    pinned = bool((~free).any())

    def evaluate(lam: np.ndarray):
        rho, log_z = _gibbs_parts(constraints.observables, lam)
        psi = log_z - float(lam @ targets)
        grad = _expectations(rho, constraints.observables) - targets
        return psi, grad, rho

    def masked(vec: np.ndarray) -> np.ndarray:
        return np.where(free, vec, 0.0)

    lam = np.array(flags, dtype=float) * cfg.multiplier_cap
    psi, grad, rho = evaluate(lam)
    trail = [psi]
    h_inv = np.eye(k)
    iterations = 0
    status = MAX_ITERATIONS

    while True:
        if float(np.max(np.abs(masked(grad)), initial=0.0)) <= cfg.residual_tolerance:
            status = CONVERGED
            break
        if iterations >= cfg.max_iterations:
            status = MAX_ITERATIONS
            break
        iterations += 1

        direction = masked(-h_inv @ masked(grad))
        slope = float(grad @ direction)
        if slope >= 0.0:
            # curvature estimate broke down; restart from steepest descent
            h_inv = np.eye(k)
            direction = masked(-grad)
            slope = float(grad @ direction)

        allowance = _NOISE * max(1.0, abs(psi))
        step = 1.0
        accepted = None
        for _ in range(_MAX_BACKTRACKS):
            trial = lam + step * direction
            t_psi, t_grad, t_rho = evaluate(trial)
            if t_psi <= psi + _ARMIJO_C1 * step * slope + allowance:
                accepted = (trial, t_psi, t_grad, t_rho)
                break
            step *= 0.5
        if accepted is None:
            # no acceptable decrease within float resolution
            status = MAX_ITERATIONS
            break
        new_lam, new_psi, new_grad, new_rho = accepted

        if float(np.max(np.abs(new_lam[free]), initial=0.0)) >= cfg.multiplier_cap:
            lam = np.clip(new_lam, -cfg.multiplier_cap, cfg.multiplier_cap)
            psi, grad, rho = evaluate(lam)
            trail.append(psi)
            status = BOUNDARY_LIMIT
            break

        s = new_lam - lam
        y = masked(new_grad - grad)
        sy = float(s @ y)
        if sy > 1e-12 * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
            scale = 1.0 / sy
            left = np.eye(k) - scale * np.outer(s, y)
            h_inv = left @ h_inv @ left.T + scale * np.outer(s, s)
        lam, psi, grad, rho = new_lam, new_psi, new_grad, new_rho
        trail.append(psi)

    if pinned:
        status = BOUNDARY_LIMIT

    return SolverReport(
        state=rho,
        multipliers=lam,
        residuals=grad,
        iterations=iterations,
        status=status,
        dual_values=tuple(trail),
    )


def _orthonormal_frame(mats: list[np.ndarray]) -> list[np.ndarray]:
    """Hilbert-Schmidt Gram-Schmidt over Hermitian matrices (real scalars)."""
    frame: list[np.ndarray] = []
    for m in mats:
        v = np.asarray(m, dtype=complex).copy()
        for q in frame:
            v -= _hs_inner(q, v) * q
        norm = math.sqrt(max(_hs_inner(v, v), 0.0))
        if norm > 1e-10:
            frame.append(v / norm)
    return frame


def verify_maximality(
    report: SolverReport,
    constraints: ConstraintSet,
    samples: int,
    *,
    seed: int = 0,
    slack: float = 1e-8,
) -> bool:
    """Probe whether report.state really is the entropy maximizer.

    Draws ``samples`` random Hermitian perturbations, projects each onto the
    orthogonal complement of span{I, O_1, ..., O_k} (so trace and all
    constraints are preserved), rescales to keep the perturbed state PSD,
    and checks that none exceeds S(report.state) + 1e-8.  Requires a
    Converged report.  Deterministic for a fixed ``seed``.
    """
    if report.status != CONVERGED:
        raise ValueError(
            f"maximality check needs a Converged report, got {report.status}"
        )
    rho = np.asarray(report.state, dtype=complex)
    d = rho.shape[0]
    frame = _orthonormal_frame(
        [np.eye(d, dtype=complex), *constraints.observables]
    )
    floor = float(np.linalg.eigvalsh(rho)[0])
    base_entropy = linalg.von_neumann_entropy(rho)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        raw = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        delta = 0.5 * (raw + raw.conj().T)
        for q in frame:
            delta -= _hs_inner(q, delta) * q
        spectral_norm = float(np.max(np.abs(np.linalg.eigvalsh(delta))))
        if spectral_norm < 1e-12:
            continue
        # keep the smallest eigenvalue of rho + eps*delta strictly positive
        eps = rng.uniform(0.2, 0.9) * floor / spectral_norm
        candidate = rho + eps * delta
        if linalg.von_neumann_entropy(candidate) > base_entropy + slack:
            return False
    return True
