"""Uniqueness oracle over all density matrices via convex feasibility.

The states consistent with a set of prescribed marginals form the
intersection of an affine set (Hermitian, unit trace, matching partial
traces) with the positive-semidefinite cone. This module decides whether a
pure state is the *only* point of that intersection by multi-start
Dykstra-corrected alternating projections, with starting points biased
along the null space of the marginal-constraint map (the only directions
in which a second consistent state can differ). A run that ends away from
the reference state is only accepted as a counterexample after an exact
certification step: the candidate is polished in factorized form
``W = A A^+`` (positive semidefinite by construction) with Gauss-Newton on
the marginal equations, pushed outward through the feasible set to a
well-separated point, and finally verified directly against every
constraint. UNIQUE therefore remains an empirical verdict, while
NON_UNIQUE is constructive.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .tensor import (
    AmplitudeTensor,
    DensityMatrix,
    PartySignature,
    SeededRng,
    haar_random_state,
    herm_to_vec,
    partial_trace_matrix,
    rank_and_nullspace,
    to_density,
    trace_distance,
    trace_norm,
    vec_to_herm,
)

__all__ = [
    "UNIQUE",
    "NON_UNIQUE",
    "INCONCLUSIVE",
    "MarginalConstraintSet",
    "ProjectionConfig",
    "ConstraintOperator",
    "DykstraResult",
    "RunRecord",
    "FeasibilityVerdict",
    "SurveyStats",
    "constraint_nullspace",
    "project_affine",
    "project_psd",
    "dykstra_solve",
    "uniqueness_probe",
    "genericity_survey",
]

UNIQUE = "UNIQUE"
NON_UNIQUE = "NON_UNIQUE"
INCONCLUSIVE = "INCONCLUSIVE"

RETURNED_REFERENCE = "returned_reference"
WITNESS = "witness"
RUN_INCONCLUSIVE = "inconclusive"

_CERT_TOL = 1e-11          # Gauss-Newton residual needed to accept a witness
_PSD_VERIFY_ATOL = 1e-10   # witness eigenvalue floor at verification


def _subset_key(subset: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(int(p) for p in subset))


@dataclass(frozen=True)
class MarginalConstraintSet:
    """Affine constraints: one target reduced state per party subset."""

    signature: PartySignature
    constraints: tuple[tuple[tuple[int, ...], DensityMatrix], ...]

    def __init__(self, signature: PartySignature,
                 constraints: Sequence[tuple[Sequence[int], DensityMatrix]]):
        object.__setattr__(self, "signature", signature)
        normalized = []
        for subset, target in constraints:
            key = _subset_key(subset)
            if not key:
                raise ValueError("constraint subsets must be non-empty")
            if key[0] < 0 or key[-1] >= signature.n_parties:
                raise ValueError(f"subset {key} out of range for {signature.n_parties} parties")
            if target.signature != signature.subsystem(key):
                raise ValueError(
                    f"target signature {target.signature.dims} does not match subset {key}"
                )
            normalized.append((key, target))
        object.__setattr__(self, "constraints", tuple(normalized))

    @classmethod
    def from_state(cls, state: AmplitudeTensor,
                   subsets: Sequence[Sequence[int]]) -> "MarginalConstraintSet":
        """Constraints whose targets are the reduced states of a pure state."""
        rho = to_density(state)
        mat = rho.matrix
        dims = state.signature.dims
        cons = []
        for subset in subsets:
            key = _subset_key(subset)
            reduced = partial_trace_matrix(mat, dims, key)
            cons.append((key, DensityMatrix(state.signature.subsystem(key), reduced)))
        return cls(state.signature, cons)

    @property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s for s, _ in self.constraints)

    def covered_parties(self) -> set[int]:
        return set(p for s, _ in self.constraints for p in s)


@dataclass(frozen=True)
class ProjectionConfig:
    """Knobs of the alternating-projection search."""

    max_iterations: int = 5000
    convergence_tol: float = 1e-9
    distinctness_tol: float = 1e-4
    restarts: int = 8
    perturbation_scale: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1 or self.restarts < 1:
            raise ValueError("max_iterations and restarts must be positive")
        if min(self.convergence_tol, self.distinctness_tol, self.perturbation_scale) <= 0:
            raise ValueError("tolerances and perturbation scale must be positive")
        if self.convergence_tol >= self.distinctness_tol:
            raise ValueError("convergence_tol must be smaller than distinctness_tol")


class ConstraintOperator:
    """Matrix form of the marginal-constraint map on Hermitian space.

    Rows of ``L`` are the real coordinates (see :func:`herm_to_vec`) of the
    adjoint applied to a coordinate basis of each target space, i.e.
    ``L @ herm_to_vec(X)`` stacks the coordinates of every constrained
    partial trace of X plus the total trace. ``b`` holds the target
    coordinates. A pseudo-inverse of ``L`` gives the orthogonal projection
    onto the affine set and onto its homogeneous kernel.
    """

    def __init__(self, constraints: MarginalConstraintSet):
        self.constraints = constraints
        dims = constraints.signature.dims
        self.dims = dims
        self.total_dim = constraints.signature.total_dim
        rows: list[np.ndarray] = []
        rhs: list[np.ndarray] = []
        for subset, target in constraints.constraints:
            t_s = int(np.prod([dims[p] for p in subset]))
            for i in range(t_s * t_s):
                unit = np.zeros(t_s * t_s)
                unit[i] = 1.0
                rows.append(herm_to_vec(_embed(vec_to_herm(unit, t_s), dims, subset)))
            rhs.append(herm_to_vec(target.matrix))
        rows.append(herm_to_vec(np.eye(self.total_dim)))
        rhs.append(np.array([1.0]))
        self.matrix = np.array(rows)
        self.target = np.concatenate(rhs)
        u, s, vt = np.linalg.svd(self.matrix, full_matrices=False)
        cutoff = max(self.matrix.shape) * np.finfo(float).eps * s[0]
        r = int(np.sum(s > cutoff))
        self.rank = r
        self._pinv = (vt[:r].T / s[:r]) @ u[:, :r].T

    # -- projections (vector form used in hot loops, matrix form for the API)

    def project_vec(self, x: np.ndarray) -> np.ndarray:
        return x - (x @ self.matrix.T - self.target) @ self._pinv.T

    def project(self, x_mat: np.ndarray) -> np.ndarray:
        return vec_to_herm(self.project_vec(herm_to_vec(x_mat)), self.total_dim)

    def project_kernel(self, g_mat: np.ndarray) -> np.ndarray:
        """Orthogonal projection onto the homogeneous kernel of the map."""
        g = herm_to_vec(g_mat)
        g = g - (g @ self.matrix.T) @ self._pinv.T
        return vec_to_herm(g, self.total_dim)

    def kernel_dim(self) -> int:
        return self.total_dim ** 2 - self.rank

    def residual(self, x_mat: np.ndarray) -> float:
        """Euclidean constraint violation ``||L x - b||`` (includes trace row)."""
        return float(np.linalg.norm(self.matrix @ herm_to_vec(x_mat) - self.target))

    def marginal_residual(self, x_mat: np.ndarray) -> float:
        """Max Frobenius distance of constrained partial traces from targets."""
        worst = 0.0
        for subset, target in self.constraints.constraints:
            diff = partial_trace_matrix(x_mat, self.dims, subset) - target.matrix
            worst = max(worst, float(np.linalg.norm(diff)))
        return worst


def _embed(z: np.ndarray, dims: Sequence[int], subset: Sequence[int]) -> np.ndarray:
    """Adjoint of the partial trace: Z on ``subset`` -> Z (x) identity."""
    n = len(dims)
    subset = sorted(subset)
    d_s = [dims[p] for p in subset]
    args: list = [z.reshape(tuple(d_s) * 2),
                  [p for p in subset] + [n + p for p in subset]]
    for p in range(n):
        if p not in subset:
            args.extend([np.eye(dims[p]), [p, n + p]])
    out = list(range(2 * n))
    total = int(np.prod(dims))
    return np.einsum(*args, out).reshape(total, total)


def constraint_nullspace(signature: PartySignature,
                         subsets: Sequence[Sequence[int]]) -> np.ndarray:
    """Orthonormal basis of traceless Hermitian deviations with vanishing
    partial trace on every constrained subset.

    Returns a stack of shape ``(k, T, T)``; orthonormality is in the
    Hilbert-Schmidt inner product. Any two states consistent with the same
    marginals differ by an element of this space. The dimension equals the
    number of product-basis terms whose support is not contained in any
    constrained subset.
    """
    # Placeholder targets: only the homogeneous part (the matrix L) matters.
    placeholders = []
    for subset in subsets:
        sub_sig = signature.subsystem(subset)
        placeholders.append((subset, DensityMatrix(
            sub_sig, np.eye(sub_sig.total_dim, dtype=complex) / sub_sig.total_dim)))
    op = ConstraintOperator(MarginalConstraintSet(signature, placeholders))
    _, null_basis = rank_and_nullspace(op.matrix)
    # Columns of the (real) null basis are HS-orthonormal Hermitian matrices.
    return np.stack([vec_to_herm(np.real(null_basis[:, i]), op.total_dim)
                     for i in range(null_basis.shape[1])]) if null_basis.shape[1] else \
        np.zeros((0, op.total_dim, op.total_dim), dtype=complex)


def project_affine(x_mat: np.ndarray, constraints: MarginalConstraintSet) -> np.ndarray:
    """Hilbert-Schmidt-orthogonal projection onto the affine constraint set.

    For an inconsistent (empty) constraint set this is the least-squares
    analogue; inspect ``ConstraintOperator.residual`` of the output to
    detect that case.
    """
    return ConstraintOperator(constraints).project(np.asarray(x_mat, dtype=complex))


def project_psd(x_mat: np.ndarray) -> np.ndarray:
    """Nearest positive-semidefinite matrix in Frobenius norm (eigenvalue clip)."""
    x = np.asarray(x_mat, dtype=complex)
    x = (x + x.conj().T) / 2
    vals, vecs = np.linalg.eigh(x)
    vals = np.maximum(vals, 0.0)
    return (vecs * vals) @ vecs.conj().T


def _project_psd_batch(x: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(x)
    vals = np.maximum(vals, 0.0)
    return (vecs * vals[..., None, :]) @ np.swapaxes(vecs.conj(), -2, -1)


def _dykstra_batch(starts: np.ndarray, op: ConstraintOperator,
                   max_iterations: int, tol: float):
    """Dykstra-corrected alternating projections, one row per starting point.

    The step size is the larger trace-norm change across the two half-steps
    of a cycle; a run stops when it drops below ``tol``. Returns the
    PSD-side iterates, per-run iteration counts and convergence flags.
    """
    n_runs, t, _ = starts.shape
    sq_t = np.sqrt(t)
    x = (starts + np.swapaxes(starts.conj(), -2, -1)) / 2
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    out = x.copy()
    active = np.ones(n_runs, dtype=bool)
    iterations = np.zeros(n_runs, dtype=int)
    converged = np.zeros(n_runs, dtype=bool)
    for it in range(1, max_iterations + 1):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        xa, pa, qa = x[idx], p[idx], q[idx]
        ya = _project_psd_batch(xa + pa)
        pa = xa + pa - ya
        xa_new = vec_to_herm(op.project_vec(herm_to_vec(ya + qa)), t)
        qa = ya + qa - xa_new
        d1 = ya - xa
        d2 = xa_new - ya
        fro = np.maximum(
            np.sqrt(np.sum(np.abs(d1) ** 2, axis=(1, 2))),
            np.sqrt(np.sum(np.abs(d2) ** 2, axis=(1, 2))),
        )
        # ||.||_F <= ||.||_tr <= sqrt(T) ||.||_F: only the in-between band
        # needs the exact trace norm.
        done = sq_t * fro < tol
        unsure = np.flatnonzero(~done & (fro < tol))
        for i in unsure:
            done[i] = max(trace_norm(d1[i]), trace_norm(d2[i])) < tol
        x[idx], p[idx], q[idx] = xa_new, pa, qa
        out[idx] = ya
        iterations[idx] = it
        finished = idx[done]
        converged[finished] = True
        active[finished] = False
    return out, iterations, converged


@dataclass(frozen=True)
class DykstraResult:
    """Last PSD-side iterate of an alternating-projection run with residuals.

    ``matrix`` is positive semidefinite up to eigenvalue rounding; its
    distance from the affine set is ``affine_residual`` (Frobenius). On a
    non-converged run the result is the INCONCLUSIVE marker: ``converged``
    is False and the residuals describe how far the run got.
    """

    matrix: np.ndarray = field(repr=False)
    converged: bool
    iterations: int
    affine_residual: float
    psd_residual: float
    marginal_residual: float


def dykstra_solve(start: np.ndarray, constraints: MarginalConstraintSet,
                  config: ProjectionConfig = ProjectionConfig()) -> DykstraResult:
    """Project a Hermitian starting point toward the marginal-consistent
    density matrices by Dykstra-corrected alternating projections."""
    op = ConstraintOperator(constraints)
    return _solve_one(np.asarray(start, dtype=complex), op, config)


def _solve_one(start: np.ndarray, op: ConstraintOperator,
               config: ProjectionConfig) -> DykstraResult:
    outs, iters, conv = _dykstra_batch(
        start[None, :, :], op, config.max_iterations, config.convergence_tol)
    return _result_from_run(outs[0], int(iters[0]), bool(conv[0]), op)


def _result_from_run(y: np.ndarray, iterations: int, converged: bool,
                     op: ConstraintOperator) -> DykstraResult:
    affine = float(np.linalg.norm(op.project(y) - y))
    psd = max(0.0, -float(np.linalg.eigvalsh(y)[0]))
    return DykstraResult(y, converged, iterations, affine, psd,
                         op.marginal_residual(y))


# ---------------------------------------------------------------------------
# Witness certification
# ---------------------------------------------------------------------------

def _gauss_newton_polish(candidate: np.ndarray, op: ConstraintOperator,
                         rank: int, max_iter: int = 30):
    """Fit ``W = A A^+`` of the given rank to the affine constraints.

    Gauss-Newton with backtracking on the residual ``||L vec(W) - b||``;
    the outcome is PSD by construction, so only the affine residual needs
    verification. Returns ``(W, residual)``.
    """
    t = candidate.shape[0]
    rank = max(1, min(rank, t))
    vals, vecs = np.linalg.eigh((candidate + candidate.conj().T) / 2)
    order = np.argsort(vals)[::-1]
    vals = np.maximum(vals[order][:rank], 0.0)
    a = vecs[:, order[:rank]] * np.sqrt(np.maximum(vals, 1e-30))
    l_mat, b = op.matrix, op.target
    best_a, best_res = a, np.inf
    for _ in range(max_iter):
        w = a @ a.conj().T
        f = l_mat @ herm_to_vec(w) - b
        res = float(np.linalg.norm(f))
        if res < best_res:
            best_a, best_res = a.copy(), res
        if res < 1e-14:
            break
        cols = []
        for j in range(rank):
            for i in range(t):
                e = np.zeros((t, rank), dtype=complex)
                e[i, j] = 1.0
                m = e @ a.conj().T
                cols.append(l_mat @ herm_to_vec(m + m.conj().T))
                e[i, j] = 1j
                m = e @ a.conj().T
                cols.append(l_mat @ herm_to_vec(m + m.conj().T))
        jac = np.array(cols).T
        step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        da = (step[0::2] + 1j * step[1::2]).reshape(rank, t).T
        scale = 1.0
        for _ in range(20):
            a_try = a + scale * da
            w_try = a_try @ a_try.conj().T
            if float(np.linalg.norm(l_mat @ herm_to_vec(w_try) - b)) < res:
                break
            scale /= 2
        a = a + scale * da
    w = best_a @ best_a.conj().T
    return w, float(np.linalg.norm(l_mat @ herm_to_vec(w) - b))


def _certify(candidate: np.ndarray, op: ConstraintOperator):
    """Polish a candidate into an exactly PSD, constraint-consistent matrix.

    Tries increasing factorization ranks starting from the candidate's
    numerical rank; returns the polished matrix or None.
    """
    t = candidate.shape[0]
    vals = np.linalg.eigvalsh((candidate + candidate.conj().T) / 2)
    r0 = int(np.sum(vals > 1e-2 * max(vals.max(), 1e-30)))
    tried = []
    for rank in dict.fromkeys([max(r0, 1), min(max(r0, 1) + 2, t), t]):
        w, res = _gauss_newton_polish(candidate, op, rank)
        tried.append((res, w))
        if res < _CERT_TOL:
            return w
    res, w = min(tried, key=lambda rw: rw[0])
    return w if res < _CERT_TOL else None


def _pursue_far(reference: np.ndarray, witness: np.ndarray,
                op: ConstraintOperator, rounds: int = 40) -> np.ndarray:
    """Push a certified witness outward through the feasible set.

    Repeatedly extrapolates past the current witness along its offset from
    the reference and re-certifies; keeps any verified point that is
    farther. Greatly separates witnesses that Dykstra leaves close to the
    reference (its projections find *nearest* feasible points).
    """
    current = witness
    dist = trace_distance(current, reference)
    for _ in range(rounds):
        improved = False
        for step in (1.0, 0.5, 0.25):
            candidate = current + step * (current - reference)
            polished = _certify(candidate, op)
            if polished is None:
                continue
            d_new = trace_distance(polished, reference)
            if d_new > 1.02 * dist:
                current, dist = polished, d_new
                improved = True
                break
        if not improved:
            break
    return current


def _verify_witness(w: np.ndarray, op: ConstraintOperator,
                    config: ProjectionConfig) -> bool:
    if op.marginal_residual(w) > config.convergence_tol:
        return False
    if abs(float(np.trace(w).real) - 1.0) > 1e-9:
        return False
    return float(np.linalg.eigvalsh(w)[0]) >= -_PSD_VERIFY_ATOL


def _as_density(w: np.ndarray, signature: PartySignature) -> DensityMatrix:
    # Strip verification-level rounding so the strict type invariants hold.
    w = (w + w.conj().T) / 2
    w = w / np.trace(w).real
    return DensityMatrix(signature, w)


@dataclass(frozen=True)
class RunRecord:
    """Per-restart outcome of the multi-start probe."""

    outcome: str
    converged: bool
    iterations: int
    distance: float
    affine_residual: float
    psd_residual: float


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Multi-start probe verdict.

    For NON_UNIQUE, ``witnesses`` holds the reference state first and then
    the certified distinct state(s); every witness satisfies the constraints
    to within the convergence tolerance and the distinct ones are separated
    from the reference by more than the distinctness tolerance.
    """

    verdict: str
    witnesses: tuple[DensityMatrix, ...]
    max_marginal_residual: float
    pairwise_distances: tuple[float, ...]
    runs: tuple[RunRecord, ...] = ()


def uniqueness_probe(pure_state: AmplitudeTensor,
                     subsets: Sequence[Sequence[int]],
                     config: ProjectionConfig = ProjectionConfig(),
                     rng: SeededRng | None = None) -> FeasibilityVerdict:
    """Decide whether the given marginals of a pure state pin it uniquely.

    Starting points are the reference state perturbed along random
    constraint-kernel directions (where any second consistent state must
    live), reprojected by the solver. UNIQUE requires every restart to come
    back to the reference within the distinctness tolerance; NON_UNIQUE
    requires a directly verified distinct witness; everything else is
    INCONCLUSIVE. A party not covered by any subset makes uniqueness
    impossible: a local unitary there is an immediate analytic witness.

    ``rng`` overrides the restart randomness (used by the survey to give
    each trial its own substream); by default it derives from config.seed.
    """
    rho = to_density(pure_state)
    signature = pure_state.signature
    uncovered = set(range(signature.n_parties)) - \
        set(p for s in subsets for p in _subset_key(s))
    if uncovered:
        return _uncovered_verdict(pure_state, rho, subsets, min(uncovered), config)

    constraints = MarginalConstraintSet.from_state(pure_state, subsets)
    op = ConstraintOperator(constraints)
    t = signature.total_dim
    if rng is None:
        rng = SeededRng(config.seed)

    starts = []
    for r in range(config.restarts):
        g = rng.spawn(r).complex_normal((t, t))
        g = g + g.conj().T
        kdir = op.project_kernel(g)
        knorm = float(np.linalg.norm(kdir))
        if knorm < 1e-14:
            starts.append(rho.matrix.copy())
        else:
            starts.append(rho.matrix + config.perturbation_scale * kdir / knorm)
    outs, iters, conv = _dykstra_batch(
        np.array(starts), op, config.max_iterations, config.convergence_tol)

    runs: list[RunRecord] = []
    witnesses: list[np.ndarray] = []
    for i in range(config.restarts):
        result = _result_from_run(outs[i], int(iters[i]), bool(conv[i]), op)
        dist = trace_distance(result.matrix, rho.matrix)
        outcome = RUN_INCONCLUSIVE
        if dist <= config.distinctness_tol:
            outcome = RETURNED_REFERENCE
        else:
            polished = _certify(result.matrix, op)
            if polished is not None:
                far = _pursue_far(rho.matrix, polished, op)
                if _verify_witness(far, op, config) and \
                        trace_distance(far, rho.matrix) > config.distinctness_tol:
                    witnesses.append(far)
                    outcome = WITNESS
        runs.append(RunRecord(outcome, result.converged, result.iterations,
                              dist, result.affine_residual, result.psd_residual))

    if witnesses:
        best = max(witnesses, key=lambda w: trace_distance(w, rho.matrix))
        listed = (rho, _as_density(best, signature))
        return _finish(NON_UNIQUE, listed, op, runs)
    if all(r.outcome == RETURNED_REFERENCE for r in runs):
        return _finish(UNIQUE, (rho,), op, runs)
    return _finish(INCONCLUSIVE, (rho,), op, runs)


def _finish(verdict: str, witnesses: tuple[DensityMatrix, ...],
            op: ConstraintOperator, runs: list[RunRecord]) -> FeasibilityVerdict:
    residual = max(op.marginal_residual(w.matrix) for w in witnesses)
    pairwise = tuple(
        trace_distance(witnesses[i].matrix, witnesses[j].matrix)
        for i in range(len(witnesses)) for j in range(i + 1, len(witnesses))
    )
    return FeasibilityVerdict(verdict, witnesses, residual, pairwise, tuple(runs))


def _uncovered_verdict(state: AmplitudeTensor, rho: DensityMatrix,
                       subsets: Sequence[Sequence[int]], party: int,
                       config: ProjectionConfig) -> FeasibilityVerdict:
    """Analytic witness: rotate an unconstrained party."""
    d = state.signature.dims[party]
    rng = SeededRng(config.seed)
    candidates = [np.diag(np.exp(2j * np.pi * np.arange(d) / d)),
                  np.roll(np.eye(d), 1, axis=0)]
    for k in range(8):
        g = rng.spawn(k).complex_normal((d, d))
        q, _ = np.linalg.qr(g)
        candidates.append(q)
    n = state.signature.n_parties
    for u in candidates:
        rotated = np.tensordot(u, state.amplitudes, axes=([1], [party]))
        rotated = np.moveaxis(rotated, 0, party)
        other = to_density(AmplitudeTensor(state.signature, rotated))
        if trace_distance(other, rho) > config.distinctness_tol:
            residual = 0.0
            dims = state.signature.dims
            for subset in subsets:
                key = _subset_key(subset)
                diff = partial_trace_matrix(other.matrix, dims, key) - \
                    partial_trace_matrix(rho.matrix, dims, key)
                residual = max(residual, float(np.linalg.norm(diff)))
            return FeasibilityVerdict(
                NON_UNIQUE, (rho, other), residual,
                (trace_distance(other, rho),), ())
    raise RuntimeError("could not rotate the uncovered party away from the state")


@dataclass(frozen=True)
class SurveyStats:
    """Aggregate of uniqueness probes on Haar samples."""

    signature: PartySignature
    subsets: tuple[tuple[int, ...], ...]
    trials: int
    seed: int
    verdicts: tuple[str, ...]
    runtimes: tuple[float, ...]

    @property
    def unique_fraction(self) -> float:
        return self.verdicts.count(UNIQUE) / self.trials

    @property
    def non_unique_fraction(self) -> float:
        return self.verdicts.count(NON_UNIQUE) / self.trials

    @property
    def inconclusive_fraction(self) -> float:
        return self.verdicts.count(INCONCLUSIVE) / self.trials


def genericity_survey(signature: PartySignature,
                      subsets: Sequence[Sequence[int]],
                      trials: int,
                      config: ProjectionConfig = ProjectionConfig()) -> SurveyStats:
    """Run the uniqueness probe on Haar-random states.

    Deterministic for a fixed config seed: trial t draws its state from
    substream (seed, t, 0) and its restarts from (seed, t, 1, r).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    verdicts = []
    runtimes = []
    base = SeededRng(config.seed)
    for trial in range(trials):
        t0 = time.perf_counter()
        state = haar_random_state(signature, base.spawn(trial).spawn(0))
        verdict = uniqueness_probe(state, subsets, config,
                                   rng=base.spawn(trial).spawn(1))
        verdicts.append(verdict.verdict)
        runtimes.append(time.perf_counter() - t0)
    return SurveyStats(signature, tuple(_subset_key(s) for s in subsets),
                       trials, config.seed, tuple(verdicts), tuple(runtimes))
