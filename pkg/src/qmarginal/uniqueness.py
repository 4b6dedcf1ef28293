"""Linear uniqueness test for tripartite pure states given two overlapping
two-party marginals.

Matching a tripartite state's AB and AC reduced states forces any
system-plus-environment purification into a rigid form. Writing the
purification's environment components as unknown vectors e(l,k) (from the
AB form) and f(r,j) (from the AC form), consistency of the two forms is a
homogeneous linear system whose scalar coefficient matrix depends only on
the state's amplitudes. The identity pattern e(l,k) = delta_lk * e,
f(r,j) = delta_rj * e always solves it; when it is the *only* solution the
purification is the original state tensored with an environment state, so
the state is uniquely determined by those two marginals among all density
matrices. This module builds the system, analyzes its kernel, replays the
block-by-block elimination argument, and maps the tripartite result onto
many-party systems via coarse graining.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import AmplitudeTensor, rank_and_nullspace

__all__ = [
    "TripartiteShape",
    "ConsistencyMatrix",
    "UniquenessVerdict",
    "UNIQUE_LINEAR",
    "DEGENERATE",
    "RankDeficientBlockError",
    "EliminationStep",
    "EliminationReport",
    "PartySplit",
    "build_consistency_matrix",
    "identity_pattern_vector",
    "check_linear_uniqueness",
    "sequential_elimination_trace",
    "party_split",
]

UNIQUE_LINEAR = "UNIQUE_LINEAR"
DEGENERATE = "DEGENERATE"

DEFAULT_RANK_RTOL = 1e-8
DEFAULT_PATTERN_TOL = 1e-8


@dataclass(frozen=True)
class TripartiteShape:
    """Dimensions (M, N, P) of the three coarse parties A, B, C."""

    M: int
    N: int
    P: int

    def __post_init__(self):
        if min(self.M, self.N, self.P) < 1:
            raise ValueError(f"dimensions must be >= 1, got {self}")

    @property
    def satisfies_bound(self) -> bool:
        """Whether M >= N + P - 1, the regime where the generic kernel is a line."""
        return self.M >= self.N + self.P - 1

    @property
    def n_unknowns(self) -> int:
        return self.P * self.P + self.N * self.N

    @property
    def n_equations(self) -> int:
        return self.M * self.N * self.P


@dataclass(frozen=True)
class ConsistencyMatrix:
    """Coefficient matrix K of the homogeneous system in the environment
    unknowns, with row (i,j,k) encoding
    ``sum_l a[i,j,l] e(l,k) - sum_r a[i,r,k] f(r,j) = 0``.

    Columns are all e(l,k) in (l,k) lexicographic order followed by all
    f(r,j) in (r,j) lexicographic order (0-based indices).
    """

    shape: TripartiteShape
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        expect = (self.shape.n_equations, self.shape.n_unknowns)
        if self.matrix.shape != expect:
            raise ValueError(f"matrix shape {self.matrix.shape} != {expect}")
        self.matrix.setflags(write=False)

    def column_of(self, kind: str, a: int, b: int) -> int:
        """Column index of unknown e(a,b) or f(a,b), 0-based."""
        p, n = self.shape.P, self.shape.N
        if kind == "e":
            if not (0 <= a < p and 0 <= b < p):
                raise ValueError(f"e index ({a},{b}) out of range for P={p}")
            return a * p + b
        if kind == "f":
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"f index ({a},{b}) out of range for N={n}")
            return p * p + a * n + b
        raise ValueError(f"unknown kind {kind!r}")

    @property
    def column_index(self) -> dict[tuple[str, int, int], int]:
        p, n = self.shape.P, self.shape.N
        idx = {("e", l, k): l * p + k for l in range(p) for k in range(p)}
        idx.update({("f", r, j): p * p + r * n + j for r in range(n) for j in range(n)})
        return idx


@dataclass(frozen=True)
class UniquenessVerdict:
    """Outcome of the kernel analysis of a consistency matrix."""

    null_dim: int
    identity_pattern_match: bool
    residual: float
    verdict: str
    kernel: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = UNIQUE_LINEAR if (self.null_dim == 1 and self.identity_pattern_match) else DEGENERATE
        if self.verdict != expected:
            raise ValueError("verdict inconsistent with null_dim / pattern match")


def _tripartite(a: AmplitudeTensor) -> TripartiteShape:
    if a.signature.n_parties != 3:
        raise ValueError(
            f"expected a tripartite state, got {a.signature.n_parties} parties"
        )
    m, n, p = a.signature.dims
    return TripartiteShape(m, n, p)


def build_consistency_matrix(a: AmplitudeTensor) -> ConsistencyMatrix:
    """Assemble K for a tripartite state with signature (M, N, P).

    K has M*N*P rows and P^2 + N^2 columns; the entry of row (i,j,k) at
    column e(l,k) is a[i,j,l] and at column f(r,j) is -a[i,r,k].
    """
    shape = _tripartite(a)
    m, n, p = shape.M, shape.N, shape.P
    amps = a.amplitudes
    k_mat = np.zeros((m * n * p, shape.n_unknowns), dtype=complex)
    kt = k_mat.reshape(m, n, p, shape.n_unknowns)
    for k in range(p):
        for l in range(p):
            kt[:, :, k, l * p + k] = amps[:, :, l]
    for j in range(n):
        for r in range(n):
            kt[:, j, :, p * p + r * n + j] -= amps[:, r, :]
    return ConsistencyMatrix(shape, k_mat)


def identity_pattern_vector(shape: TripartiteShape) -> np.ndarray:
    """Unit vector with 1 at every diagonal unknown e(l,l) and f(r,r).

    It lies in the kernel of every consistency matrix because the two sums
    in each row then both reduce to the same amplitude.
    """
    p, n = shape.P, shape.N
    v = np.zeros(shape.n_unknowns, dtype=complex)
    for l in range(p):
        v[l * p + l] = 1.0
    for r in range(n):
        v[p * p + r * n + r] = 1.0
    return v / np.sqrt(n + p)


def check_linear_uniqueness(a: AmplitudeTensor,
                            rank_rtol: float = DEFAULT_RANK_RTOL,
                            pattern_tol: float = DEFAULT_PATTERN_TOL) -> UniquenessVerdict:
    """Kernel analysis of the consistency matrix of a tripartite state.

    The verdict is UNIQUE_LINEAR iff the numerical kernel is one-dimensional
    and spanned by the identity-pattern vector (residual below
    ``pattern_tol``); any purification matching the AB and AC marginals is
    then the original state tensored with one environment state. Degenerate
    kernels are reported, never raised: non-generic states are a study
    target in their own right.
    """
    cm = build_consistency_matrix(a)
    _, null_basis = rank_and_nullspace(cm.matrix, rtol=rank_rtol)
    null_dim = null_basis.shape[1]
    v_id = identity_pattern_vector(cm.shape)
    # Distance from the identity pattern to its projection on the kernel.
    proj = null_basis @ (null_basis.conj().T @ v_id)
    residual = float(np.linalg.norm(v_id - proj))
    match = null_dim == 1 and residual < pattern_tol
    verdict = UNIQUE_LINEAR if match else DEGENERATE
    return UniquenessVerdict(null_dim, match, residual, verdict, null_basis)


class RankDeficientBlockError(Exception):
    """A block of the sequential elimination was rank deficient (non-generic
    input); carries the 1-based step index and the step label."""

    def __init__(self, step: int, label: str, rank: int, needed: int):
        self.step = step
        self.label = label
        self.rank = rank
        self.needed = needed
        super().__init__(
            f"step {step} ({label}): block rank {rank} < {needed}; "
            "input amplitudes are not generic"
        )


@dataclass(frozen=True)
class EliminationStep:
    """Per-block record of the sequential elimination."""

    index: int
    label: str
    n_rows: int
    unknowns: tuple[str, ...]
    rank: int
    residual: float
    values: dict[str, complex]


@dataclass(frozen=True)
class EliminationReport:
    steps: tuple[EliminationStep, ...]
    solution: np.ndarray = field(repr=False)
    max_deviation: float = 0.0
    verdict: str = UNIQUE_LINEAR


def sequential_elimination_trace(a: AmplitudeTensor,
                                 rank_rtol: float = DEFAULT_RANK_RTOL,
                                 pattern_tol: float = DEFAULT_PATTERN_TOL) -> EliminationReport:
    """Replay the block elimination that solves the consistency system.

    Gauge: e(0,0) is pinned to 1 (the kernel's one free direction). The
    first block uses the rows (i, j=0, k=0) and solves the remaining e(.,0)
    and f(.,0); each following block k solves e(.,k) from rows (i, 0, k);
    finally each block j >= 1 solves f(.,j) from rows (i, j, .). Every block
    is solved by least squares on the current numeric values rather than by
    assuming previously solved unknowns are exactly zero, so rounding is
    tracked instead of compounded. A rank-deficient block aborts with
    :class:`RankDeficientBlockError`.

    Requires M >= N + P - 1; the final solution must agree with
    :func:`check_linear_uniqueness` on generic inputs.
    """
    shape = _tripartite(a)
    if not shape.satisfies_bound:
        raise ValueError(
            f"sequential elimination needs M >= N + P - 1, got {shape}"
        )
    m, n, p = shape.M, shape.N, shape.P
    amps = a.amplitudes
    e = np.full((p, p), np.nan + 0j)
    f = np.full((n, n), np.nan + 0j)
    e[0, 0] = 1.0  # gauge: the free direction is normalized here
    steps: list[EliminationStep] = []

    def solve_block(index, label, block, rhs, labels):
        rank, _ = rank_and_nullspace(block, rtol=rank_rtol)
        if rank < block.shape[1]:
            raise RankDeficientBlockError(index, label, rank, block.shape[1])
        sol, res2, *_ = np.linalg.lstsq(block, rhs, rcond=None)
        residual = float(np.linalg.norm(block @ sol - rhs))
        steps.append(EliminationStep(
            index, label, block.shape[0], tuple(labels), rank, residual,
            {lab: complex(val) for lab, val in zip(labels, sol)},
        ))
        return sol

    # Block 1: rows (i, 0, 0); unknowns e(1..P-1, 0) and f(0..N-1, 0).
    labels = [f"e({l},0)" for l in range(1, p)] + [f"f({r},0)" for r in range(n)]
    block = np.zeros((m, n + p - 1), dtype=complex)
    block[:, :p - 1] = amps[:, 0, 1:]            # e(l,0), l >= 1
    block[:, p - 1:] = -amps[:, :, 0]            # f(r,0)
    rhs = -amps[:, 0, 0] * e[0, 0]
    sol = solve_block(1, "rows (i,0,0)", block, rhs, labels)
    e[1:, 0] = sol[:p - 1]
    f[:, 0] = sol[p - 1:]

    # Blocks k = 1..P-1: rows (i, 0, k); unknowns e(., k).
    for k in range(1, p):
        labels = [f"e({l},{k})" for l in range(p)]
        block = amps[:, 0, :]                    # coefficient of e(l,k) is a[i,0,l]
        rhs = amps[:, :, k] @ f[:, 0]            # known right-hand side
        sol = solve_block(len(steps) + 1, f"rows (i,0,{k})", block, rhs, labels)
        e[:, k] = sol

    # Blocks j = 1..N-1: rows (i, j, k) for all k; unknowns f(., j).
    for j in range(1, n):
        labels = [f"f({r},{j})" for r in range(n)]
        block = amps.transpose(0, 2, 1).reshape(m * p, n)   # a[i,r,k] on f(r,j)
        rhs = (amps[:, j, :] @ e).reshape(m * p)            # sum_l a[i,j,l] e(l,k)
        sol = solve_block(len(steps) + 1, f"rows (i,{j},k)", block, rhs, labels)
        f[:, j] = sol

    # Assemble the full unknown vector in consistency-matrix column order.
    solution = np.concatenate([e.reshape(-1), f.reshape(-1)])
    target = np.zeros_like(solution)
    for l in range(p):
        target[l * p + l] = 1.0
    for r in range(n):
        target[p * p + r * n + r] = 1.0
    max_dev = float(np.abs(solution - target).max())
    verdict = UNIQUE_LINEAR if max_dev < np.sqrt(n + p) * pattern_tol * 10 else DEGENERATE
    return EliminationReport(tuple(steps), solution, max_dev, verdict)


@dataclass(frozen=True)
class PartySplit:
    """Canonical coarse graining of (3m+1) d-level parties into three groups."""

    shape: TripartiteShape
    marginal_party_count: int
    total_parties: int

    @property
    def fraction(self) -> float:
        return self.marginal_party_count / self.total_parties


def party_split(m: int, d: int, max_total_dim: int = 4096) -> PartySplit:
    """Split 3m+1 d-level parties into groups of sizes (m+1, m, m).

    The coarse shape (d^(m+1), d^m, d^m) satisfies M >= N + P - 1, so two
    marginals covering 2m+1 of the 3m+1 parties suffice for generic states;
    the covered fraction (2m+1)/(3m+1) decreases toward 2/3.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    total_dim = d ** (3 * m + 1)
    if total_dim > max_total_dim:
        raise ValueError(
            f"total dimension {total_dim} exceeds the cap {max_total_dim}"
        )
    shape = TripartiteShape(d ** (m + 1), d ** m, d ** m)
    return PartySplit(shape, 2 * m + 1, 3 * m + 1)
