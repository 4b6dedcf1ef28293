"""Dense complex linear algebra substrate: multi-party pure states, density
matrices, partial traces, Bloch (generalized Gell-Mann) coefficient tables,
Haar sampling, Hermitian eigendecomposition and SVD rank/null-space tools.

Conventions fixed here and relied on by every other module:

- Party ordering is row-major: the first party is the slowest-varying index
  of a flattened state vector or density-matrix row.
- The traceless Hermitian single-party basis is the generalized Gell-Mann
  set, ordered (symmetric, antisymmetric, diagonal) and normalized so that
  ``Tr(B_i B_j) = 2 delta_ij``; at local dimension 2 it reduces to the
  Pauli matrices in the order x, y, z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "PartySignature",
    "SeededRng",
    "AmplitudeTensor",
    "DensityMatrix",
    "BlochTable",
    "haar_random_state",
    "to_density",
    "partial_trace",
    "partial_trace_matrix",
    "coarse_grain",
    "gell_mann_basis",
    "bloch_decompose",
    "bloch_reconstruct",
    "hermitian_eigen",
    "rank_and_nullspace",
    "trace_distance",
    "trace_norm",
    "herm_to_vec",
    "vec_to_herm",
]

HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10
NORM_ATOL = 1e-12

_SQRT2 = np.sqrt(2.0)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PartySignature:
    """Ordered local Hilbert-space dimensions of a multi-party system."""

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]):
        object.__setattr__(self, "dims", tuple(int(d) for d in dims))
        if not self.dims:
            raise ValueError("signature needs at least one party")
        if any(d < 2 for d in self.dims):
            raise ValueError(f"every local dimension must be >= 2, got {self.dims}")

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def subsystem(self, keep: Sequence[int]) -> "PartySignature":
        """Signature of the sub-list of parties in ``keep`` (original order)."""
        keep = _validate_subset(keep, self.n_parties)
        return PartySignature(self.dims[p] for p in keep)

    def is_uniform(self) -> bool:
        return len(set(self.dims)) == 1


class SeededRng:
    """Deterministic random stream with stable, independent substreams.

    Identical seed plus identical call sequence yields identical output.
    ``spawn(i)`` derives the i-th substream; substreams with different index
    paths are statistically independent and individually reproducible.
    """

    def __init__(self, seed: int, _path: tuple[int, ...] = ()):
        self.seed = int(seed)
        self._path = _path
        self.generator = np.random.default_rng((self.seed, *_path))

    def spawn(self, index: int) -> "SeededRng":
        return SeededRng(self.seed, (*self._path, int(index)))

    def complex_normal(self, shape) -> np.ndarray:
        """I.i.d. standard complex Gaussians, real and imaginary parts N(0,1)."""
        g = self.generator
        return g.standard_normal(shape) + 1j * g.standard_normal(shape)

    def __repr__(self) -> str:  # pragma: no cover
        return f"SeededRng(seed={self.seed}, path={self._path})"


@dataclass(frozen=True)
class AmplitudeTensor:
    """Normalized pure state as a complex array with one index per party."""

    signature: PartySignature
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amps.shape != self.signature.dims:
            raise ValueError(
                f"amplitude shape {amps.shape} does not match signature {self.signature.dims}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {norm!r} is not 1 within {NORM_ATOL}")
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @classmethod
    def from_vector(cls, vec, dims: Iterable[int]) -> "AmplitudeTensor":
        sig = PartySignature(dims)
        return cls(sig, np.asarray(vec, dtype=complex).reshape(sig.dims))

    def vector(self) -> np.ndarray:
        """Flat state vector in the row-major index convention."""
        return self.amplitudes.reshape(-1)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator with a party signature."""

    signature: PartySignature
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.ascontiguousarray(self.matrix, dtype=complex)
        t = self.signature.total_dim
        if mat.shape != (t, t):
            raise ValueError(f"matrix shape {mat.shape} does not match total dimension {t}")
        herm_err = np.abs(mat - mat.conj().T).max()
        if herm_err > HERMITICITY_ATOL:
            raise ValueError(f"matrix is not Hermitian (max deviation {herm_err:.3e})")
        tr = np.trace(mat)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {tr!r} is not 1 within {TRACE_ATOL}")
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < -PSD_ATOL:
            raise ValueError(f"matrix has negative eigenvalue {min_eig:.3e}")
        object.__setattr__(self, "matrix", _freeze(mat))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.signature.dims

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def haar_random_state(signature: PartySignature, rng: SeededRng) -> AmplitudeTensor:
    """Draw a Haar-distributed pure state on the given signature.

    Amplitudes are i.i.d. standard complex Gaussians normalized to unit norm,
    which is exactly the unitarily invariant distribution on the sphere.
    """
    amps = rng.complex_normal(signature.dims)
    amps /= np.linalg.norm(amps)
    return AmplitudeTensor(signature, amps)


def to_density(state: AmplitudeTensor) -> DensityMatrix:
    """Rank-one density matrix of a pure state."""
    v = state.vector()
    return DensityMatrix(state.signature, np.outer(v, v.conj()))


def _validate_subset(keep: Sequence[int], n_parties: int) -> tuple[int, ...]:
    keep = tuple(sorted(int(p) for p in keep))
    if not keep:
        raise ValueError("subset of parties must be non-empty")
    if len(set(keep)) != len(keep):
        raise ValueError(f"subset has repeated parties: {keep}")
    if keep[0] < 0 or keep[-1] >= n_parties:
        raise ValueError(f"party index out of range in {keep} (n_parties={n_parties})")
    return keep


def partial_trace_matrix(mat: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace of a square matrix over all parties not in ``keep``.

    Works on any operator (not only density matrices); linear and
    trace-preserving. ``keep`` is returned in ascending party order.
    """
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    keep = _validate_subset(keep, n)
    t = np.asarray(mat, dtype=complex).reshape(dims + dims)
    row = list(range(n))
    col = [n + p if p in keep else p for p in range(n)]
    out = [p for p in keep] + [n + p for p in keep]
    reduced = np.einsum(t, row + col, out)
    dk = int(np.prod([dims[p] for p in keep]))
    return reduced.reshape(dk, dk)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix on the parties in ``keep``."""
    reduced = partial_trace_matrix(rho.matrix, rho.dims, keep)
    return DensityMatrix(rho.signature.subsystem(keep), reduced)


def coarse_grain(state: AmplitudeTensor, group_sizes: Sequence[int]) -> AmplitudeTensor:
    """Merge consecutive parties into coarse parties of the given group sizes.

    The amplitudes are unchanged; only the indexing is regrouped, which is
    consistent because parties are row-major ordered.
    """
    sizes = [int(g) for g in group_sizes]
    if any(g < 1 for g in sizes) or sum(sizes) != state.signature.n_parties:
        raise ValueError(
            f"group sizes {sizes} do not partition {state.signature.n_parties} parties"
        )
    dims = state.signature.dims
    merged = []
    pos = 0
    for g in sizes:
        merged.append(int(np.prod(dims[pos:pos + g])))
        pos += g
    return AmplitudeTensor(PartySignature(merged), state.amplitudes.reshape(merged))


# ---------------------------------------------------------------------------
# Bloch (generalized Gell-Mann) decomposition
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def gell_mann_basis(d: int) -> np.ndarray:
    """Single-party operator basis of shape ``(d*d, d, d)``.

    Index 0 is the identity; indices 1..d^2-1 are the traceless Hermitian
    generalized Gell-Mann matrices ordered (symmetric, antisymmetric,
    diagonal), normalized so ``Tr(B_i B_j) = 2 delta_ij``. For d=2 this is
    (I, sigma_x, sigma_y, sigma_z).
    """
    if d < 2:
        raise ValueError("local dimension must be >= 2")
    mats = [np.eye(d, dtype=complex)]
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = 1.0
            mats.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -float(l)
        m *= np.sqrt(2.0 / (l * (l + 1)))
        mats.append(m)
    return _freeze(np.stack(mats))


@dataclass(frozen=True)
class BlochTable:
    """Real coefficients of a density matrix over tensor products of the
    single-party basis from :func:`gell_mann_basis`.

    Keys are per-party label tuples; label 0 is the identity slot. The
    normalization is ``rho = d^{-n} * sum_t c_t B_{t_1} x ... x B_{t_n}``,
    so the all-identity coefficient is always 1.
    """

    signature: PartySignature
    coefficients: Mapping[tuple[int, ...], float]

    def __post_init__(self):
        if not self.signature.is_uniform():
            raise ValueError("Bloch tables require all local dimensions equal")
        ident = (0,) * self.signature.n_parties
        c0 = self.coefficients.get(ident)
        if c0 is None or abs(c0 - 1.0) > 1e-10:
            raise ValueError("all-identity coefficient must be 1")

    def nonzero(self, tol: float = 1e-10) -> dict[tuple[int, ...], float]:
        """Coefficients with magnitude above ``tol``, identity slot excluded."""
        ident = (0,) * self.signature.n_parties
        return {
            t: c for t, c in sorted(self.coefficients.items())
            if t != ident and abs(c) > tol
        }


def bloch_decompose(rho: DensityMatrix) -> BlochTable:
    """Expand a density matrix over the generalized Gell-Mann product basis.

    All local dimensions must be equal. Coefficients are real up to
    Hermiticity rounding; the imaginary parts are discarded after a
    magnitude check.
    """
    sig = rho.signature
    if not sig.is_uniform():
        raise ValueError("bloch_decompose requires all local dimensions equal")
    d = sig.dims[0]
    n = sig.n_parties
    basis = gell_mann_basis(d)
    # traces[t_1..t_n] = Tr(rho * B_{t_1} x ... x B_{t_n})
    #                  = sum_{r,c} rho[r, c] * prod_p basis[t_p, c_p, r_p]
    args: list = [rho.matrix.reshape(sig.dims * 2), list(range(2 * n))]
    for p in range(n):
        args.extend([basis, [2 * n + p, n + p, p]])
    traces = np.einsum(*args, list(range(2 * n, 3 * n)), optimize=True)
    coeffs = {}
    scale = d / 2.0
    for labels in itertools.product(range(d * d), repeat=n):
        support = sum(1 for x in labels if x != 0)
        val = traces[labels] * scale ** support
        if abs(val.imag) > 1e-9:
            raise ValueError(f"non-real Bloch coefficient at {labels}: {val!r}")
        coeffs[labels] = float(val.real)
    return BlochTable(sig, coeffs)


def bloch_reconstruct(table: BlochTable) -> DensityMatrix:
    """Rebuild the density matrix from its Bloch coefficient table."""
    sig = table.signature
    d = sig.dims[0]
    n = sig.n_parties
    basis = gell_mann_basis(d)
    total = sig.total_dim
    acc = np.zeros((total, total), dtype=complex)
    for labels, c in table.coefficients.items():
        if c == 0.0:
            continue
        op = basis[labels[0]]
        for b in labels[1:]:
            op = np.kron(op, basis[b])
        acc += c * op
    acc /= float(d ** n)
    return DensityMatrix(sig, acc)


# ---------------------------------------------------------------------------
# Eigen / SVD utilities
# ---------------------------------------------------------------------------

def hermitian_eigen(matrix: np.ndarray, herm_atol: float = HERMITICITY_ATOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as unitary columns. Raises if the input deviates from
    Hermiticity by more than ``herm_atol``.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m - m.conj().T).max()
    if dev > herm_atol:
        raise ValueError(f"matrix is not Hermitian within {herm_atol} (deviation {dev:.3e})")
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    return vals, vecs


def rank_and_nullspace(matrix: np.ndarray, tol: float | None = None,
                       rtol: float | None = None):
    """Numerical rank and an orthonormal null-space basis via SVD.

    The zero threshold is ``max(rows, cols) * eps * sigma_max`` unless an
    absolute ``tol`` or relative ``rtol`` (times ``sigma_max``) is supplied.
    Returns ``(rank, null_basis)`` where the basis columns span the kernel.
    """
    m = np.atleast_2d(np.asarray(matrix))
    if m.size == 0:
        raise ValueError("empty matrix")
    _, s, vh = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    if tol is not None:
        threshold = float(tol)
    elif rtol is not None:
        threshold = float(rtol) * smax
    else:
        threshold = max(m.shape) * np.finfo(float).eps * smax
    rank = int(np.sum(s > threshold))
    null_basis = vh[rank:].conj().T
    return rank, null_basis


def trace_distance(a, b) -> float:
    """Trace distance ``0.5 * ||a - b||_1`` between Hermitian matrices."""
    am = a.matrix if isinstance(a, DensityMatrix) else np.asarray(a)
    bm = b.matrix if isinstance(b, DensityMatrix) else np.asarray(b)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(am - bm))))


def trace_norm(x: np.ndarray) -> float:
    """Sum of singular values of a Hermitian matrix (sum of |eigenvalues|)."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(x))))


# ---------------------------------------------------------------------------
# Real coordinates on Hermitian space
# ---------------------------------------------------------------------------
#
# A Hermitian T x T matrix maps to a real vector of length T^2 such that the
# Euclidean inner product of coordinates equals the Hilbert-Schmidt inner
# product of matrices. Layout: diagonal, then sqrt(2)*Re(upper), then
# sqrt(2)*Im(upper).

@lru_cache(maxsize=None)
def _triu(t: int):
    iu = np.triu_indices(t, 1)
    return iu[0].copy(), iu[1].copy()


def herm_to_vec(x: np.ndarray) -> np.ndarray:
    """Isometric real coordinates of Hermitian matrices (batchable)."""
    t = x.shape[-1]
    iu0, iu1 = _triu(t)
    diag = np.real(x[..., np.arange(t), np.arange(t)])
    up = x[..., iu0, iu1]
    return np.concatenate([diag, _SQRT2 * np.real(up), _SQRT2 * np.imag(up)], axis=-1)


def vec_to_herm(v: np.ndarray, t: int) -> np.ndarray:
    """Inverse of :func:`herm_to_vec`."""
    iu0, iu1 = _triu(t)
    no = iu0.size
    out = np.zeros(v.shape[:-1] + (t, t), dtype=complex)
    out[..., np.arange(t), np.arange(t)] = v[..., :t]
    up = (v[..., t:t + no] + 1j * v[..., t + no:]) / _SQRT2
    out[..., iu0, iu1] = up
    out[..., iu1, iu0] = np.conj(up)
    return out
