"""Shared fixtures and independent reference implementations.

The reference code here deliberately avoids the library's own vectorized
paths (explicit loops, legacy RandomState generator) so tests compare two
independent routes to the same numbers.
"""

import itertools

import numpy as np
import pytest

from qmarginal.tensor import AmplitudeTensor, PartySignature


PAULI = {
    0: np.eye(2, dtype=complex),
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def ghz_state(n: int = 3, a: float = None) -> AmplitudeTensor:
    amp = 1 / np.sqrt(2) if a is None else a
    vec = np.zeros(2 ** n, dtype=complex)
    vec[0] = amp
    vec[-1] = np.sqrt(1 - abs(amp) ** 2)
    return AmplitudeTensor.from_vector(vec, [2] * n)


def random_hermitian(rng: np.random.Generator, t: int) -> np.ndarray:
    g = rng.standard_normal((t, t)) + 1j * rng.standard_normal((t, t))
    return g + g.conj().T


def random_density(rng: np.random.Generator, t: int) -> np.ndarray:
    g = rng.standard_normal((t, t)) + 1j * rng.standard_normal((t, t))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def slow_partial_trace(mat: np.ndarray, dims, keep) -> np.ndarray:
    """Element-by-element partial trace; quadratic loops, no einsum."""
    dims = list(dims)
    n = len(dims)
    keep = sorted(keep)
    drop = [p for p in range(n) if p not in keep]
    keep_dims = [dims[p] for p in keep]
    drop_dims = [dims[p] for p in drop]
    dk = int(np.prod(keep_dims))
    out = np.zeros((dk, dk), dtype=complex)
    strides = np.cumprod([1] + dims[::-1])[::-1][1:]  # row-major strides

    def flat(idx):
        return int(sum(i * s for i, s in zip(idx, strides)))

    for ridx, row_keep in enumerate(itertools.product(*[range(d) for d in keep_dims])):
        for cidx, col_keep in enumerate(itertools.product(*[range(d) for d in keep_dims])):
            acc = 0.0 + 0.0j
            for shared in itertools.product(*[range(d) for d in drop_dims]):
                row = [0] * n
                col = [0] * n
                for p, v in zip(keep, row_keep):
                    row[p] = v
                for p, v in zip(keep, col_keep):
                    col[p] = v
                for p, v in zip(drop, shared):
                    row[p] = v
                    col[p] = v
                acc += mat[flat(row), flat(col)]
            out[ridx, cidx] = acc
    return out


def kron_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


@pytest.fixture
def np_rng():
    return np.random.default_rng(20260808)
