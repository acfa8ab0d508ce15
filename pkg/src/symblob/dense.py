"""Dense reference constructions, used to cross-check the sparse code.

Everything here materializes full 2^{4n} x 2^{4n} matrices, so it is only
meant for n <= 2.  Symbolic matrices are numpy object arrays of LaurentPoly;
the product skips zero entries but otherwise is the textbook triple loop.
"""

from __future__ import annotations

import numpy as np

from .laurent import ONE, ZERO, LaurentPoly
from .roperators import block_matrix_oracle
from .tensor import SparseOperator, dimension, slot


def zeros(m: int) -> np.ndarray:
    return np.full((m, m), ZERO, dtype=object)


def eye(m: int) -> np.ndarray:
    out = zeros(m)
    for i in range(m):
        out[i, i] = ONE
    return out


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    ra, ca = A.shape
    rb, cb = B.shape
    out = np.full((ra * rb, ca * cb), ZERO, dtype=object)
    for i in range(ra):
        for j in range(ca):
            if A[i, j]:
                for k in range(rb):
                    for l in range(cb):
                        if B[k, l]:
                            out[i * rb + k, j * cb + l] = A[i, j] * B[k, l]
    return out


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n, m = A.shape
    m2, p = B.shape
    assert m == m2
    out = np.full((n, p), ZERO, dtype=object)
    for i in range(n):
        for k in range(m):
            aik = A[i, k]
            if not aik:
                continue
            for j in range(p):
                bkj = B[k, j]
                if bkj:
                    out[i, j] = out[i, j] + aik * bkj
    return out


def to_dense(op: SparseOperator) -> np.ndarray:
    out = zeros(dimension(op.n))
    for v, w, c in op.triplets():
        out[v, w] = c
    return out


def from_dense(A: np.ndarray, n: int) -> SparseOperator:
    cols: dict[int, dict[int, LaurentPoly]] = {}
    rows, ncols = A.shape
    for j in range(ncols):
        for i in range(rows):
            if A[i, j]:
                cols.setdefault(j, {})[i] = A[i, j]
    return SparseOperator(n, cols)


def equal(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and all(x == y for x, y in zip(A.flat, B.flat))


def kron_r(n: int, i: int, q: LaurentPoly) -> np.ndarray:
    """Non-wrapping R^q_i as identity ⊗ block ⊗ identity."""
    if i == 2 * n:
        raise ValueError("the wrapping operator has no Kronecker placement")
    s = slot(i, n)
    left, right = 1 << s, 1 << (4 * n - s - 2)
    return kron(kron(eye(left), block_matrix_oracle(q)), eye(right))


def shift(n: int) -> np.ndarray:
    """Permutation moving the letter at each position one step to the right, cyclically."""
    m = 4 * n
    dim = dimension(n)
    out = zeros(dim)
    for word in range(dim):
        rotated = (word >> 1) | ((word & 1) << (m - 1))
        out[rotated, word] = ONE
    return out


def wrap_r(n: int, q: LaurentPoly) -> np.ndarray:
    """R^q_{2n} obtained by conjugating R^q_{2n-1} with the cyclic shift."""
    S = shift(n)
    return matmul(matmul(S, kron_r(n, 2 * n - 1, q)), S.T)


# -- numeric counterparts --------------------------------------------------------

def numeric_block(q: complex) -> np.ndarray:
    blk = np.zeros((4, 4), dtype=complex)
    blk[1, 1], blk[1, 2], blk[2, 1], blk[2, 2] = q, 1, 1, 1 / q
    return blk


def numeric_kron_r(n: int, i: int, q: complex) -> np.ndarray:
    if i == 2 * n:
        S = numeric_shift(n)
        return S @ numeric_kron_r(n, 2 * n - 1, q) @ S.T
    s = slot(i, n)
    return np.kron(np.kron(np.eye(1 << s), numeric_block(q)), np.eye(1 << (4 * n - s - 2)))


def numeric_shift(n: int) -> np.ndarray:
    m = 4 * n
    dim = dimension(n)
    words = np.arange(dim)
    rotated = (words >> 1) | ((words & 1) << (m - 1))
    out = np.zeros((dim, dim))
    out[rotated, words] = 1
    return out
