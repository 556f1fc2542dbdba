"""Dense exact linear algebra over the prime field Z/pZ.

Vectors and matrices are plain numpy integer arrays holding residues in
[0, p). All arithmetic is done in int64 and reduced mod p after every
multiply-accumulate, which is safe for p < 2**16.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p) or p >= MAX_PRIME:
        raise ValueError(f"p={p} is not a prime below {MAX_PRIME}")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Table t with t[a] * a = 1 mod p for a != 0; t[0] is 0 and never used."""
    check_prime(p)
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, p - 2, p)
    table.flags.writeable = False
    return table


def ff_inv(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("no inverse of zero")
    return int(inverse_table(p)[a])


def as_matrix(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A % p


def weight(v) -> int:
    return int(np.count_nonzero(v))


def rref(M, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form of M over F_p.

    Pivot rows are chosen as the first row (in current order) with a nonzero
    entry in the pivot column, so the result is deterministic.

    Returns (R, rank, pivots); R has the same shape as M with zero rows last.
    """
    inv = inverse_table(p)
    R = as_matrix(M, p)
    nrows, ncols = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = (R[row] * inv[R[row, col]]) % p
        factors = R[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            R[hit] = (R[hit] - np.outer(factors[hit], R[row])) % p
        pivots.append(col)
        row += 1
    return R, row, pivots


def rank(M, p: int) -> int:
    return rref(M, p)[1]


def kernel_basis(M, p: int) -> np.ndarray:
    """Basis of {v : M v = 0}, one vector per row (shape (n - rank, n))."""
    A = as_matrix(M, p)
    ncols = A.shape[1]
    R, r, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for j, pc in enumerate(pivots):
            K[i, pc] = (-R[j, f]) % p
    return K


def left_kernel_basis(M, p: int) -> np.ndarray:
    """Basis of {c : c M = 0}."""
    return kernel_basis(as_matrix(M, p).T, p)


def in_row_space(v, M, p: int) -> np.ndarray | None:
    """Coefficients c with c @ M = v (mod p), or None if v is not in the row space."""
    A = as_matrix(M, p)
    v = np.asarray(v, dtype=np.int64) % p
    if v.ndim != 1 or v.shape[0] != A.shape[1]:
        raise ValueError(f"vector of length {v.shape} does not match {A.shape[1]} columns")
    r = A.shape[0]
    # Row-reduce [M^T | v]; a pivot in the last column means inconsistency.
    aug = np.concatenate([A.T, v.reshape(-1, 1)], axis=1)
    R, rk, pivots = rref(aug, p)
    if pivots and pivots[-1] == r:
        return None
    c = np.zeros(r, dtype=np.int64)
    for j, pc in enumerate(pivots):
        c[pc] = R[j, r]
    return c


def row_space_contains(v, M, p: int) -> bool:
    return in_row_space(v, M, p) is not None


def row_basis(M, p: int) -> np.ndarray:
    """Nonzero rows of the rref of M: a canonical basis of the row space."""
    R, r, _ = rref(M, p)
    return R[:r]
