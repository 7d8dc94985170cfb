"""Dense linear algebra over a finite field on numpy int32 encoding arrays.

All routines are table-driven and exact: a GFTables bundle supplies
addition/multiplication lookup tables (q x q) plus negation/inversion
vectors, and a row operation is a pair of fancy-indexing passes.  FieldCtx
provides bundles for F_q and, when needed, for F_{q^2}.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class GFTables(NamedTuple):
    add: np.ndarray  # (q, q)
    mul: np.ndarray  # (q, q)
    neg: np.ndarray  # (q,)
    inv: np.ndarray  # (q,), entry 0 unused


def tables_from_ops(q, add_fn, mul_fn, neg_fn, inv_fn) -> GFTables:
    add = np.empty((q, q), dtype=np.int32)
    mul = np.empty((q, q), dtype=np.int32)
    for a in range(q):
        for b in range(q):
            add[a, b] = add_fn(a, b)
            mul[a, b] = mul_fn(a, b)
    neg = np.array([neg_fn(a) for a in range(q)], dtype=np.int32)
    inv = np.array([0] + [inv_fn(a) for a in range(1, q)], dtype=np.int32)
    return GFTables(add, mul, neg, inv)


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=np.int32)


def identity(n: int) -> np.ndarray:
    m = zeros((n, n))
    np.fill_diagonal(m, 1)
    return m


def matmul(ft: GFTables, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(m x n) @ (n x r), accumulating one inner index at a time."""
    m, n = a.shape
    n2, r = b.shape
    assert n == n2, (a.shape, b.shape)
    out = zeros((m, r))
    for k in range(n):
        col = a[:, k]
        if not col.any():
            continue
        out = ft.add[out, ft.mul[col[:, None], b[k, :][None, :]]]
    return out


def kron(ft: GFTables, mats) -> np.ndarray:
    """Kronecker product, leftmost factor slowest."""
    out = np.array([[1]], dtype=np.int32)
    for m in mats:
        out = ft.mul[np.kron(out, np.ones(m.shape, dtype=np.int32)),
                     np.kron(np.ones(out.shape, dtype=np.int32), np.asarray(m, dtype=np.int32))]
    return out


def kron_apply(ft: GFTables, mats, v: np.ndarray) -> np.ndarray:
    """Apply (kron of mats) to the columns of v without forming the product.

    Cost per column is a sum over factor dimensions instead of the square
    of the product dimension.
    """
    dims = [m.shape[1] for m in mats]
    out_rows = 1
    for m in mats:
        out_rows *= m.shape[0]
    ncols = v.shape[1]
    t = v.reshape(dims + [ncols])
    for i, m in enumerate(mats):
        t = np.moveaxis(t, i, 0)
        lead = t.shape[0]
        rest = t.size // lead if t.size else 0
        shaped = matmul(ft, np.asarray(m, dtype=np.int32), t.reshape(lead, rest))
        t = shaped.reshape([m.shape[0]] + list(t.shape[1:]))
        t = np.moveaxis(t, 0, i)
    return t.reshape(out_rows, ncols)


def rref(ft: GFTables, a: np.ndarray):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    r = np.array(a, dtype=np.int32, copy=True)
    m, n = r.shape
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + nz[0]
        if pr != row:
            r[[row, pr]] = r[[pr, row]]
        piv = r[row, col]
        if piv != 1:
            r[row] = ft.mul[ft.inv[piv], r[row]]
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            factors = ft.neg[r[others, col]]
            r[others] = ft.add[r[others], ft.mul[factors[:, None], r[row][None, :]]]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(ft: GFTables, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    _, pivots = rref(ft, a)
    return len(pivots)


def sparse_rank_modp(cols, p: int) -> int:
    """Rank over F_p of a matrix given as sparse columns (row -> coeff dicts).

    Column-by-column elimination against previously chosen pivot rows; fine
    for matrices with few columns and sparse support, as produced by the
    operator constructors (whose coefficients all lie in the prime field,
    where rank agrees with the rank over any extension).
    """
    pivots: list[tuple[int, dict[int, int]]] = []
    rank_ = 0
    for col in cols:
        cur = {r: c % p for r, c in col.items() if c % p}
        for r, pivcol in pivots:
            c = cur.get(r)
            if c:
                for r2, c2 in pivcol.items():
                    v = (cur.get(r2, 0) - c * c2) % p
                    if v:
                        cur[r2] = v
                    elif r2 in cur:
                        del cur[r2]
        if cur:
            r = min(cur)
            inv = pow(cur[r], p - 2, p)
            norm = {r2: (c2 * inv) % p for r2, c2 in cur.items()}
            pivots.append((r, norm))
            rank_ += 1
    return rank_


def nullspace(ft: GFTables, a: np.ndarray) -> np.ndarray:
    """Basis of the right kernel, one solution per row."""
    m, n = a.shape
    r, pivots = rref(ft, a)
    free = [c for c in range(n) if c not in pivots]
    basis = zeros((len(free), n))
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for prow, pcol in enumerate(pivots):
            basis[i, pcol] = ft.neg[r[prow, fc]]
    return basis
