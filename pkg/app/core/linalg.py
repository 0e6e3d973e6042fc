"""Exact matrices over Q(i).

Matrices are sympy ``DomainMatrix`` objects over ``QQ_I`` kept in the
sparse (dict-of-dicts) format throughout, so products never mix formats.
Vectors are plain lists of scalars.
"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from app.core.scalars import ONE, ZERO, GaussRat, as_scalar

logger = logging.getLogger(__name__)

Mat = DomainMatrix
Vector = List[GaussRat]


def from_dod(dod: Dict[int, Dict[int, GaussRat]], rows: int, cols: int) -> Mat:
    """Build a matrix from ``{row: {col: value}}``, dropping zeros."""
    clean = {}
    for i, row in dod.items():
        kept = {j: v for j, v in row.items() if v}
        if kept:
            clean[i] = kept
    return DomainMatrix(clean, (rows, cols), QQ_I)


def from_rows(rows: Sequence[Sequence], cols: Optional[int] = None) -> Mat:
    """Build a matrix from nested sequences of ints, fractions, strings or scalars."""
    n_rows = len(rows)
    n_cols = cols if cols is not None else (len(rows[0]) if rows else 0)
    dod = {}
    for i, row in enumerate(rows):
        dod[i] = {j: as_scalar(v) for j, v in enumerate(row)}
    return from_dod(dod, n_rows, n_cols)


def identity(n: int) -> Mat:
    return DomainMatrix.eye(n, QQ_I).to_sparse()


def zeros(rows: int, cols: int) -> Mat:
    return DomainMatrix.zeros((rows, cols), QQ_I).to_sparse()


def diag(values: Sequence) -> Mat:
    n = len(values)
    return from_dod({i: {i: as_scalar(v)} for i, v in enumerate(values)}, n, n)


def dod(A: Mat) -> Dict[int, Dict[int, GaussRat]]:
    return A.to_sparse().to_dod()


def entries(A: Mat) -> List[List[GaussRat]]:
    """Dense row-major copy of the entries."""
    rows, cols = A.shape
    out = [[ZERO] * cols for _ in range(rows)]
    for i, row in dod(A).items():
        for j, v in row.items():
            out[i][j] = v
    return out


def entry(A: Mat, i: int, j: int) -> GaussRat:
    return dod(A).get(i, {}).get(j, ZERO)


def apply(A: Mat, v: Sequence[GaussRat]) -> Vector:
    """Matrix times column vector."""
    rows, _ = A.shape
    out = [ZERO] * rows
    for i, row in dod(A).items():
        acc = ZERO
        for j, a in row.items():
            if v[j]:
                acc += a * v[j]
        out[i] = acc
    return out


def matmul(*mats: Mat) -> Mat:
    result = mats[0]
    for other in mats[1:]:
        result = result.matmul(other)
    return result


def kron(A: Mat, B: Mat) -> Mat:
    """Kronecker product: kron(A, B)(u (x) v) = (A u) (x) (B v)."""
    ra, ca = A.shape
    rb, cb = B.shape
    a_dod, b_dod = dod(A), dod(B)
    out: Dict[int, Dict[int, GaussRat]] = {}
    for i, a_row in a_dod.items():
        for k, b_row in b_dod.items():
            row = out.setdefault(i * rb + k, {})
            for j, a in a_row.items():
                for l, b in b_row.items():
                    row[j * cb + l] = a * b
    return from_dod(out, ra * rb, ca * cb)


def kron_all(mats: Iterable[Mat]) -> Mat:
    result = None
    for m in mats:
        result = m if result is None else kron(result, m)
    return result if result is not None else identity(1)


def is_zero_matrix(A: Mat) -> bool:
    return not dod(A)


def rank(A: Mat) -> int:
    rows, cols = A.shape
    if rows == 0 or cols == 0 or is_zero_matrix(A):
        return 0
    return A.to_sparse().rank()


def rref(A: Mat):
    """Reduced row echelon form with deterministic pivoting (first nonzero column)."""
    rows, cols = A.shape
    if rows == 0 or cols == 0 or is_zero_matrix(A):
        return zeros(rows, cols), ()
    reduced, pivots = A.to_sparse().rref()
    return reduced, tuple(pivots)


def kernel_basis(A: Mat) -> List[Vector]:
    """Echelon-normalized kernel basis: one vector per free column, 1 at that column."""
    _, cols = A.shape
    reduced, pivots = rref(A)
    red = dod(reduced)
    pivot_row = {p: r for r, p in enumerate(pivots)}
    basis = []
    for free in range(cols):
        if free in pivot_row:
            continue
        vec = [ZERO] * cols
        vec[free] = ONE
        for p, r in pivot_row.items():
            value = red.get(r, {}).get(free, ZERO)
            if value:
                vec[p] = -value
        basis.append(vec)
    return basis


def solve(A: Mat, b: Sequence[GaussRat]) -> Optional[Vector]:
    """One exact solution of A v = b (free variables set to 0), or None."""
    rows, cols = A.shape
    aug = {i: dict(r) for i, r in dod(A).items()}
    for i, value in enumerate(b):
        if value:
            aug.setdefault(i, {})[cols] = value
    reduced, pivots = rref(from_dod(aug, rows, cols + 1))
    if cols in pivots:
        return None
    red = dod(reduced)
    solution = [ZERO] * cols
    for r, p in enumerate(pivots):
        solution[p] = red.get(r, {}).get(cols, ZERO)
    return solution


def inverse(A: Mat) -> Optional[Mat]:
    n, m = A.shape
    if n != m or rank(A) < n:
        return None
    return A.to_dense().inv().to_sparse()


def is_invertible(A: Mat) -> bool:
    n, m = A.shape
    return n == m and rank(A) == n


def span_equal(first: Sequence[Vector], second: Sequence[Vector]) -> bool:
    """True when two lists of vectors span the same subspace."""
    if not first and not second:
        return True
    if not first or not second:
        return all(not any(v) for v in list(first) + list(second))
    width = len(first[0])
    a = from_rows(first, width)
    b = from_rows(second, width)
    both = from_rows(list(first) + list(second), width)
    return rank(a) == rank(b) == rank(both)


def permute_factors(n: int, dims: Sequence[int], perm: Sequence[int]) -> Mat:
    """Permutation matrix sending v_0 (x) ... (x) v_{n-1} to v_{perm[0]} (x) ... (x) v_{perm[n-1]}."""
    if len(dims) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"perm {perm} is not a permutation of {n} factors with dims {dims}")
    in_dims = tuple(dims)
    out_dims = tuple(dims[p] for p in perm)
    total = int(np.prod(in_dims)) if n else 1
    if n == 0:
        return identity(1)
    out = {}
    for col in range(total):
        multi = np.unravel_index(col, in_dims)
        row = int(np.ravel_multi_index(tuple(multi[p] for p in perm), out_dims))
        out[row] = {col: ONE}
    return from_dod(out, total, total)
