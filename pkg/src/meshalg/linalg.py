"""Exact linear algebra over the rationals and prime fields.

Everything is exact: Fraction arithmetic over QQ, int arithmetic mod p
over GF(p).  Matrices are small (a few hundred rows at most), so the QQ
lane is a straightforward fraction Gauss-Jordan; the GF(p) lane goes
through the dense int64 kernels in :mod:`meshalg.kernels` (numba-jitted
with a numpy fallback).
"""

from __future__ import annotations

import numpy as np

from .fields import PrimeField
from .kernels import rref_modp


def rref(rows, field):
    """Reduced row echelon form with pivot normalization.

    ``rows`` is a list of equal-length lists of field scalars.  Returns
    (list of nonzero reduced rows, list of pivot column indices).
    """
    if not rows:
        return [], []
    if isinstance(field, PrimeField):
        a = np.array([[int(x) for x in r] for r in rows], dtype=np.int64)
        red, piv = rref_modp(a, field.p)
        out = [[int(x) for x in red[i]] for i in range(len(piv))]
        return out, [int(c) for c in piv]

    mat = [list(r) for r in rows]
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(mat):
            break
        pr = next((i for i in range(r, len(mat)) if not field.is_zero(mat[i][c])), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[: len(pivots)], pivots


class ExactMatrix:
    """A dense exact matrix with optional row/column labels.

    Thin wrapper holding field scalars row-major; ranks, kernels and
    solves are exact (no floating point anywhere).
    """

    def __init__(self, rows, field, nrows=None, ncols=None, row_labels=None, col_labels=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows) if nrows is None else nrows
        self.ncols = (len(self.rows[0]) if self.rows else 0) if ncols is None else ncols
        self.row_labels = row_labels
        self.col_labels = col_labels

    @classmethod
    def zeros(cls, nrows, ncols, field):
        z = field.zero
        return cls([[z] * ncols for _ in range(nrows)], field, nrows, ncols)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __setitem__(self, ij, val):
        self.rows[ij[0]][ij[1]] = val

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return ExactMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.field,
        )

    def matmul(self, other):
        assert self.ncols == other.nrows
        f = self.field
        out = ExactMatrix.zeros(self.nrows, other.ncols, f)
        for i in range(self.nrows):
            ri = self.rows[i]
            for k in range(self.ncols):
                a = ri[k]
                if f.is_zero(a):
                    continue
                rk = other.rows[k]
                oi = out.rows[i]
                for j in range(other.ncols):
                    if not f.is_zero(rk[j]):
                        oi[j] = f.add(oi[j], f.mul(a, rk[j]))
        return out

    def apply(self, vec):
        """Matrix-vector product (vec has length ncols)."""
        f = self.field
        out = [f.zero] * self.nrows
        for i in range(self.nrows):
            acc = f.zero
            ri = self.rows[i]
            for j, v in enumerate(vec):
                if not f.is_zero(v) and not f.is_zero(ri[j]):
                    acc = f.add(acc, f.mul(ri[j], v))
            out[i] = acc
        return out

    def rank(self):
        _, piv = rref(self.rows, self.field)
        return len(piv)

    def rref(self):
        return rref(self.rows, self.field)

    def nullspace(self):
        """Basis of the right kernel, one vector per free column."""
        f = self.field
        red, piv = rref(self.rows, f)
        pivset = set(piv)
        free = [j for j in range(self.ncols) if j not in pivset]
        basis = []
        for j in free:
            v = [f.zero] * self.ncols
            v[j] = f.one
            for r, p in zip(red, piv):
                if not f.is_zero(r[j]):
                    v[p] = f.neg(r[j])
            basis.append(v)
        return basis

    def solve(self, rhs):
        """One solution of A x = rhs, or None if inconsistent."""
        f = self.field
        aug = [list(r) + [b] for r, b in zip(self.rows, rhs)]
        red, piv = rref(aug, f)
        x = [f.zero] * self.ncols
        for r, p in zip(red, piv):
            if p == self.ncols:
                return None
            x[p] = r[-1]
        return x

    def is_zero(self):
        f = self.field
        return all(f.is_zero(x) for r in self.rows for x in r)


def row_space_rank(vectors, field):
    """Rank of the span of a list of coordinate vectors."""
    vecs = [v for v in vectors if any(not field.is_zero(x) for x in v)]
    if not vecs:
        return 0
    _, piv = rref(vecs, field)
    return len(piv)
