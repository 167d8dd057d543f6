"""Sparse exact matrices over the cyclotomic scalars.

Morphisms in the graded model are sparse: most structure maps are monomial.
Rows are stored as ``{row: {col: value}}`` with zero entries never stored.
"""
from __future__ import annotations

from typing import Iterable

from .scalars import CycScalar, ONE, ZERO

__all__ = ["SparseMatrix", "nullspace", "solve_affine", "rank_factorization", "invert_dense", "LinearDependence"]


class LinearDependence(ArithmeticError):
    pass


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols, {})

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable) -> "SparseMatrix":
        rows: dict = {}
        for i, j, v in entries:
            v = CycScalar.coerce(v)
            r = rows.setdefault(i, {})
            if j in r:
                v = r[j] + v
            if v.is_zero():
                r.pop(j, None)
            else:
                r[j] = v
        return cls(nrows, ncols, {i: r for i, r in rows.items() if r})

    @classmethod
    def from_dense(cls, data) -> "SparseMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls.from_entries(nrows, ncols, ((i, j, v) for i, row in enumerate(data) for j, v in enumerate(row) if v))

    def to_dense(self) -> list:
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def get(self, i: int, j: int) -> CycScalar:
        return self.rows.get(i, {}).get(j, ZERO)

    def items(self):
        for i in sorted(self.rows):
            r = self.rows[i]
            for j in sorted(r):
                yield i, j, r[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        orows = other.rows
        out = {}
        for i, r in self.rows.items():
            acc: dict = {}
            for k, a in r.items():
                ok = orows.get(k)
                if not ok:
                    continue
                if a.is_one():
                    for j, b in ok.items():
                        c = acc.get(j)
                        acc[j] = b if c is None else c + b
                else:
                    for j, b in ok.items():
                        p = a * b
                        c = acc.get(j)
                        acc[j] = p if c is None else c + p
            acc = {j: v for j, v in acc.items() if not v.is_zero()}
            if acc:
                out[i] = acc
        return SparseMatrix(self.nrows, other.ncols, out)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in addition")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = out.setdefault(i, {})
            for j, v in r.items():
                w = tgt.get(j)
                nv = (v if sign > 0 else -v) if w is None else (w + v if sign > 0 else w - v)
                if nv.is_zero():
                    tgt.pop(j, None)
                else:
                    tgt[j] = nv
            if not tgt:
                del out[i]
        return SparseMatrix(self.nrows, self.ncols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "SparseMatrix":
        c = CycScalar.coerce(c)
        if c.is_zero():
            return SparseMatrix(self.nrows, self.ncols, {})
        if c.is_one():
            return self
        return SparseMatrix(self.nrows, self.ncols, {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def __neg__(self):
        return self.scale(-1)

    def transpose(self) -> "SparseMatrix":
        out: dict = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                out.setdefault(j, {})[i] = v
        return SparseMatrix(self.ncols, self.nrows, out)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    __hash__ = None

    def first_difference(self, other: "SparseMatrix"):
        """(i, j, self[i,j], other[i,j]) for the first differing entry, or None."""
        keys = set()
        for i, r in self.rows.items():
            keys.update((i, j) for j in r)
        for i, r in other.rows.items():
            keys.update((i, j) for j in r)
        for i, j in sorted(keys):
            a, b = self.get(i, j), other.get(i, j)
            if a != b:
                return i, j, a, b
        return None

    def submatrix(self, row_idx, col_idx) -> "SparseMatrix":
        cpos = {c: k for k, c in enumerate(col_idx)}
        out = {}
        for a, i in enumerate(row_idx):
            r = self.rows.get(i)
            if r:
                nr = {cpos[j]: v for j, v in r.items() if j in cpos}
                if nr:
                    out[a] = nr
        return SparseMatrix(len(row_idx), len(col_idx), out)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _reduce_rows(rows: list[dict]):
    """Reduced row echelon form of sparse rows as ``{pivot column: row}``."""
    pivots: dict = {}  # col -> row dict (normalized, pivot entry 1)
    for row in rows:
        r = dict(row)
        # pivot rows are fully reduced, so one pass over pivot columns suffices
        for c in [c for c in r if c in pivots]:
            f = r.pop(c)
            for j, v in pivots[c].items():
                if j == c:
                    continue
                nv = r.get(j, ZERO) - f * v
                if nv.is_zero():
                    r.pop(j, None)
                else:
                    r[j] = nv
        if not r:
            continue
        c0 = min(r)
        inv = r[c0].inverse()
        r = {j: v * inv for j, v in r.items()}
        # back-substitute into existing pivot rows
        for c, pr in pivots.items():
            f = pr.get(c0)
            if f is not None:
                for j, v in r.items():
                    nv = pr.get(j, ZERO) - f * v
                    if nv.is_zero():
                        pr.pop(j, None)
                    else:
                        pr[j] = nv
        pivots[c0] = r
    return pivots


def nullspace(columns: list[dict], nvars: int | None = None) -> list[list[CycScalar]]:
    """Basis of {x : sum_i x_i * columns[i] = 0}.

    Each column is a sparse vector ``{coordinate: value}``.  The basis is the
    canonical one read off the reduced echelon form (free variables set to
    unit vectors in increasing order).
    """
    n = len(columns) if nvars is None else nvars
    # transpose: one equation per coordinate
    eqs: dict = {}
    for i, col in enumerate(columns):
        for key, v in col.items():
            v = CycScalar.coerce(v)
            if not v.is_zero():
                eqs.setdefault(key, {})[i] = v
    pivots = _reduce_rows([eqs[k] for k in sorted(eqs, key=repr)])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for c, r in pivots.items():
            v = r.get(f)
            if v is not None:
                x[c] = -v
        basis.append(x)
    return basis


def rank_factorization(block: SparseMatrix):
    """Write an n x n block as C @ R with C = pivot columns, R = nonzero rows of rref."""
    rows = [block.rows.get(i, {}) for i in range(block.nrows)]
    pivots = _reduce_rows(rows)
    pcols = sorted(pivots)
    C = block.submatrix(list(range(block.nrows)), pcols)
    R = SparseMatrix(len(pcols), block.ncols, {k: dict(pivots[c]) for k, c in enumerate(pcols) if pivots[c]})
    return C, R


def invert_dense(block: SparseMatrix) -> SparseMatrix:
    n = block.nrows
    if n != block.ncols:
        raise LinearDependence("non-square block")
    rows = []
    for i in range(n):
        r = dict(block.rows.get(i, {}))
        r[n + i] = ONE
        rows.append(r)
    pivots = _reduce_rows(rows)
    out = {}
    for c in range(n):
        if c not in pivots:
            raise LinearDependence("block is singular")
        r = {j - n: v for j, v in pivots[c].items() if j >= n}
        if any(j < n and j != c for j in pivots[c]):
            raise LinearDependence("block is singular")
        if r:
            out[c] = r
    return SparseMatrix(n, n, out)


def solve_affine(columns: list[dict], target: dict):
    """One x with sum_i x_i columns[i] = target, or None if the system is inconsistent."""
    n = len(columns)
    neg = {k: -CycScalar.coerce(v) for k, v in target.items()}
    for x in nullspace(list(columns) + [neg], n + 1):
        c = x[n]
        if not c.is_zero():
            inv = c.inverse()
            return [v * inv for v in x[:n]]
    return None
