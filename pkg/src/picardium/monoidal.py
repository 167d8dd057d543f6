"""Generic machinery shared by every monoidal category in the package.

A category implementation supplies objects (with a binary tensor tree
structure), raw composition, tensoring of morphisms, associators and unitors.
From these, :class:`MonoidalCategory` derives coherent re-bracketing: when two
morphisms are composed across different bracketings of the same list of
factors, the canonical composite of associators and unitors is inserted.  By
Mac Lane coherence this is the only sensible choice, and it lets the strict
formulas of the theory be written verbatim.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .linalg import SparseMatrix
from .scalars import CycScalar, ONE

__all__ = [
    "Morphism",
    "MonoidalCategory",
    "DualityData",
    "IncompatibleMorphisms",
    "NotEndomorphism",
    "NotIdempotent",
    "tensor",
    "compose",
    "solve_morphisms",
    "ratio",
    "scalar_multiple_of_identity",
]


class IncompatibleMorphisms(ValueError):
    pass


class NotEndomorphism(ValueError):
    pass


class NotIdempotent(ValueError):
    pass


class Morphism:
    """A morphism of some category: source, target and an exact sparse matrix.

    The matrix always acts on the flat bases of the underlying graded spaces.
    """

    __slots__ = ("cat", "src", "dst", "mat")

    def __init__(self, cat, src, dst, mat: SparseMatrix):
        self.cat = cat
        self.src = src
        self.dst = dst
        self.mat = mat

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.cat.compose(self, other)

    def _aligned(self, other: "Morphism") -> "Morphism":
        if other.src == self.src and other.dst == self.dst:
            return other
        return self.cat.cast(other, self.src, self.dst)

    def __add__(self, other: "Morphism") -> "Morphism":
        o = self._aligned(other)
        return Morphism(self.cat, self.src, self.dst, self.mat + o.mat)

    def __sub__(self, other: "Morphism") -> "Morphism":
        o = self._aligned(other)
        return Morphism(self.cat, self.src, self.dst, self.mat - o.mat)

    def __neg__(self) -> "Morphism":
        return Morphism(self.cat, self.src, self.dst, -self.mat)

    def __mul__(self, c) -> "Morphism":
        return Morphism(self.cat, self.src, self.dst, self.mat.scale(c))

    __rmul__ = __mul__

    def tensor(self, other: "Morphism") -> "Morphism":
        return self.cat.tensor_mor(self, other)

    def equals(self, other: "Morphism") -> bool:
        return self.cat.equal(self, other)

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def __repr__(self):
        return f"Morphism({self.src!r} -> {self.dst!r}, {self.mat!r})"


def tensor(*fs: Morphism) -> Morphism:
    """Left-nested tensor product of morphisms (the package-wide bracketing)."""
    out = fs[0]
    for f in fs[1:]:
        out = out.cat.tensor_mor(out, f)
    return out


def compose(*fs: Morphism) -> Morphism:
    """fs[0] o fs[1] o ... o fs[-1]."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = f.cat.compose(f, out)
    return out


@dataclass
class DualityData:
    obj: Any
    dual: Any
    b: Morphism  # 1 -> X (x) X^v
    d: Morphism  # X^v (x) X -> 1
    bt: Morphism  # 1 -> X^v (x) X
    dt: Morphism  # X (x) X^v -> 1


class MonoidalCategory:
    """Base class; subclasses implement the raw structure."""

    unit: Any = None

    def __init__(self):
        self._normal_cache: dict = {}
        self._rebracket_cache: dict = {}

    # --- to be provided -------------------------------------------------
    def tensor(self, X, Y):
        raise NotImplementedError

    def factors(self, X):
        """(left, right) for a tensor object, None for an atomic one."""
        raise NotImplementedError

    def dim(self, X) -> int:
        raise NotImplementedError

    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        raise NotImplementedError

    def associator(self, X, Y, Z) -> Morphism:
        raise NotImplementedError

    def associator_inv(self, X, Y, Z) -> Morphism:
        raise NotImplementedError

    def lunitor(self, X) -> Morphism:
        raise NotImplementedError

    def lunitor_inv(self, X) -> Morphism:
        raise NotImplementedError

    def runitor(self, X) -> Morphism:
        raise NotImplementedError

    def runitor_inv(self, X) -> Morphism:
        raise NotImplementedError

    def dual(self, X) -> DualityData:
        raise NotImplementedError

    def direct_sum(self, objs: Sequence):
        raise NotImplementedError

    def split(self, p: Morphism):
        raise NotImplementedError

    def hom_basis(self, X, Y) -> list:
        raise NotImplementedError

    def invert(self, f: Morphism) -> Morphism:
        raise NotImplementedError

    def describe(self, X, index: int) -> dict:
        return {"index": index}

    # --- generic --------------------------------------------------------
    def is_unit(self, X) -> bool:
        return X == self.unit

    def identity(self, X) -> Morphism:
        return Morphism(self, X, X, SparseMatrix.identity(self.dim(X)))

    def zero(self, X, Y) -> Morphism:
        return Morphism(self, X, Y, SparseMatrix.zero(self.dim(Y), self.dim(X)))

    def compose_raw(self, f: Morphism, g: Morphism) -> Morphism:
        if g.dst != f.src:
            raise IncompatibleMorphisms(f"cannot compose {f.src!r} <- {g.dst!r}")
        return Morphism(self, g.src, f.dst, f.mat @ g.mat)

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if g.dst == f.src:
            return Morphism(self, g.src, f.dst, f.mat @ g.mat)
        r = self.rebracket(g.dst, f.src)
        return Morphism(self, g.src, f.dst, f.mat @ (r.mat @ g.mat))

    def cast(self, f: Morphism, src=None, dst=None) -> Morphism:
        """Re-type f along coherence isomorphisms to the given source/target."""
        out = f
        if dst is not None and dst != f.dst:
            out = self.compose_raw(self.rebracket(f.dst, dst), out)
        if src is not None and src != f.src:
            out = self.compose_raw(out, self.rebracket(src, f.src))
        return out

    def equal(self, f: Morphism, g: Morphism) -> bool:
        if f.src != g.src or f.dst != g.dst:
            g = self.cast(g, f.src, f.dst)
        return f.mat == g.mat

    def difference(self, f: Morphism, g: Morphism):
        """None if equal, else a witness dict naming the first differing entry."""
        if f.src != g.src or f.dst != g.dst:
            g = self.cast(g, f.src, f.dst)
        d = f.mat.first_difference(g.mat)
        if d is None:
            return None
        i, j, a, b = d
        return {"source": self.describe(f.src, j), "target": self.describe(f.dst, i), "lhs": a, "rhs": b}

    def leaves(self, X) -> list:
        if self.is_unit(X):
            return []
        fac = self.factors(X)
        if fac is None:
            return [X]
        return self.leaves(fac[0]) + self.leaves(fac[1])

    def tensor_objects(self, *objs):
        out = objs[0]
        for o in objs[1:]:
            out = self.tensor(out, o)
        return out

    def _normal(self, X):
        hit = self._normal_cache.get(X)
        if hit is not None:
            return hit
        fac = None if self.is_unit(X) else self.factors(X)
        if fac is None:
            idX = self.identity(X)
            res = (X, idX, idX)
        else:
            L, R = fac
            NL, fL, bL = self._normal(L)
            NR, fR, bR = self._normal(R)
            f = self.tensor_mor(fL, fR)
            b = self.tensor_mor(bL, bR)
            if self.is_unit(NL):
                N = NR
                f = self.compose_raw(self.lunitor(NR), f)
                b = self.compose_raw(b, self.lunitor_inv(NR))
            elif self.is_unit(NR):
                N = NL
                f = self.compose_raw(self.runitor(NL), f)
                b = self.compose_raw(b, self.runitor_inv(NL))
            else:
                N, m, mi = self._merge(NL, NR)
                f = self.compose_raw(m, f)
                b = self.compose_raw(b, mi)
            res = (N, f, b)
        self._normal_cache[X] = res
        return res

    def _merge(self, X, R):
        fac = self.factors(R)
        if fac is None:
            T = self.tensor(X, R)
            i = self.identity(T)
            return T, i, i
        Rp, r = fac
        N1, m1, mi1 = self._merge(X, Rp)
        idr = self.identity(r)
        f = self.compose_raw(self.tensor_mor(m1, idr), self.associator_inv(X, Rp, r))
        b = self.compose_raw(self.associator(X, Rp, r), self.tensor_mor(mi1, idr))
        return self.tensor(N1, r), f, b

    def rebracket(self, S, T) -> Morphism:
        """The coherence isomorphism S -> T between two bracketings of one word."""
        if S == T:
            return self.identity(S)
        key = (S, T)
        hit = self._rebracket_cache.get(key)
        if hit is not None:
            return hit
        ls, lt = self.leaves(S), self.leaves(T)
        if ls != lt:
            raise IncompatibleMorphisms(f"objects are not re-bracketings of one another: {S!r} vs {T!r}")
        NS, fS, _ = self._normal(S)
        NT, _, bT = self._normal(T)
        res = self.compose_raw(bT, fS)
        self._rebracket_cache[key] = res
        return res

    def scalar_of(self, f: Morphism) -> CycScalar:
        """The scalar c with f = c * id for an endomorphism of the unit."""
        if self.dim(f.src) != 1 or self.dim(f.dst) != 1:
            raise NotEndomorphism("not an endomorphism of the tensor unit")
        return f.mat.get(0, 0)

    # traces and dimensions (left: d o (id (x) f) o bt, right: dt o (f (x) id) o b)
    def trace_l(self, f: Morphism) -> CycScalar:
        if f.src != f.dst:
            raise NotEndomorphism("trace of a non-endomorphism")
        D = self.dual(f.src)
        return self.scalar_of(D.d @ self.tensor_mor(self.identity(D.dual), f) @ D.bt)

    def trace_r(self, f: Morphism) -> CycScalar:
        if f.src != f.dst:
            raise NotEndomorphism("trace of a non-endomorphism")
        D = self.dual(f.src)
        return self.scalar_of(D.dt @ self.tensor_mor(f, self.identity(D.dual)) @ D.b)

    def dims(self, X) -> tuple:
        i = self.identity(X)
        return self.trace_l(i), self.trace_r(i)

    def dual_morphism(self, f: Morphism) -> Morphism:
        """Right dual f^v = (d_Y (x) id) o (id (x) f (x) id) o (id (x) b_X)."""
        DX, DY = self.dual(f.src), self.dual(f.dst)
        mid = tensor(self.identity(DY.dual), f, self.identity(DX.dual))
        out = tensor(DY.d, self.identity(DX.dual)) @ mid @ self.tensor_mor(self.identity(DY.dual), DX.b)
        return self.cast(out, DY.dual, DX.dual)

    def left_dual_morphism(self, f: Morphism) -> Morphism:
        """Left dual (id (x) dt_Y) o (id (x) f (x) id) o (bt_X (x) id)."""
        DX, DY = self.dual(f.src), self.dual(f.dst)
        mid = tensor(self.identity(DX.dual), f, self.identity(DY.dual))
        out = self.tensor_mor(self.identity(DX.dual), DY.dt) @ mid @ tensor(DX.bt, self.identity(DY.dual))
        return self.cast(out, DY.dual, DX.dual)

    def sum(self, fs: Sequence[Morphism]) -> Morphism:
        out = fs[0]
        for f in fs[1:]:
            out = out + f
        return out


def solve_morphisms(basis: Sequence[Morphism], residual: Callable) -> list:
    """Basis of {sum c_i basis_i : residual(sum c_i basis_i) = 0} for a linear residual.

    ``residual`` may return one morphism or a tuple of morphisms (all must vanish).
    """
    from .linalg import nullspace

    if not basis:
        return []
    cols, refs = [], None
    for f in basis:
        rs = residual(f)
        if isinstance(rs, Morphism):
            rs = (rs,)
        if refs is None:
            refs = [(r.src, r.dst) for r in rs]
        col = {}
        for k, (r, (s, d)) in enumerate(zip(rs, refs)):
            if r.src != s or r.dst != d:
                r = r.cat.cast(r, s, d)
            for i, j, v in r.mat.items():
                col[k, i, j] = v
        cols.append(col)
    out = []
    for x in nullspace(cols, len(basis)):
        terms = [f * c for f, c in zip(basis, x) if not c.is_zero()]
        out.append(basis[0].cat.sum(terms))
    return out


def ratio(f: Morphism, g: Morphism):
    """The scalar c with f = c * g, or None if f is not a multiple of g (g nonzero)."""
    cat = f.cat
    if f.src != g.src or f.dst != g.dst:
        f = cat.cast(f, g.src, g.dst)
    items = list(g.mat.items())
    if not items:
        raise ValueError("reference morphism is zero")
    i, j, v = items[0]
    c = f.mat.get(i, j) / v
    return c if f.mat == g.mat.scale(c) else None


def scalar_multiple_of_identity(f: Morphism):
    """c with f = c * id, None if f is not such a multiple."""
    if f.src != f.dst:
        f = f.cat.cast(f, dst=f.src)
    n = f.mat.nrows
    if n == 0:
        return ONE
    c = f.mat.get(0, 0)
    return c if f.mat == SparseMatrix.identity(n).scale(c) else None
