"""The skeletal pointed category Vec_G^psi.

Objects are G-graded vector spaces.  A :class:`GradedObject` is an atom given
by its multiplicity vector; :class:`TensorObject` records a bracketed tensor
product so that associators can be inserted exactly where they belong.  Every
object has a flat basis ordered grade-major; for ``X (x) Y`` the grade-k part is
ordered by ``(g, i, j)`` with ``g`` running over G, ``i`` over the grade-g basis
of X and ``j`` over the grade-g^{-1}k basis of Y.

Associator convention: the structure map ``(X (x) Y) (x) Z -> X (x) (Y (x) Z)``
acts on a basis triple of grades ``(a, b, c)`` by ``psi(a, b, c)^{-1}``.  With
basis isomorphisms ``L_g (x) L_h -> L_gh`` given by identity matrices this is
exactly the convention in which
``b_{g1 g2, g3} o (b_{g1, g2} (x) id) = psi(g1, g2, g3) b_{g1, g2 g3} o (id (x) b_{g2, g3})``.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from typing import Sequence

from .cohomology import Cochain, FiniteGroup, InconsistentInput, SchemaError, coboundary, is_normalized_cocycle
from .linalg import LinearDependence, SparseMatrix, invert_dense, rank_factorization
from .monoidal import (
    DualityData,
    IncompatibleMorphisms,
    MonoidalCategory,
    Morphism,
    NotEndomorphism,
    NotIdempotent,
)
from .scalars import ONE, CycScalar

__all__ = [
    "CategoryContext",
    "GradedObject",
    "TensorObject",
    "GradedMorphism",
    "PicardData",
    "duality_data",
    "trace_and_dims",
    "dims",
    "picard_data",
    "basis_morphism",
    "tensor_objects",
    "associator",
    "split_idempotent",
    "NotInvertible",
]

GradedMorphism = Morphism


class NotInvertible(ArithmeticError):
    pass


class GradedObject:
    """An atomic graded object, determined by its multiplicity vector."""

    __slots__ = ("mult", "label", "_hash")

    def __init__(self, mult: Sequence[int], label: str | None = None):
        self.mult = tuple(int(m) for m in mult)
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be nonnegative")
        self.label = label
        self._hash = hash(("G", self.mult))

    def __eq__(self, other):
        return self is other or (isinstance(other, GradedObject) and self.mult == other.mult)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.label:
            return self.label
        return "V" + repr(self.mult)

    def to_json(self) -> dict:
        return {"mult": {str(g): m for g, m in enumerate(self.mult) if m}}


class TensorObject:
    """Formal tensor product; instances are interned, so equality is identity."""

    __slots__ = ("left", "right", "_hash", "__weakref__")
    _table: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()

    def __new__(cls, left, right):
        key = (left, right)
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        obj = super().__new__(cls)
        obj.left = left
        obj.right = right
        obj._hash = hash((left._hash, right._hash))
        cls._table[key] = obj
        return obj

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return TensorObject, (self.left, self.right)

    def __repr__(self):
        return f"({self.left!r} (x) {self.right!r})"


@dataclass
class _Info:
    dim: int
    mult: tuple
    grades: list  # grade of each flat index
    by_grade: list  # flat indices of each grade
    pairs: list | None = None  # for tensors: flat index -> (i, j)
    pair_index: dict | None = None
    expansion: list | None = None  # (leaf key, leaf grades, phase exponent)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class CategoryContext(MonoidalCategory):
    """Vec_G^psi with an optional pivotal character (trivial by default).

    ``pivot`` is a 1-cochain that is a character of G; it rescales the left
    duality morphisms and with them the left and right dimensions.
    """

    def __init__(self, group: FiniteGroup, psi: Cochain | None = None, pivot: Cochain | None = None):
        super().__init__()
        self.group = group
        if psi is None:
            psi = Cochain.trivial(group, 3)
        if psi.group != group or psi.degree != 3:
            raise InconsistentInput("psi must be a 3-cochain on the given group")
        if not is_normalized_cocycle(psi):
            raise InconsistentInput("psi is not a normalized 3-cocycle")
        self.psi = psi
        if pivot is not None:
            if pivot.group != group or pivot.degree != 1 or not coboundary(pivot).is_trivial():
                raise InconsistentInput("pivot must be a character of the group")
        self.pivot = pivot
        n = psi.order
        if pivot is not None:
            n = _lcm(n, pivot.order)
        self.order = n
        G = group
        self._inv = list(G.inv)
        self.unit = GradedObject([1] + [0] * (G.size - 1), label="1")
        self._info: dict = {}
        self._duals: dict = {}
        self._simple: dict = {}

    def __repr__(self):
        return f"CategoryContext({self.group!r}, psi order {self.psi.order})"

    # -- objects ---------------------------------------------------------
    def inv(self, g: int) -> int:
        return self._inv[g]

    def simple(self, g: int) -> GradedObject:
        hit = self._simple.get(g)
        if hit is None:
            mult = [0] * self.group.size
            mult[g] = 1
            hit = GradedObject(mult, label=f"L{self.group.labels[g]}" if g else "1")
            self._simple[g] = hit
        return hit

    def obj(self, mult, label: str | None = None) -> GradedObject:
        if isinstance(mult, dict):
            v = [0] * self.group.size
            for g, m in mult.items():
                if not 0 <= int(g) < self.group.size:
                    raise SchemaError(f"grade {g} is not an element of the group")
                v[int(g)] = int(m)
            mult = v
        if len(mult) != self.group.size:
            raise SchemaError("multiplicity vector has the wrong length")
        return GradedObject(mult, label)

    def zero_object(self) -> GradedObject:
        return GradedObject([0] * self.group.size, label="0")

    def tensor(self, X, Y):
        return TensorObject(X, Y)

    def factors(self, X):
        if isinstance(X, TensorObject):
            return X.left, X.right
        return None

    def info(self, X) -> _Info:
        hit = self._info.get(X)
        if hit is not None:
            return hit
        G = self.group
        if isinstance(X, GradedObject):
            grades, by_grade = [], []
            for g, m in enumerate(X.mult):
                by_grade.append(list(range(len(grades), len(grades) + m)))
                grades.extend([g] * m)
            res = _Info(len(grades), X.mult, grades, by_grade)
        else:
            IL, IR = self.info(X.left), self.info(X.right)
            pairs, grades, by_grade = [], [], []
            mul = G.mul
            for k in G.elements():
                start = len(pairs)
                for g in G.elements():
                    h = mul[self._inv[g]][k]
                    for i in IL.by_grade[g]:
                        for j in IR.by_grade[h]:
                            pairs.append((i, j))
                by_grade.append(list(range(start, len(pairs))))
                grades.extend([k] * (len(pairs) - start))
            mult = tuple(len(b) for b in by_grade)
            res = _Info(len(pairs), mult, grades, by_grade, pairs, {p: n for n, p in enumerate(pairs)})
        self._info[X] = res
        return res

    def dim(self, X) -> int:
        return self.info(X).dim

    def mult(self, X) -> tuple:
        return self.info(X).mult

    def flatten(self, X) -> GradedObject:
        return GradedObject(self.info(X).mult)

    def describe(self, X, index: int) -> dict:
        e = self._expansion(X)[index]
        lab = self.group.labels
        return {"grade": lab[self.info(X).grades[index]], "leaf_grades": [lab[g] for g in e[1]]}

    # -- scalars ---------------------------------------------------------
    def psi_exp(self, a: int, b: int, c: int) -> int:
        return self.psi(a, b, c)

    def psi_scalar(self, a: int, b: int, c: int) -> CycScalar:
        return CycScalar.root(self.psi.order, self.psi(a, b, c))

    def kappa(self, g: int) -> CycScalar:
        if self.pivot is None:
            return ONE
        return CycScalar.root(self.pivot.order, self.pivot(g))

    # -- morphisms -------------------------------------------------------
    def morphism(self, src, dst, entries) -> Morphism:
        mat = SparseMatrix.from_entries(self.dim(dst), self.dim(src), entries)
        f = Morphism(self, src, dst, mat)
        self.check_graded(f)
        return f

    def check_graded(self, f: Morphism) -> None:
        gs, gd = self.info(f.src).grades, self.info(f.dst).grades
        for i, j, _ in f.mat.items():
            if gs[j] != gd[i]:
                raise ValueError("morphism does not preserve the grading")

    def blocks(self, f: Morphism) -> dict:
        """Per-grade dense blocks of a morphism."""
        IS, ID = self.info(f.src), self.info(f.dst)
        out = {}
        for g in self.group.elements():
            r, c = ID.by_grade[g], IS.by_grade[g]
            if r and c:
                out[g] = f.mat.submatrix(r, c).to_dense()
        return out

    def morphism_to_json(self, f: Morphism) -> dict:
        return {
            "src": self.flatten(f.src).to_json(),
            "dst": self.flatten(f.dst).to_json(),
            "blocks": {str(g): [[x.to_json() for x in row] for row in b] for g, b in self.blocks(f).items()},
        }

    def morphism_from_json(self, data: dict, src=None, dst=None) -> Morphism:
        """Inverse of :meth:`morphism_to_json`; ``src``/``dst`` fix the bracketing of the blocks."""
        fs, fd = self.obj(data["src"]["mult"]), self.obj(data["dst"]["mult"])
        src = fs if src is None else src
        dst = fd if dst is None else dst
        if self.mult(src) != fs.mult or self.mult(dst) != fd.mult:
            raise SchemaError("morphism source/target multiplicities do not match")
        IS, ID = self.info(src), self.info(dst)
        entries = []
        for g, b in data.get("blocks", {}).items():
            g = int(g)
            for a, row in enumerate(b):
                for c, x in enumerate(row):
                    entries.append((ID.by_grade[g][a], IS.by_grade[g][c], CycScalar.from_json(x)))
        return self.morphism(src, dst, entries)

    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        src, dst = TensorObject(f.src, g.src), TensorObject(f.dst, g.dst)
        ps, pd = self.info(src).pair_index, self.info(dst).pair_index
        out: dict = {}
        grows = g.mat.rows
        for i, fr in f.mat.rows.items():
            for k, gr in grows.items():
                row = pd[(i, k)]
                acc = out.setdefault(row, {})
                for j, a in fr.items():
                    one = a.is_one()
                    for l, b in gr.items():
                        acc[ps[(j, l)]] = b if one else a * b
        return Morphism(self, src, dst, SparseMatrix(self.dim(dst), self.dim(src), out))

    # -- coherence -------------------------------------------------------
    def _expansion(self, X) -> list:
        I = self.info(X)
        if I.expansion is not None:
            return I.expansion
        if isinstance(X, GradedObject):
            if X == self.unit:
                exp = [((), (), 0)]
            else:
                exp = [((i,), (g,), 0) for i, g in enumerate(I.grades)]
        else:
            EL, ER = self._expansion(X.left), self._expansion(X.right)
            gl = self.info(X.left).grades
            psi, mul, N = self.psi, self.group.mul, self.psi.order
            exp = []
            for i, j in I.pairs:
                kl, grl, pl = EL[i]
                kr, grr, pr = ER[j]
                a = gl[i]
                ph = pl + pr
                if len(grr) > 1 and a:
                    prefix = grr[0]
                    for r in grr[1:]:
                        ph += psi(a, prefix, r)
                        prefix = mul[prefix][r]
                exp.append((kl + kr, grl + grr, ph % N))
        I.expansion = exp
        return exp

    def rebracket(self, S, T) -> Morphism:
        if S == T:
            return self.identity(S)
        key = (S, T)
        hit = self._rebracket_cache.get(key)
        if hit is not None:
            return hit
        if self.leaves(S) != self.leaves(T):
            raise IncompatibleMorphisms(f"objects are not re-bracketings of one another: {S!r} vs {T!r}")
        ES, ET = self._expansion(S), self._expansion(T)
        where = {k: (t, p) for t, (k, _, p) in enumerate(ET)}
        N = self.psi.order
        rows = {}
        for s, (k, _, p) in enumerate(ES):
            t, q = where[k]
            rows[t] = {s: CycScalar.root(N, p - q)}
        res = Morphism(self, S, T, SparseMatrix(len(ET), len(ES), rows))
        self._rebracket_cache[key] = res
        return res

    def associator(self, X, Y, Z) -> Morphism:
        return self.rebracket(TensorObject(TensorObject(X, Y), Z), TensorObject(X, TensorObject(Y, Z)))

    def associator_inv(self, X, Y, Z) -> Morphism:
        return self.rebracket(TensorObject(X, TensorObject(Y, Z)), TensorObject(TensorObject(X, Y), Z))

    def lunitor(self, X) -> Morphism:
        return self.rebracket(TensorObject(self.unit, X), X)

    def lunitor_inv(self, X) -> Morphism:
        return self.rebracket(X, TensorObject(self.unit, X))

    def runitor(self, X) -> Morphism:
        return self.rebracket(TensorObject(X, self.unit), X)

    def runitor_inv(self, X) -> Morphism:
        return self.rebracket(X, TensorObject(X, self.unit))

    # -- duality ---------------------------------------------------------
    def dual(self, X) -> DualityData:
        hit = self._duals.get(X)
        if hit is not None:
            return hit
        I = self.info(X)
        G = self.group
        dmult = [0] * G.size
        for g in G.elements():
            dmult[self._inv[g]] = I.mult[g]
        label = None
        if isinstance(X, GradedObject) and X.label:
            label = X.label if X == self.unit else X.label + "^v"
        Xd = GradedObject(dmult, label)
        ID = self.info(Xd)
        # x of grade g  <->  x* of grade g^{-1}, same position inside the grade
        partner = {}
        for g in G.elements():
            for a, x in enumerate(I.by_grade[g]):
                partner[x] = ID.by_grade[self._inv[g]][a]
        u = self.unit
        XXd, XdX = TensorObject(X, Xd), TensorObject(Xd, X)
        pXXd, pXdX = self.info(XXd).pair_index, self.info(XdX).pair_index
        b, d, bt, dt = [], [], [], []
        for x, xs in partner.items():
            g = I.grades[x]
            gi = self._inv[g]
            beta = self.psi_scalar(g, gi, g)
            k = self.kappa(g)
            b.append((pXXd[(x, xs)], 0, beta))
            d.append((0, pXdX[(xs, x)], ONE))
            bt.append((pXdX[(xs, x)], 0, (beta * k).inverse()))
            dt.append((0, pXXd[(x, xs)], k))
        mk = lambda s, t, e: Morphism(self, s, t, SparseMatrix.from_entries(self.dim(t), self.dim(s), e))
        res = DualityData(X, Xd, mk(u, XXd, b), mk(XdX, u, d), mk(u, XdX, bt), mk(XXd, u, dt))
        self._duals[X] = res
        return res

    # -- linear structure ------------------------------------------------
    def direct_sum(self, objs: Sequence):
        """(S, injections, projections) with S ordered grade-major then by summand."""
        G = self.group
        infos = [self.info(o) for o in objs]
        mult = [sum(I.mult[g] for I in infos) for g in G.elements()]
        S = GradedObject(mult)
        IS = self.info(S)
        inj, proj = [], []
        pos = [0] * G.size
        places = [[] for _ in objs]
        for g in G.elements():
            for n, I in enumerate(infos):
                for x in I.by_grade[g]:
                    places[n].append((IS.by_grade[g][pos[g]], x))
                    pos[g] += 1
        for o, pl in zip(objs, places):
            inj.append(Morphism(self, o, S, SparseMatrix.from_entries(IS.dim, self.dim(o), [(s, x, 1) for s, x in pl])))
            proj.append(Morphism(self, S, o, SparseMatrix.from_entries(self.dim(o), IS.dim, [(x, s, 1) for s, x in pl])))
        return S, inj, proj

    def split(self, p: Morphism):
        """Split an idempotent endomorphism as p = e o r with r o e = id."""
        if p.src != p.dst:
            p = self.cast(p, dst=p.src)
        X = p.src
        if not (p.mat @ p.mat) == p.mat:
            raise NotIdempotent("morphism is not idempotent")
        if p.mat == SparseMatrix.identity(self.dim(X)):
            i = self.identity(X)
            return X, i, i
        I = self.info(X)
        mult, e_ent, r_ent = [], [], []
        off = 0
        for g in self.group.elements():
            idx = I.by_grade[g]
            if not idx:
                mult.append(0)
                continue
            C, R = rank_factorization(p.mat.submatrix(idx, idx))
            k = R.nrows
            mult.append(k)
            for a, c, v in C.items():
                e_ent.append((idx[a], off + c, v))
            for a, c, v in R.items():
                r_ent.append((off + a, idx[c], v))
            off += k
        Im = GradedObject(mult)
        e = Morphism(self, Im, X, SparseMatrix.from_entries(self.dim(X), off, e_ent))
        r = Morphism(self, X, Im, SparseMatrix.from_entries(off, self.dim(X), r_ent))
        return Im, e, r

    def hom_basis(self, X, Y) -> list:
        IX, IY = self.info(X), self.info(Y)
        out = []
        for g in self.group.elements():
            for i in IY.by_grade[g]:
                for j in IX.by_grade[g]:
                    out.append(Morphism(self, X, Y, SparseMatrix(IY.dim, IX.dim, {i: {j: ONE}})))
        return out

    def hom_dim(self, X, Y) -> int:
        IX, IY = self.info(X), self.info(Y)
        return sum(a * b for a, b in zip(IX.mult, IY.mult))

    def invert(self, f: Morphism) -> Morphism:
        IS, ID = self.info(f.src), self.info(f.dst)
        rows: dict = {}
        for g in self.group.elements():
            r, c = ID.by_grade[g], IS.by_grade[g]
            if len(r) != len(c):
                raise NotInvertible(f"grade {g} has different multiplicities")
            if not r:
                continue
            try:
                B = invert_dense(f.mat.submatrix(r, c))
            except LinearDependence as exc:
                raise NotInvertible(str(exc)) from None
            for a, b, v in B.items():
                rows.setdefault(c[a], {})[r[b]] = v
        return Morphism(self, f.dst, f.src, SparseMatrix(IS.dim, ID.dim, rows))

    def is_invertible(self, f: Morphism) -> bool:
        try:
            self.invert(f)
        except NotInvertible:
            return False
        return True

    # -- basis morphisms -------------------------------------------------
    def basis_morphism(self, g: int, h: int) -> Morphism:
        """_g b_h : L_g (x) L_h -> L_gh, the identity matrix on the chosen bases."""
        src = TensorObject(self.simple(g), self.simple(h))
        return Morphism(self, src, self.simple(self.group.m(g, h)), SparseMatrix.identity(1))

    def basis_morphism_inv(self, g: int, h: int) -> Morphism:
        dst = TensorObject(self.simple(g), self.simple(h))
        return Morphism(self, self.simple(self.group.m(g, h)), dst, SparseMatrix.identity(1))


def tensor_objects(ctx: CategoryContext, X, Y):
    """X (x) Y together with its basis identification (flat index -> (i, j))."""
    T = ctx.tensor(X, Y)
    return T, list(ctx.info(T).pairs)


def associator(ctx: CategoryContext, X, Y, Z) -> Morphism:
    return ctx.associator(X, Y, Z)


def basis_morphism(ctx: CategoryContext, g: int, h: int):
    return ctx.basis_morphism(g, h), ctx.basis_morphism_inv(g, h)


def duality_data(ctx: CategoryContext, X) -> DualityData:
    return ctx.dual(X)


def trace_and_dims(ctx: CategoryContext, f: Morphism) -> tuple:
    return ctx.trace_l(f), ctx.trace_r(f)


def dims(ctx: CategoryContext, X) -> tuple:
    return ctx.dims(X)


def split_idempotent(ctx: CategoryContext, p: Morphism):
    return ctx.split(p)


@dataclass
class PicardData:
    group: FiniteGroup
    dim_l: dict
    dim_r: dict
    multiplicative_l: bool
    multiplicative_r: bool
    failures: list = field(default_factory=list)
    trivial_dims: frozenset = frozenset()

    def to_dict(self) -> dict:
        lab = self.group.labels
        return {
            "dim_l": {lab[g]: v.to_json() for g, v in sorted(self.dim_l.items())},
            "dim_r": {lab[g]: v.to_json() for g, v in sorted(self.dim_r.items())},
            "multiplicative_l": self.multiplicative_l,
            "multiplicative_r": self.multiplicative_r,
            "failures": [[lab[g], lab[h], side] for g, h, side in self.failures],
            "trivial_dims": sorted(lab[g] for g in self.trivial_dims),
        }


def picard_data(ctx: CategoryContext) -> PicardData:
    """Dimensions of the simples, their multiplicativity, and where they are 1."""
    G = ctx.group
    dl, dr = {}, {}
    for g in G.elements():
        dl[g], dr[g] = ctx.dims(ctx.simple(g))
    fails = []
    for g in G.elements():
        for h in G.elements():
            k = G.m(g, h)
            if dl[k] != dl[g] * dl[h]:
                fails.append((g, h, "left"))
            if dr[k] != dr[g] * dr[h]:
                fails.append((g, h, "right"))
    ml = not any(s == "left" for *_, s in fails)
    mr = not any(s == "right" for *_, s in fails)
    triv = frozenset(g for g in G.elements() if dl[g].is_one() and dr[g].is_one())
    return PicardData(G, dl, dr, ml, mr, fails, triv)
