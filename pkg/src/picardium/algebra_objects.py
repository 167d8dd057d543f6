"""Algebras, coalgebras and Frobenius algebras in a monoidal category.

Everything here is written against :class:`~picardium.monoidal.MonoidalCategory`
so the same code runs in Vec_G^psi and in a bimodule category.  Composites
that the strict theory writes without brackets are formed left-nested; the
category inserts associators where bracketings differ.
"""
from __future__ import annotations

import math

from dataclasses import dataclass, field
from typing import Any

from .cohomology import (
    Cochain,
    FiniteGroup,
    InconsistentInput,
    SchemaError,
    SubgroupEmbedding,
    coboundary,
    restrict,
)
from .linalg import solve_affine
from .monoidal import (
    Morphism,
    ratio,
    scalar_multiple_of_identity,
    solve_morphisms,
    tensor,
)
from .pointed_category import CategoryContext, NotInvertible
from .report import Report
from .scalars import ONE, CycScalar

__all__ = [
    "AlgebraObject",
    "AlgebraHom",
    "PointedData",
    "AlphaFamily",
    "ConvolutionAlgebra",
    "check_algebra",
    "check_coalgebra",
    "check_frobenius_special_symmetric",
    "check_algebra_hom",
    "build_endomorphism_algebra",
    "build_Q",
    "build_Q_pointed",
    "unit_convolution",
    "inner_automorphism",
    "alpha_family",
    "extract_omega",
    "root_exponent",
    "algebra_to_json",
    "grading_automorphism",
    "algebra_from_json",
    "MissingCoalgebraData",
    "ZeroDimension",
    "NotConvolutionInvertible",
    "NotATrivialisation",
    "NoUniqueIsomorphism",
]


class MissingCoalgebraData(ValueError):
    pass


class ZeroDimension(ValueError):
    pass


class NotConvolutionInvertible(ArithmeticError):
    pass


class NotATrivialisation(ValueError):
    pass


class NoUniqueIsomorphism(ValueError):
    pass


@dataclass
class AlgebraObject:
    cat: Any
    carrier: Any
    m: Morphism
    eta: Morphism
    delta: Morphism | None = None
    eps: Morphism | None = None
    name: str = ""
    flags: dict = field(default_factory=dict)
    beta_A: CycScalar | None = None
    beta_1: CycScalar | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        c, X = self.cat, self.carrier
        XX = c.tensor(X, X)
        self.m = c.cast(self.m, XX, X)
        self.eta = c.cast(self.eta, c.unit, X)
        if self.delta is not None:
            self.delta = c.cast(self.delta, X, XX)
        if self.eps is not None:
            self.eps = c.cast(self.eps, X, c.unit)

    @property
    def has_coalgebra(self) -> bool:
        return self.delta is not None and self.eps is not None

    def identity(self) -> Morphism:
        return self.cat.identity(self.carrier)

    def __repr__(self):
        return f"AlgebraObject({self.name or self.carrier!r})"


def _cmp(rep: Report, claim: str, anchor: str, lhs: Morphism, rhs: Morphism, cat) -> bool:
    w = cat.difference(lhs, rhs)
    rep.add(claim, anchor, w is None, w)
    return w is None


def check_algebra(a: AlgebraObject) -> Report:
    """Associativity (through the associator) and both unit laws."""
    c, i = a.cat, a.identity()
    rep = Report("algebra")
    anchor = "algebra axioms"
    ok = _cmp(rep, "associativity", anchor, a.m @ c.tensor_mor(a.m, i), a.m @ c.tensor_mor(i, a.m), c)
    ok &= _cmp(rep, "left unit", anchor, a.m @ c.tensor_mor(a.eta, i), i, c)
    ok &= _cmp(rep, "right unit", anchor, a.m @ c.tensor_mor(i, a.eta), i, c)
    a.flags["associative"] = rep.get("associativity").passed
    a.flags["unital"] = rep.get("left unit").passed and rep.get("right unit").passed
    return rep


def check_coalgebra(a: AlgebraObject) -> Report:
    if not a.has_coalgebra:
        raise MissingCoalgebraData("comultiplication and counit are required")
    c, i = a.cat, a.identity()
    rep = Report("coalgebra")
    anchor = "coalgebra axioms"
    _cmp(rep, "coassociativity", anchor, c.tensor_mor(a.delta, i) @ a.delta, c.tensor_mor(i, a.delta) @ a.delta, c)
    _cmp(rep, "left counit", anchor, c.tensor_mor(a.eps, i) @ a.delta, i, c)
    _cmp(rep, "right counit", anchor, c.tensor_mor(i, a.eps) @ a.delta, i, c)
    a.flags["coalgebra"] = rep.passed
    return rep


def phi_maps(a: AlgebraObject) -> tuple:
    """The two morphisms A -> A^v whose equality defines symmetry."""
    c, X, i = a.cat, a.carrier, a.identity()
    D = c.dual(X)
    em = a.eps @ a.m
    idd = c.identity(D.dual)
    phi1 = c.tensor_mor(em, idd) @ c.tensor_mor(i, D.b)
    phi2 = c.tensor_mor(idd, em) @ c.tensor_mor(D.bt, i)
    return c.cast(phi1, X, D.dual), c.cast(phi2, X, D.dual)


def check_frobenius_special_symmetric(a: AlgebraObject, with_algebra: bool = True) -> Report:
    if not a.has_coalgebra:
        raise MissingCoalgebraData("comultiplication and counit are required")
    c, i = a.cat, a.identity()
    rep = Report("frobenius")
    if with_algebra:
        rep.extend(check_algebra(a))
    rep.extend(check_coalgebra(a))
    anchor = "Frobenius property"
    dm = a.delta @ a.m
    f1 = _cmp(rep, "frobenius (left)", anchor, c.tensor_mor(i, a.m) @ c.tensor_mor(a.delta, i), dm, c)
    f2 = _cmp(rep, "frobenius (right)", anchor, c.tensor_mor(a.m, i) @ c.tensor_mor(i, a.delta), dm, c)
    a.flags["frobenius"] = f1 and f2 and rep.passed
    bA = scalar_multiple_of_identity(a.m @ a.delta)
    b1 = c.scalar_of(a.eps @ a.eta) if c.dim(c.unit) == 1 else scalar_multiple_of_identity(a.eps @ a.eta)
    special = bA is not None and not bA.is_zero() and b1 is not None and not b1.is_zero()
    rep.add("special", "specialness", special, {"beta_A": bA, "beta_1": b1})
    a.flags["special"] = special
    a.beta_A, a.beta_1 = (bA, b1) if special else (None, None)
    p1, p2 = phi_maps(a)
    w = c.difference(p1, p2)
    a.flags["symmetric"] = w is None
    rep.data["symmetric"] = w is None
    rep.data["symmetry_witness"] = w
    dl, dr = c.dims(a.carrier)
    rep.data["dims"] = {"left": dl, "right": dr}
    if a.flags["frobenius"]:
        rep.add("left and right dimension agree", "Frobenius dimension", dl == dr, {"left": dl, "right": dr})
    if special and a.flags["symmetric"] and a.flags["frobenius"]:
        rep.add("beta_A * beta_1 = dim(A)", "beta relation", bA * b1 == dl, {"beta_A": bA, "beta_1": b1, "dim": dl})
    elif special:
        rep.note("beta_A * beta_1 = dim(A)", "beta relation", {"reason": "algebra is not symmetric"})
    return rep


# ---------------------------------------------------------------- morphisms


@dataclass
class AlgebraHom:
    src: AlgebraObject
    dst: AlgebraObject
    map: Morphism

    def __post_init__(self):
        self.map = self.src.cat.cast(self.map, self.src.carrier, self.dst.carrier)

    def __matmul__(self, other: "AlgebraHom") -> "AlgebraHom":
        return AlgebraHom(other.src, self.dst, self.map @ other.map)

    def equals(self, other: "AlgebraHom") -> bool:
        return self.map.equals(other.map)


def check_algebra_hom(f: AlgebraHom, coalgebra: bool = True) -> Report:
    c = f.src.cat
    rep = Report("algebra morphism")
    anchor = "morphism of algebras"
    _cmp(rep, "multiplicative", anchor, f.map @ f.src.m, f.dst.m @ c.tensor_mor(f.map, f.map), c)
    _cmp(rep, "unital", anchor, f.map @ f.src.eta, f.dst.eta, c)
    if coalgebra and f.src.has_coalgebra and f.dst.has_coalgebra:
        _cmp(rep, "comultiplicative", anchor, c.tensor_mor(f.map, f.map) @ f.src.delta, f.dst.delta @ f.map, c)
        _cmp(rep, "counital", anchor, f.dst.eps @ f.map, f.src.eps, c)
    return rep


# ---------------------------------------------------------------- X (x) X^v


def build_endomorphism_algebra(cat, X, require_special: bool = False) -> AlgebraObject:
    """X (x) X^v with m = id (x) d (x) id, eta = b, Delta = id (x) bt (x) id, eps = dt."""
    D = cat.dual(X)
    iX, iD = cat.identity(X), cat.identity(D.dual)
    if require_special:
        dl, dr = cat.dims(X)
        if dl.is_zero() or dr.is_zero():
            raise ZeroDimension("X has a vanishing dimension")
    A = cat.tensor(X, D.dual)
    m = tensor(iX, D.d, iD)
    delta = tensor(iX, D.bt, iD)
    return AlgebraObject(cat, A, m, D.b, delta, D.dt, name=f"{X!r}(x){X!r}^v", extra={"base": X, "duality": D})


# ---------------------------------------------------------------- Q(H, omega)


@dataclass
class PointedData:
    """Invertible simples L_h (h in a finite group) with chosen bases b(g,h)."""

    cat: Any
    group: FiniteGroup
    simples: list
    b: dict
    b_inv: dict
    labels: tuple = ()

    def simple(self, h: int):
        return self.simples[h]

    @classmethod
    def from_context(cls, ctx: CategoryContext, emb: SubgroupEmbedding) -> "PointedData":
        H, inj = emb.sub, emb.inject
        if emb.amb != ctx.group:
            raise InconsistentInput("subgroup embedding does not target the context's group")
        simples = [ctx.simple(inj[h]) for h in H.elements()]
        b, bi = {}, {}
        for g in H.elements():
            for h in H.elements():
                b[g, h] = ctx.basis_morphism(inj[g], inj[h])
                bi[g, h] = ctx.basis_morphism_inv(inj[g], inj[h])
        return cls(ctx, H, simples, b, bi, tuple(ctx.group.labels[inj[h]] for h in H.elements()))

    def psi_restricted(self) -> dict:
        """psi(g1,g2,g3) read off the chosen bases, as a dict of scalars."""
        c, H = self.cat, self.group
        out = {}
        for g1 in H.elements():
            for g2 in H.elements():
                for g3 in H.elements():
                    g12, g23 = H.m(g1, g2), H.m(g2, g3)
                    lhs = self.b[g12, g3] @ c.tensor_mor(self.b[g1, g2], c.identity(self.simples[g3]))
                    rhs = self.b[g1, g23] @ c.tensor_mor(c.identity(self.simples[g1]), self.b[g2, g3])
                    out[g1, g2, g3] = ratio(lhs, rhs)
        return out


def _q_carrier(pd: PointedData):
    cache = pd.__dict__.setdefault("_q", {})
    if "Q" not in cache:
        cache["Q"] = pd.cat.direct_sum(pd.simples)
    return cache["Q"]


def build_Q_pointed(pd: PointedData, omega: Cochain, name: str = "Q") -> AlgebraObject:
    c, H = pd.cat, pd.group
    if omega.group != H or omega.degree != 2:
        raise InconsistentInput("omega must be a 2-cochain on the subgroup")
    Q, e, r = _q_carrier(pd)
    n = H.size
    ms, ds = [], []
    for g in H.elements():
        for h in H.elements():
            w = omega.scalar(g, h)
            gh = H.m(g, h)
            ms.append((e[gh] @ pd.b[g, h] @ c.tensor_mor(r[g], r[h])) * w)
            ds.append((c.tensor_mor(e[g], e[h]) @ pd.b_inv[g, h] @ r[gh]) * (w.inverse() / n))
    m = c.sum(ms)
    delta = c.sum(ds)
    eta = c.cast(e[0], c.unit, Q)
    eps = c.cast(r[0], Q, c.unit) * n
    return AlgebraObject(c, Q, m, eta, delta, eps, name=name, extra={"pointed": pd, "omega": omega, "e": e, "r": r})


def build_Q(emb: SubgroupEmbedding, omega: Cochain, ctx: CategoryContext) -> AlgebraObject:
    """Q(H, omega) = sum of L_h with product weighted by omega."""
    return build_Q_pointed(PointedData.from_context(ctx, emb), omega)


# ---------------------------------------------------------------- convolution


class ConvolutionAlgebra:
    """Hom(1, A) with f * g = m o (f (x) g) and unit eta."""

    def __init__(self, a: AlgebraObject):
        self.algebra = a
        self.cat = a.cat
        self.basis = a.cat.hom_basis(a.cat.unit, a.carrier)

    def product(self, f: Morphism, g: Morphism) -> Morphism:
        c = self.cat
        return c.cast(self.algebra.m @ c.tensor_mor(f, g), c.unit, self.algebra.carrier)

    def _solve(self, f: Morphism, left: bool):
        cols = []
        for b in self.basis:
            p = self.product(f, b) if left else self.product(b, f)
            cols.append({(i, j): v for i, j, v in p.mat.items()})
        tgt = {(i, j): v for i, j, v in self.algebra.eta.mat.items()}
        return solve_affine(cols, tgt)

    def inverse(self, f: Morphism) -> Morphism:
        x = self._solve(f, True)
        if x is None:
            raise NotConvolutionInvertible("no right convolution inverse")
        g = self.cat.sum([b * v for b, v in zip(self.basis, x) if not v.is_zero()] or [self.basis[0] * 0])
        if not self.product(g, f).equals(self.algebra.eta):
            raise NotConvolutionInvertible("right inverse is not a left inverse")
        return g

    def is_invertible(self, f: Morphism) -> bool:
        try:
            self.inverse(f)
        except NotConvolutionInvertible:
            return False
        return True

    def inner_automorphism(self, f: Morphism) -> AlgebraHom:
        """omega_f = m o (m (x) f^-) o (f (x) id_A)."""
        c, a = self.cat, self.algebra
        fi = self.inverse(f)
        mp = a.m @ c.tensor_mor(a.m, fi) @ c.tensor_mor(f, a.identity())
        return AlgebraHom(a, a, c.cast(mp, a.carrier, a.carrier))


def unit_convolution(a: AlgebraObject) -> ConvolutionAlgebra:
    return ConvolutionAlgebra(a)


def inner_automorphism(a: AlgebraObject, f: Morphism) -> AlgebraHom:
    return ConvolutionAlgebra(a).inner_automorphism(f)


# ---------------------------------------------------------------- alpha_h


@dataclass
class AlphaFamily:
    """h -> alpha_h on A = Q (x) Q^v together with the f_h that define it."""

    pointed: PointedData
    Q: AlgebraObject | None
    A: AlgebraObject
    omega: Cochain | None
    f: dict
    f_inv: dict
    alpha: dict

    def __getitem__(self, h: int) -> AlgebraHom:
        return self.alpha[h]

    def homomorphism_report(self) -> Report:
        H = self.pointed.group
        rep = Report("alpha is a homomorphism")
        bad = []
        for g in H.elements():
            for h in H.elements():
                lhs = self.alpha[g].map @ self.alpha[h].map
                if not lhs.equals(self.alpha[H.m(g, h)].map):
                    bad.append((g, h))
        rep.add("alpha_g o alpha_h = alpha_gh", "homomorphism H -> Aut(A)", not bad, {"failing_pairs": bad[:5]})
        return rep


def _q_actions(cat, Q):
    """Left action of A = Q (x) Q^v on Q, i.e. id_Q (x) d_Q."""
    D = cat.dual(Q)
    A = cat.tensor(Q, D.dual)
    rho = cat.cast(cat.tensor_mor(cat.identity(Q), D.d), cat.tensor(A, Q), Q)
    return D, A, rho


def _f_morphisms(pd: PointedData, omega: Cochain, h: int):
    c, H = pd.cat, pd.group
    Q, e, r = _q_carrier(pd)
    L = pd.simple(h)
    iL = c.identity(L)
    fs, fis = [], []
    for g in H.elements():
        w = omega.scalar(g, h)
        gh = H.m(g, h)
        fs.append((e[gh] @ pd.b[g, h] @ c.tensor_mor(r[g], iL)) * w)
        fis.append((c.tensor_mor(e[g], iL) @ pd.b_inv[g, h] @ r[gh]) * w.inverse())
    return c.sum(fs), c.sum(fis)


def _alpha_parts(pd: PointedData, h: int):
    """The omega-independent pieces of alpha_h, cached on the pointed data."""
    cache = pd.__dict__.setdefault("_alpha_parts", {})
    hit = cache.get(h)
    if hit is not None:
        return hit
    c = pd.cat
    Q = _q_carrier(pd)[0]
    DQ = c.dual(Q)
    L = pd.simple(h)
    DL = c.dual(L)
    iQ, iQd = c.identity(Q), c.identity(DQ.dual)
    Yd = c.tensor(DL.dual, DQ.dual)
    iYd = c.identity(Yd)
    bY = tensor(iQ, DL.b, iQd) @ DQ.b
    left = tensor(DQ.d, iYd)
    right = c.tensor_mor(iQd, bY)
    outer = tensor(iQ, DL.dt, iQd)
    hit = (DQ, Yd, iQd, iYd, left, right, outer)
    cache[h] = hit
    return hit


def alpha_from_f(pd: PointedData, A: AlgebraObject, h: int, f: Morphism, f_inv: Morphism) -> Morphism:
    """The automorphism of Q (x) Q^v obtained by conjugating with f: Q (x) L_h -> Q."""
    c = pd.cat
    DQ, Yd, iQd, iYd, left, right, outer = _alpha_parts(pd, h)
    fdual = left @ tensor(iQd, f, iYd) @ right
    fdual = c.cast(fdual, DQ.dual, Yd)
    out = outer @ c.tensor_mor(f_inv, fdual)
    return c.cast(out, A.carrier, A.carrier)


def alpha_family(omega: Cochain, emb: SubgroupEmbedding | None = None, ctx: CategoryContext | None = None,
                 pointed: PointedData | None = None, strict: bool = True,
                 algebra: AlgebraObject | None = None) -> AlphaFamily:
    """F(omega): the automorphisms alpha_h of A(H) = Q (x) Q^v built from omega."""
    pd = pointed if pointed is not None else PointedData.from_context(ctx, emb)
    c = pd.cat
    if strict and emb is not None and ctx is not None:
        if coboundary(omega) != restrict(ctx.psi, emb):
            raise NotATrivialisation("d omega differs from psi restricted to H")
    Q = _q_carrier(pd)[0]
    A = algebra if algebra is not None else build_endomorphism_algebra(c, Q)
    fs, fis, al = {}, {}, {}
    for h in pd.group.elements():
        f, fi = _f_morphisms(pd, omega, h)
        fs[h], fis[h] = f, fi
        al[h] = AlgebraHom(A, A, alpha_from_f(pd, A, h, f, fi))
    return AlphaFamily(pd, None, A, omega, fs, fis, al)


def root_exponent(x: CycScalar) -> tuple:
    """(n, e) with x = zeta_n^e and n minimal; raises if x is not a root of unity."""
    d = x.minimal().order
    n = d if d % 2 == 0 else 2 * d
    for e in range(n):
        if CycScalar.root(n, e) == x:
            k = math.gcd(n, e)
            return n // k, e // k
    raise ValueError(f"{x!r} is not a root of unity")


def _extract_parts(pd: PointedData, A: AlgebraObject, h: int):
    cache = pd.__dict__.setdefault("_extract_parts", {})
    hit = cache.get((id(A), h))
    if hit is not None and hit[0] is A:
        return hit[1]
    c = pd.cat
    Q = _q_carrier(pd)[0]
    L = pd.simple(h)
    D, Acar, rho = _q_actions(c, Q)
    basis = c.hom_basis(c.tensor(Q, L), Q)
    fixed = [rho @ c.tensor_mor(A.identity(), b) for b in basis]
    parts = (rho, basis, fixed)
    cache[(id(A), h)] = (A, parts)
    return parts


def extract_f(pd: PointedData, A: AlgebraObject, h: int, alpha: Morphism) -> Morphism:
    """The unique f: Q (x) L_h -> Q with alpha = alpha_f, normalized on L_1 (x) L_h."""
    c = pd.cat
    Q, e, r = _q_carrier(pd)
    iL = c.identity(pd.simple(h))
    rho, basis, fixed = _extract_parts(pd, A, h)
    lhs_fixed = c.tensor_mor(rho @ c.tensor_mor(alpha, c.identity(Q)), iL)
    images = {id(b): fx for b, fx in zip(basis, fixed)}

    def residual(f):
        hit = images.get(id(f))
        return f @ lhs_fixed - (hit if hit is not None else rho @ c.tensor_mor(A.identity(), f))

    sols = solve_morphisms(basis, residual)
    if len(sols) != 1:
        raise NoUniqueIsomorphism(f"intertwiner space for h={h} has dimension {len(sols)}")
    f = sols[0]
    norm = ratio(r[h] @ f @ c.tensor_mor(e[0], iL), iL)
    if norm is None or norm.is_zero():
        raise NoUniqueIsomorphism("intertwiner does not restrict to an isomorphism on L_1 (x) L_h")
    return f * norm.inverse()


def extract_omega(family, pointed: PointedData | None = None, order: int | None = None) -> Cochain:
    """G(alpha): read omega(g,h) off r_gh o f_h o (e_g (x) id) = omega(g,h) b(g,h)."""
    if isinstance(family, AlphaFamily):
        pd, A, alphas = family.pointed, family.A, {h: a.map for h, a in family.alpha.items()}
    else:
        pd, alphas = pointed, {h: (a.map if isinstance(a, AlgebraHom) else a) for h, a in family.items()}
        A = build_endomorphism_algebra(pd.cat, _q_carrier(pd)[0])
    c, H = pd.cat, pd.group
    _, e, r = _q_carrier(pd)
    vals = {}
    for h in H.elements():
        f = extract_f(pd, A, h, alphas[h])
        iL = c.identity(pd.simple(h))
        for g in H.elements():
            gh = H.m(g, h)
            w = ratio(r[gh] @ f @ c.tensor_mor(e[g], iL), pd.b[g, h])
            if w is None or w.is_zero():
                raise NoUniqueIsomorphism(f"component ({g},{h}) of f is not a multiple of the basis map")
            vals[g, h] = w
    exps = {k: root_exponent(v) for k, v in vals.items()}
    n = order or 1
    if order is None:
        for m_, _ in exps.values():
            n = math.lcm(n, m_)
    out = [0] * (H.size ** 2)
    for (g, h), (m_, ex) in exps.items():
        if n % m_:
            raise NoUniqueIsomorphism(f"omega({g},{h}) is not in mu_{n}")
        out[g * H.size + h] = ex * (n // m_)
    return Cochain(H, 2, n, out)


def grading_automorphism(a: AlgebraObject, chi: Cochain) -> AlgebraHom:
    """sum_h chi(h) e_h r_h on Q(H, omega) for a character chi of H."""
    pd, e, r = a.extra["pointed"], a.extra["e"], a.extra["r"]
    if chi.group != pd.group or chi.degree != 1 or not coboundary(chi).is_trivial():
        raise InconsistentInput("chi must be a character of the grading group")
    c = a.cat
    return AlgebraHom(a, a, c.sum([(e[h] @ r[h]) * chi.scalar(h) for h in pd.group.elements()]))


# ---------------------------------------------------------------- serialization


def algebra_to_json(a: AlgebraObject) -> dict:
    """Carrier multiplicities and the structure morphisms as per-grade blocks.

    The carrier is first moved onto a plain graded object so that the blocks of
    m and Delta refer to the basis of (X (x) X) for that flat X.
    """
    c = a.cat
    if not isinstance(c, CategoryContext):
        raise TypeError("only algebras in Vec_G^psi can be serialized")
    S, (j,), (q,) = c.direct_sum([a.carrier])
    m = j @ a.m @ c.tensor_mor(q, q)
    eta = j @ a.eta
    out = {"carrier": S.to_json(), "m": c.morphism_to_json(m), "eta": c.morphism_to_json(eta)}
    if a.has_coalgebra:
        out["delta"] = c.morphism_to_json(c.tensor_mor(j, j) @ a.delta @ q)
        out["eps"] = c.morphism_to_json(a.eps @ q)
    if a.name:
        out["name"] = a.name
    return out


def algebra_from_json(ctx: CategoryContext, data: dict) -> AlgebraObject:
    try:
        X = ctx.obj(data["carrier"]["mult"])
        XX = ctx.tensor(X, X)
        m = ctx.morphism_from_json(data["m"], XX, X)
        eta = ctx.morphism_from_json(data["eta"], ctx.unit, X)
        delta = ctx.morphism_from_json(data["delta"], X, XX) if "delta" in data else None
        eps = ctx.morphism_from_json(data["eps"], X, ctx.unit) if "eps" in data else None
    except (KeyError, TypeError, AttributeError) as exc:
        raise SchemaError(f"algebra file is missing or mistypes a field: {exc}") from None
    return AlgebraObject(ctx, X, m, eta, delta, eps, name=str(data.get("name", "")))
