"""Normalized cochains on finite groups with values in mu_N.

Values are stored as exponents mod N, so zeta_N^e is stored as ``e``.  All
linear algebra over Z/N goes through the Smith normal form in :mod:`.snf`.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .scalars import CycScalar
from .snf import smith_normal_form, solve_mod, in_image_mod, quotient_invariants

__all__ = [
    "FiniteGroup",
    "Cochain",
    "SubgroupEmbedding",
    "UnsupportedDegree",
    "InconsistentInput",
    "SchemaError",
    "coboundary",
    "is_normalized_cocycle",
    "restrict",
    "trivialise",
    "solve_trivialisations",
    "TrivialisationSet",
    "trivialisation_classes",
    "cohomology_group",
    "standard_cyclic_cocycle",
    "coboundary_matrix",
    "cocycle_defect",
]

log = logging.getLogger(__name__)


class UnsupportedDegree(ValueError):
    pass


class InconsistentInput(ValueError):
    pass


class SchemaError(ValueError):
    """Input data violates a structural requirement (e.g. non-associative table)."""


class FiniteGroup:
    """A finite group given by its multiplication table; identity at index 0."""

    def __init__(self, mul: Sequence[Sequence[int]], name: str | None = None, labels=None):
        n = len(mul)
        table = tuple(tuple(int(x) for x in row) for row in mul)
        if n == 0 or any(len(row) != n for row in table):
            raise SchemaError("multiplication table must be square and nonempty")
        for row in table:
            for x in row:
                if not 0 <= x < n:
                    raise SchemaError(f"table entry {x} out of range")
        for g in range(n):
            if table[0][g] != g or table[g][0] != g:
                raise SchemaError(f"index 0 is not a two-sided identity (fails at {g})")
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise SchemaError(f"multiplication is not associative at triple ({a}, {b}, {c})")
        inv = []
        for g in range(n):
            row = table[g]
            try:
                h = row.index(0)
            except ValueError:
                raise SchemaError(f"element {g} has no inverse") from None
            if table[h][g] != 0:
                raise SchemaError(f"element {g} has no two-sided inverse")
            inv.append(h)
        self.size = n
        self.mul = table
        self.inv = tuple(inv)
        self.name = name or f"G{n}"
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))

    # constructors
    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], name="1")

    @classmethod
    def product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        n = G.size * H.size

        def idx(a, b):
            return a * H.size + b

        mul = [[0] * n for _ in range(n)]
        for a1, b1, a2, b2 in itertools.product(range(G.size), range(H.size), range(G.size), range(H.size)):
            mul[idx(a1, b1)][idx(a2, b2)] = idx(G.mul[a1][a2], H.mul[b1][b2])
        labels = [f"({x},{y})" for x in G.labels for y in H.labels]
        return cls(mul, name=f"{G.name}x{H.name}", labels=labels)

    @classmethod
    def abelian(cls, *orders: int) -> "FiniteGroup":
        G = cls.trivial()
        for n in orders:
            G = cls.product(G, cls.cyclic(n)) if G.size > 1 else cls.cyclic(n)
        return G

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.size})"

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def elements(self) -> range:
        return range(self.size)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def exponent(self) -> int:
        e = 1
        for g in range(self.size):
            e = e * self.element_order(g) // math.gcd(e, self.element_order(g))
        return e

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.size) for b in range(self.size))

    def closure(self, gens: Iterable[int]) -> frozenset:
        S = {0}
        frontier = list(gens)
        while frontier:
            g = frontier.pop()
            if g in S:
                continue
            new = {self.mul[s][g] for s in S} | {self.mul[g][s] for s in S} | {g}
            S |= new
            frontier.extend(self.mul[a][b] for a in list(S) for b in list(S) if self.mul[a][b] not in S)
        return frozenset(S)

    def subgroups(self) -> list[frozenset]:
        """All subgroups, sorted by (order, sorted elements)."""
        found = {frozenset([0])}
        frontier = [frozenset([0])]
        while frontier:
            S = frontier.pop()
            for g in range(self.size):
                if g not in S:
                    T = self.closure(set(S) | {g})
                    if T not in found:
                        found.add(T)
                        frontier.append(T)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def to_dict(self) -> dict:
        return {"name": self.name, "size": self.size, "mul": [list(r) for r in self.mul]}


@dataclass(frozen=True)
class SubgroupEmbedding:
    sub: FiniteGroup
    amb: FiniteGroup
    inject: tuple

    def __post_init__(self):
        inj = tuple(self.inject)
        object.__setattr__(self, "inject", inj)
        if len(inj) != self.sub.size or len(set(inj)) != len(inj):
            raise SchemaError("inject must be an injective map on the subgroup elements")
        for a in range(self.sub.size):
            for b in range(self.sub.size):
                if inj[self.sub.mul[a][b]] != self.amb.mul[inj[a]][inj[b]]:
                    raise SchemaError(f"inject is not a homomorphism at pair ({a}, {b})")

    @classmethod
    def from_elements(cls, amb: FiniteGroup, elements: Iterable[int], name: str | None = None) -> "SubgroupEmbedding":
        els = sorted(set(elements))
        if not els or els[0] != 0:
            raise SchemaError("subgroup must contain the identity")
        pos = {g: i for i, g in enumerate(els)}
        try:
            mul = [[pos[amb.mul[a][b]] for b in els] for a in els]
        except KeyError:
            raise SchemaError("element set is not closed under multiplication") from None
        sub = FiniteGroup(mul, name=name or f"H{len(els)}<{amb.name}", labels=[amb.labels[g] for g in els])
        return cls(sub, amb, tuple(els))

    @classmethod
    def identity(cls, G: FiniteGroup) -> "SubgroupEmbedding":
        return cls(G, G, tuple(range(G.size)))

    def image(self) -> frozenset:
        return frozenset(self.inject)


def _tuples(G: FiniteGroup, n: int, normalized: bool):
    rng = range(1, G.size) if normalized else range(G.size)
    return list(itertools.product(rng, repeat=n))


class Cochain:
    """A normalized n-cochain G^n -> mu_N stored densely as exponents mod N."""

    __slots__ = ("group", "degree", "order", "values")

    def __init__(self, group: FiniteGroup, degree: int, order: int, values):
        if degree < 0:
            raise UnsupportedDegree("negative degree")
        self.group = group
        self.degree = degree
        self.order = int(order)
        vals = tuple(int(v) % self.order for v in values)
        if len(vals) != group.size ** degree:
            raise SchemaError(f"expected {group.size ** degree} values, got {len(vals)}")
        self.values = vals

    def _index(self, args) -> int:
        i = 0
        for a in args:
            i = i * self.group.size + a
        return i

    def __call__(self, *args: int) -> int:
        return self.values[self._index(args)]

    def scalar(self, *args: int) -> CycScalar:
        return CycScalar.root(self.order, self(*args))

    @classmethod
    def from_function(cls, group: FiniteGroup, degree: int, order: int, fn) -> "Cochain":
        vals = [fn(*t) for t in itertools.product(range(group.size), repeat=degree)]
        return cls(group, degree, order, vals)

    @classmethod
    def trivial(cls, group: FiniteGroup, degree: int, order: int = 1) -> "Cochain":
        return cls(group, degree, order, [0] * group.size ** degree)

    @classmethod
    def from_unknowns(cls, group: FiniteGroup, degree: int, order: int, vector) -> "Cochain":
        """Build a normalized cochain from values on the non-identity tuples."""
        vals = [0] * group.size ** degree
        for t, v in zip(_tuples(group, degree, True), vector):
            i = 0
            for a in t:
                i = i * group.size + a
            vals[i] = v
        return cls(group, degree, order, vals)

    def unknowns(self) -> tuple:
        return tuple(self(*t) for t in _tuples(self.group, self.degree, True))

    def is_normalized(self) -> bool:
        for t in itertools.product(range(self.group.size), repeat=self.degree):
            if 0 in t and self(*t) != 0:
                return False
        return True

    def lift(self, order: int) -> "Cochain":
        if order % self.order:
            raise ValueError(f"order {order} is not a multiple of {self.order}")
        k = order // self.order
        return Cochain(self.group, self.degree, order, [v * k for v in self.values])

    def reduced(self) -> "Cochain":
        """The same cochain stored at the smallest order that holds its values."""
        g = self.order
        for v in self.values:
            g = math.gcd(g, v)
        if g <= 1:
            return self
        return Cochain(self.group, self.degree, self.order // g, [v // g for v in self.values])

    def __mul__(self, other: "Cochain") -> "Cochain":
        if self.group != other.group or self.degree != other.degree:
            raise ValueError("cochains live on different groups or degrees")
        n = self.order * other.order // math.gcd(self.order, other.order)
        a, b = self.lift(n), other.lift(n)
        return Cochain(self.group, self.degree, n, [x + y for x, y in zip(a.values, b.values)])

    def inverse(self) -> "Cochain":
        return Cochain(self.group, self.degree, self.order, [-v for v in self.values])

    def __truediv__(self, other: "Cochain") -> "Cochain":
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, Cochain) or self.group != other.group or self.degree != other.degree:
            return False
        n = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(n).values == other.lift(n).values

    def __hash__(self):
        r = self.reduced()
        return hash((r.degree, r.order, r.values))

    def is_trivial(self) -> bool:
        return not any(self.values)

    def with_value(self, args, exponent: int) -> "Cochain":
        vals = list(self.values)
        vals[self._index(args)] = exponent % self.order
        return Cochain(self.group, self.degree, self.order, vals)

    def to_dict(self) -> dict:
        vals = {}
        for t in itertools.product(range(self.group.size), repeat=self.degree):
            v = self(*t)
            if v:
                vals[",".join(map(str, t))] = v
        return {"degree": self.degree, "order": self.order, "values": vals}

    @classmethod
    def from_dict(cls, group: FiniteGroup, data: dict) -> "Cochain":
        try:
            degree = int(data["degree"])
            order = int(data["order"])
            raw = data.get("values", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"cochain needs integer 'degree' and 'order': {exc}") from None
        vals = [0] * group.size ** degree
        for key, v in raw.items():
            args = [int(x) for x in str(key).replace("(", "").replace(")", "").split(",") if x.strip()]
            if len(args) != degree or any(not 0 <= a < group.size for a in args):
                raise SchemaError(f"bad cochain argument tuple {key!r}")
            i = 0
            for a in args:
                i = i * group.size + a
            vals[i] = int(v)
        c = cls(group, degree, order, vals)
        if not c.is_normalized():
            raise SchemaError("cochain is not normalized")
        return c

    def __repr__(self):
        return f"Cochain(deg={self.degree}, N={self.order}, {self.unknowns()})"


def coboundary(c: Cochain) -> Cochain:
    """The coboundary for the trivial action, in exponent form."""
    n = c.degree
    if n not in (1, 2, 3):
        raise UnsupportedDegree(f"coboundary is implemented for degrees 1..3, not {n}")
    G = c.group
    mul = G.mul
    vals = []
    for t in itertools.product(range(G.size), repeat=n + 1):
        s = c(*t[1:])
        for i in range(n):
            merged = t[:i] + (mul[t[i]][t[i + 1]],) + t[i + 2:]
            s += (-1) ** (i + 1) * c(*merged)
        s += (-1) ** (n + 1) * c(*t[:n])
        vals.append(s)
    return Cochain(G, n + 1, c.order, vals)


def _coboundary4(c: Cochain) -> Cochain:
    # degree-3 input only; used for the cocycle test
    G = c.group
    mul = G.mul
    vals = []
    for a, b, x, y in itertools.product(range(G.size), repeat=4):
        s = c(b, x, y) - c(mul[a][b], x, y) + c(a, mul[b][x], y) - c(a, b, mul[x][y]) + c(a, b, x)
        vals.append(s)
    return Cochain(G, 4, c.order, vals)


def cocycle_defect(c: Cochain):
    """First tuple where the cocycle identity fails, with both sides, or None.

    The identity is written as (product of even faces) = (product of odd
    faces); both sides are returned as exponents mod the order of c.
    """
    n = c.degree
    G = c.group
    mul = G.mul
    for t in itertools.product(range(G.size), repeat=n + 1):
        faces = [t[1:]] + [t[:i] + (mul[t[i]][t[i + 1]],) + t[i + 2:] for i in range(n)] + [t[:n]]
        even = sum(c(*f) for f in faces[0::2]) % c.order
        odd = sum(c(*f) for f in faces[1::2]) % c.order
        if even != odd:
            return t, even, odd
    return None


def is_normalized_cocycle(psi: Cochain) -> bool:
    if psi.degree != 3:
        raise UnsupportedDegree("a 3-cochain is required")
    return psi.is_normalized() and _coboundary4(psi).is_trivial()


def restrict(c: Cochain, emb: SubgroupEmbedding) -> Cochain:
    if c.group != emb.amb:
        raise InconsistentInput("cochain does not live on the ambient group")
    inj = emb.inject
    return Cochain.from_function(emb.sub, c.degree, c.order, lambda *t: c(*(inj[a] for a in t)))


def standard_cyclic_cocycle(n: int, k: int) -> Cochain:
    """psi_k(a,b,c) = zeta_{n^2}^{k a (b + c - [b+c]_n)} on Z/n, stored at order n^2."""
    if n < 1 or not 0 <= k < n:
        raise ValueError("need n >= 1 and 0 <= k < n")
    G = FiniteGroup.cyclic(n)
    return Cochain.from_function(G, 3, n * n, lambda a, b, c: k * a * (b + c - (b + c) % n))


def coboundary_matrix(G: FiniteGroup, n: int) -> list[list[int]]:
    """Integer matrix of d: C^n -> C^{n+1} on normalized coordinates."""
    cols = _tuples(G, n, True)
    rows = _tuples(G, n + 1, True)
    col_index = {t: j for j, t in enumerate(cols)}
    mul = G.mul
    M = []
    for t in rows:
        row = [0] * len(cols)

        def add(args, sign):
            if 0 not in args:
                row[col_index[args]] += sign

        add(t[1:], 1)
        for i in range(n):
            add(t[:i] + (mul[t[i]][t[i + 1]],) + t[i + 2:], (-1) ** (i + 1))
        add(t[:n], (-1) ** (n + 1))
        M.append(row)
    return M


@dataclass
class TrivialisationSet:
    """Result of the trivialisation solver with its stabilization record."""

    solutions: list
    order: int
    stable: bool
    count_at_double: int
    psi: Cochain | None = None
    emb: SubgroupEmbedding | None = None
    notes: list = field(default_factory=list)


def _solve_at(psi_H: Cochain, order: int):
    H = psi_H.group
    rhs = [v * (order // psi_H.order) for v in psi_H.unknowns()]
    M = coboundary_matrix(H, 2)
    if not M or not M[0]:
        # |H| <= 1: the only cochain is trivial; rhs must vanish
        return [()] if not any(r % order for r in rhs) else []
    return solve_mod(M, rhs, order)


def solve_trivialisations(psi: Cochain, emb: SubgroupEmbedding, order: int | None = None) -> TrivialisationSet:
    if not is_normalized_cocycle(psi):
        raise InconsistentInput("psi is not a normalized 3-cocycle")
    psi_H = restrict(psi, emb)
    H = emb.sub
    if order is None:
        order = psi.order * H.size ** 2 // math.gcd(psi.order, H.size ** 2)
    elif order % psi.order:
        raise ValueError("solver order must be a multiple of the order of psi")
    sols = _solve_at(psi_H, order)
    double = _solve_at(psi_H, 2 * order)
    stable = bool(sols) == bool(double)
    if not stable:
        log.warning("trivialisation existence did not stabilize at order %d", order)
    cochains = [Cochain.from_unknowns(H, 2, order, s) for s in sorted(sols)]
    return TrivialisationSet(cochains, order, stable, len(double), psi, emb)


def trivialise(psi: Cochain, emb: SubgroupEmbedding, order: int | None = None) -> list:
    """All normalized omega with d omega = psi|_H, values in mu_{N'}; lexicographic order."""
    return solve_trivialisations(psi, emb, order).solutions


def _class_partition(solutions, order):
    H = solutions[0].group
    D1 = coboundary_matrix(H, 1)
    reps = []
    labels = []
    for w in solutions:
        w = w.lift(order)
        for ci, r in enumerate(reps):
            diff = [(a - b) % order for a, b in zip(w.unknowns(), r.unknowns())]
            if not D1 or not D1[0]:
                ok = not any(diff)
            else:
                ok = in_image_mod(D1, diff, order)
            if ok:
                labels.append(ci)
                break
        else:
            reps.append(w)
            labels.append(len(reps) - 1)
    return labels


def trivialisation_classes(solutions: list, emb: SubgroupEmbedding | None = None, return_report: bool = False):
    """Partition trivialisations by omega/omega' = d eta with eta valued in mu_{N''}.

    N'' is the lcm of the solution orders times the exponent of H; the count is
    recomputed at 2N'' and a mismatch is reported.
    """
    if not solutions:
        return ([], {"order": None, "stable": True}) if return_report else []
    H = solutions[0].group
    if emb is not None and emb.sub != H:
        raise InconsistentInput("solutions do not live on the subgroup")
    d0 = coboundary(solutions[0]) if solutions[0].degree == 2 else None
    if d0 is None:
        raise InconsistentInput("trivialisations are 2-cochains")
    for w in solutions:
        if w.group != H or w.degree != 2 or not w.is_normalized():
            raise InconsistentInput("entries must be normalized 2-cochains on the same group")
        if coboundary(w) != d0:
            raise InconsistentInput(f"{w} is not a trivialisation of the same cocycle")
    n1 = 1
    for w in solutions:
        n1 = n1 * w.order // math.gcd(n1, w.order)
    order = n1 * H.exponent()
    labels = _class_partition(solutions, order)
    labels2 = _class_partition(solutions, 2 * order)
    classes: list[list] = [[] for _ in range(max(labels) + 1)]
    for w, lab in zip(solutions, labels):
        classes[lab].append(w)
    stable = max(labels) == max(labels2)
    if not stable:
        log.warning("class count did not stabilize at order %d", order)
    if return_report:
        return classes, {"order": order, "stable": stable, "count_at_double": max(labels2) + 1}
    return classes


def cohomology_group(G: FiniteGroup, n: int, N: int, stabilized: bool = False) -> list[int]:
    """Invariant factors of H^n(G, mu_N) for the trivial action.

    With ``stabilized=True`` returns the image of H^n(G, mu_N) in
    H^n(G, mu_{N|G|}), i.e. the classes that survive enlarging the roots of
    unity (the part seen by a divisible coefficient group).
    """
    if n not in (1, 2, 3):
        raise UnsupportedDegree("cohomology is implemented for n in 1..3")
    k = (G.size - 1) ** n
    if k == 0:
        return []
    dn = coboundary_matrix(G, n)
    dprev = coboundary_matrix(G, n - 1) if n > 1 else [[] for _ in range(k)]

    def cycles_basis(mod):
        U, D, V, _ = smith_normal_form(dn)
        cols = []
        for j in range(k):
            d = D[j][j] if j < len(D) else 0
            c = mod // math.gcd(d, mod) if d else 1
            cols.append([V[i][j] * c for i in range(k)])
        return [list(r) for r in zip(*cols)]  # k x k, columns are generators

    def boundary_gens(mod):
        gens = [list(row) + [mod if i == j else 0 for j in range(k)] for i, row in enumerate(dprev)]
        return gens

    Z = cycles_basis(N)
    if not stabilized:
        return quotient_invariants(Z, boundary_gens(N))
    M = G.size
    big = N * M
    Zs = [[M * x for x in row] + b for row, b in zip(Z, boundary_gens(big))]
    return quotient_invariants(Zs, boundary_gens(big))
